// SPDX-License-Identifier: Apache-2.0
// One line per acceptance criterion; exit status 1 if any line is FAIL.
#include "fixtures.hpp"
#include "oracles.hpp"

#include "njust/selfcheck.hpp"
#include "njust/text.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

using namespace njust;
using fixtures::F;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  std::vector<std::string> notes;

  void expect(bool cond, const std::string &what) {
    if (!cond) {
      ok = false;
      if (notes.size() < 8)
        notes.push_back(what);
    }
  }
};

int failures = 0;

void criterion(int id, const char *name, double budget_s,
               const std::function<void(Outcome &)> &body) {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception &e) {
    o.ok = false;
    o.notes.push_back(std::string("exception: ") + e.what());
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (s > budget_s) {
    o.ok = false;
    o.notes.push_back("took " + std::to_string(s) + " s, budget " +
                      std::to_string(budget_s) + " s");
  }
  if (!o.ok)
    ++failures;
  std::printf("%s %2d %s: %s (%.3f s)\n", o.ok ? "PASS" : "FAIL", id, name,
              o.detail.c_str(), s);
  for (const auto &n : o.notes)
    std::printf("        %s\n", n.c_str());
  std::fflush(stdout);
}

std::string slurp(const std::string &name) {
  std::ifstream in(std::string(NJUST_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::set<Rule> rule_set(std::initializer_list<const char *> text) {
  std::set<Rule> out;
  for (const char *t : text)
    out.insert(Rule::parse(t));
  return out;
}

std::vector<std::string> atoms_of(const FactSpace &s) {
  return {s.atoms().begin(), s.atoms().end()};
}

const std::uint64_t kCorpusSeed = 20240601;
const std::size_t kCorpusSize = 200;
const std::uint64_t kDefinitionSeed = 6021;
const std::size_t kDefinitions = 100;

std::vector<NestedSystem> theorem_corpus() {
  std::mt19937_64 rng(kCorpusSeed);
  std::vector<NestedSystem> out{parse_system(slurp("running.njs"))};
  for (std::size_t i = 0; i < kCorpusSize; ++i)
    out.push_back(random_nested(rng));
  return out;
}

} // namespace

int main() {
  const auto corpus = theorem_corpus();

  criterion(1, "branch table", 1.0, [](Outcome &o) {
    const char *branches[6] = {"p -> ~q -> (~q)*", "p -> r",          "q -> (q)*",
                               "~p -> ~r",         "~p -> q -> (q)*", "~q -> (~q)*"};
    const EvalKind rows[5] = {EvalKind::SP, EvalKind::WF, EvalKind::CWF, EvalKind::KK,
                              EvalKind::ST};
    const char *table[5][6] = {{"~q", "r", "q", "~r", "q", "~q"},
                               {"t", "r", "f", "~r", "f", "t"},
                               {"f", "r", "t", "~r", "t", "f"},
                               {"u", "r", "u", "~r", "u", "u"},
                               {"~q", "r", "f", "~r", "q", "t"}};
    int hits = 0;
    for (int r = 0; r < 5; ++r)
      for (int c = 0; c < 6; ++c) {
        Fact got = evaluate_branch(BranchEvaluation(rows[r]), Branch::parse(branches[c]));
        bool ok = got == F(table[r][c]);
        hits += ok ? 1 : 0;
        o.expect(ok, eval_name(rows[r]) + "(b" + std::to_string(c + 1) + ") = " +
                         got.str() + ", expected " + table[r][c]);
      }
    o.detail = std::to_string(hits) + "/30 entries";
  });

  criterion(2, "three-atom frame model", 5.0, [](Outcome &o) {
    JustificationSystem sys{parse_system(slurp("example1.njs")).local_frame(),
                            BranchEvaluation(EvalKind::WF)};
    auto I = Interpretation::parse("r=t,p=t,q=f");
    o.expect(is_model(sys, I), "r=t p=t q=f is not a model");
    // Independent check through explicit plays.
    for (const auto &x : sys.frame.defined())
      o.expect(oracle::game_value(sys, x, I) == I(x), "play value differs at " + x.str());
    auto models = enumerate_models(sys, false);
    bool listed = std::find(models.begin(), models.end(), I) != models.end();
    o.expect(listed, "enumeration misses r=t p=t q=f");
    std::string list;
    for (const auto &m : models)
      list += (list.empty() ? "" : "; ") + m.str();
    o.detail = std::to_string(models.size()) + " models over 27 interpretations: " + list;
  });

  criterion(3, "flattening", 1.0, [](Outcome &o) {
    auto ns = parse_system(slurp("running.njs"));
    const auto &inner = ns.children.at(0);
    auto flat = flatten({inner.local_frame(), BranchEvaluation(inner.evaluation)});
    std::set<Rule> got(flat.system.frame.rules().begin(), flat.system.frame.rules().end());
    auto want = rule_set({"p <- t, r", "~p <- f", "~p <- ~r", "q <- f", "~q <- t"});
    o.expect(got == want, "flattened rules differ");
    o.detail = std::to_string(got.size()) + " rules, set equality " + (got == want ? "holds" : "fails");
  });

  criterion(4, "unfolding", 1.0, [](Outcome &o) {
    auto ns = parse_system(slurp("running.njs"));
    const auto &inner = ns.children.at(0);
    auto flat = flatten({inner.local_frame(), BranchEvaluation(inner.evaluation)});
    auto out = unfold(ns.rules, flat.system.frame.rules(), inner.defined());
    std::set<Rule> got(out.begin(), out.end());
    auto want = rule_set({"r <- t, r, f", "~r <- ~r", "~r <- f", "~r <- t"});
    o.expect(got == want, "unfolded rules differ");
    std::string s;
    for (const auto &r : got)
      s += (s.empty() ? "" : " ") + r.str();
    o.detail = s;
  });

  criterion(5, "aggregates", 20.0, [](Outcome &o) {
    std::string detail;
    for (const char *file : {"agg_flp.njs", "agg_gz.njs"}) {
      auto t0 = std::chrono::steady_clock::now();
      auto c = compress(parse_system(slurp(file)));
      auto models = enumerate_models(c.system, true);
      double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      o.expect(s < 10.0, std::string(file) + " took more than 10 s");
      std::set<Rule> s_rules;
      for (const auto &r : c.system.frame.rules())
        if (r.head == F("s"))
          s_rules.insert(r);
      bool flp = std::string(file) == "agg_flp.njs";
      auto want = flp ? rule_set({"s <- p, s", "s <- p, q, s", "s <- p, q"})
                      : rule_set({"s <- p, q, ~s", "s <- p, s, ~q", "s <- p, q, s, ~p",
                                  "s <- p, q, s"});
      o.expect(s_rules == want, std::string(file) + ": compressed rules for s differ");
      if (flp) {
        o.expect(models.size() == 1 &&
                     models[0] == Interpretation::parse("p=t,q=t,s=t,atLeastTwo=t"),
                 "FLP: expected exactly p=q=s=atLeastTwo=t");
      } else {
        o.expect(models.empty(), "GZ: expected no two-valued model");
      }
      detail += std::string(detail.empty() ? "" : ", ") + (flp ? "FLP " : "GZ ") +
                std::to_string(models.size()) + " two-valued model(s)";
    }
    o.detail = detail;
  });

  criterion(6, "compress equals merge", 600.0, [&](Outcome &o) {
    std::size_t interps = 0;
    std::size_t counter = 0;
    std::size_t plays = 0;
    std::mt19937_64 rng(kCorpusSeed + 1);
    for (std::size_t n = 0; n < corpus.size(); ++n) {
      const auto &ns = corpus[n];
      auto rep = check_equivalence(ns, SamplingPolicy{});
      o.expect(rep.in_hypothesis, "system " + std::to_string(n) + ": " + rep.reason);
      interps += rep.interpretations;
      counter += rep.counterexamples.size();
      for (const auto &c : rep.counterexamples)
        o.expect(false, "system " + std::to_string(n) + ": " + c.fact.str() + " at " +
                            c.interpretation.str());
      // The merged values themselves, against explicit plays.
      auto merged = merge(ns);
      auto table = SupportTable::build(merged);
      const std::size_t samples = n == 0 ? 27 : 2;
      std::vector<Interpretation> probe;
      if (n == 0)
        for_each_interpretation(atoms_of(ns.space()), false, [&](const Interpretation &i) {
          probe.push_back(i);
          return true;
        });
      else
        for (std::size_t k = 0; k < samples; ++k)
          probe.push_back(random_interpretation(rng, ns.space()));
      for (const auto &i : probe)
        for (const auto &x : merged.frame.defined()) {
          ++plays;
          o.expect(table.supported_value(x, i) == oracle::game_value(merged, x, i),
                   "system " + std::to_string(n) + ": merged value of " + x.str() +
                       " differs from plays at " + i.str());
        }
    }
    o.detail = std::to_string(corpus.size()) + " systems, " + std::to_string(interps) +
               " interpretations, " + std::to_string(counter) + " counterexamples, " +
               std::to_string(plays) + " play cross-checks";
  });

  criterion(7, "flattening preserves values", 600.0, [&](Outcome &o) {
    auto suite = check_flattening(corpus);
    for (const auto &f : suite.failures)
      o.expect(false, f);
    JustificationSystem e1{parse_system(slurp("example1.njs")).local_frame(),
                           BranchEvaluation(EvalKind::WF)};
    std::size_t extra = 0;
    for (auto k : {EvalKind::KK, EvalKind::WF, EvalKind::CWF}) {
      JustificationSystem sys{e1.frame, BranchEvaluation(k)};
      auto a = SupportTable::build(sys);
      auto b = SupportTable::build(flatten(sys).system);
      for_each_interpretation(atoms_of(sys.frame.space()), false, [&](const Interpretation &i) {
        for (const auto &x : sys.frame.defined()) {
          ++extra;
          o.expect(a.supported_value(x, i) == b.supported_value(x, i),
                   eval_name(k) + " three-atom frame: " + x.str() + " at " + i.str());
        }
        return true;
      });
    }
    o.detail = std::to_string(suite.checked + extra) + " value comparisons, " +
               std::to_string(suite.failures.size()) + " counterexamples";
  });

  criterion(8, "shrink and expand", 600.0, [&](Outcome &o) {
    auto suite = check_shrink_expand(corpus, 64, kCorpusSeed);
    for (const auto &f : suite.failures)
      o.expect(false, f);
    // Exhaustive jval comparison on the running example.
    auto ns = corpus.front();
    auto c = compress(ns);
    auto merged = merge(ns);
    std::size_t checks = 0;
    for (const auto &x : ns.defined())
      for (const auto &j : enumerate_justifications(c.system, x)) {
        auto e = expand(c, j);
        o.expect(equivalent(shrink(ns, e), j), "running example: shrink(expand(J)) != J");
        for_each_interpretation(atoms_of(ns.space()), false, [&](const Interpretation &i) {
          ++checks;
          o.expect(jval(merged, e, i) == jval(c.system, j, i),
                   "running example: jval changes for " + x.str());
          return true;
        });
      }
    o.detail = std::to_string(suite.checked) + " corpus justifications, " +
               std::to_string(checks) + " jval checks on the running example";
  });

  criterion(9, "fixpoint definitions", 120.0, [](Outcome &o) {
    auto d = parse_fixpoint(slurp("fd.lfp"));
    auto direct = solve_direct(d, {});
    auto brute = oracle::brute_fixpoint(d, {});
    o.expect(direct == brute, "iteration differs from enumeration");
    auto merged = merge(translate_to_nested(d));
    Interpretation none;
    std::string shown;
    for (const auto &[p, v] : direct) {
      Truth want = v ? Truth::True : Truth::False;
      o.expect(supported_value(merged, Fact::atom(p), none) == want,
               d.display(p) + " differs through the translation");
      shown += d.display(p) + "=" + (v ? "t " : "f ");
    }
    for (const char *p : {"s", "t2", "u_"})
      o.expect(direct.at(p), std::string(p) + " should be true");
    for (const char *p : {"p", "q", "r"})
      o.expect(!direct.at(p), std::string(p) + " should be false");
    std::mt19937_64 rng(kDefinitionSeed);
    std::vector<FixpointDefinition> defs;
    for (std::size_t i = 0; i < kDefinitions; ++i)
      defs.push_back(random_definition(rng, 6, 3));
    std::size_t brute_checks = 0;
    for (const auto &def : defs) {
      auto opens = def.opens();
      std::vector<std::string> list(opens.begin(), opens.end());
      for_each_interpretation(list, true, [&](const Interpretation &i) {
        Assignment a;
        for (const auto &s : list)
          a[s] = i(Fact::atom(s)) == Truth::True;
        ++brute_checks;
        o.expect(solve_direct(def, a) == oracle::brute_fixpoint(def, a),
                 "iteration differs from enumeration:\n" + print_fixpoint(def));
        return true;
      });
    }
    auto suite = check_fixpoints(defs);
    for (const auto &f : suite.failures)
      o.expect(false, f);
    o.detail = "example " + shown + "; " + std::to_string(defs.size()) + " definitions, " +
               std::to_string(brute_checks) + " open assignments, " +
               std::to_string(suite.checked) + " symbol values";
  });

  criterion(10, "consistency", 600.0, [&](Outcome &o) {
    std::vector<std::pair<std::string, JustificationSystem>> systems;
    for (std::size_t n = 0; n < corpus.size(); ++n) {
      systems.emplace_back("system " + std::to_string(n) + " merged", merge(corpus[n]));
      systems.emplace_back("system " + std::to_string(n) + " compressed",
                           compress(corpus[n]).system);
    }
    for (const char *file : {"agg_flp.njs", "agg_gz.njs"}) {
      auto ns = parse_system(slurp(file));
      systems.emplace_back(std::string(file) + " merged", merge(ns));
      systems.emplace_back(std::string(file) + " compressed", compress(ns).system);
    }
    auto e1 = parse_system(slurp("example1.njs")).local_frame();
    for (auto k : {EvalKind::SP, EvalKind::KK, EvalKind::WF, EvalKind::CWF, EvalKind::ST})
      systems.emplace_back("three-atom frame " + eval_name(k),
                           JustificationSystem{e1, BranchEvaluation(k)});
    std::size_t used = 0;
    std::size_t skipped = 0;
    std::size_t checks = 0;
    for (const auto &[name, sys] : systems) {
      if (!is_complementary(sys.frame)) {
        ++skipped;
        continue;
      }
      ++used;
      auto table = SupportTable::build(sys);
      for_each_interpretation(atoms_of(sys.frame.space()), false, [&](const Interpretation &i) {
        for (const auto &x : sys.frame.defined()) {
          ++checks;
          o.expect(table.supported_value(x.complement(), i) ==
                       negate(table.supported_value(x, i)),
                   name + ": " + x.str() + " at " + i.str());
        }
        return true;
      });
    }
    o.detail = std::to_string(used) + " complementary systems (" + std::to_string(skipped) +
               " not complementary, skipped), " + std::to_string(checks) + " checks";
  });

  criterion(11, "running example model", 5.0, [](Outcome &o) {
    auto ns = parse_system(slurp("running.njs"));
    auto c = compress(ns);
    auto models = enumerate_models(c.system, false);
    o.expect(models.size() == 1, "expected a unique model, found " +
                                     std::to_string(models.size()));
    auto pinned = Interpretation::parse("p=f,q=f,r=f");
    o.expect(!models.empty() && models[0] == pinned, "model is not p=f q=f r=f");
    auto stated = Interpretation::parse("r=t,p=f,q=f"); // ~r = f, p = f, q = f
    o.expect(!is_model(c.system, stated), "the stated interpretation is a model");
    Truth sv = supported_value(c.system, F("~r"), stated);
    auto rule = Rule::parse("~r <- t.");
    auto it = c.origin.find(rule);
    o.expect(it != c.origin.end() && it->second.kind == RuleOrigin::Kind::Unfolded &&
                 it->second.source == Rule::parse("~r <- ~q.") &&
                 it->second.substitution.at(F("~q")) == Rule::parse("~q <- t."),
             "provenance of ~r <- t is not ~r <- ~q with ~q <- t");
    o.expect(sv == Truth::True, "SV(~r) is not t");
    o.detail = "computed model " + (models.empty() ? std::string("none") : models[0].str()) +
               "; stated ~r=f p=f q=f is not a model since SV(~r)=" + truth_char(sv) +
               " via ~r <- t (from ~r <- ~q. with ~q by ~q <- t.)";
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
