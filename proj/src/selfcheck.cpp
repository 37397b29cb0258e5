// SPDX-License-Identifier: Apache-2.0
#include "njust/selfcheck.hpp"

#include "njust/text.hpp"

#include <algorithm>

namespace njust {

namespace {

std::string label(std::size_t i) { return "system " + std::to_string(i); }

std::vector<std::string> atoms_of(const FactSpace &space) {
  return {space.atoms().begin(), space.atoms().end()};
}

void compare_tables(const SupportTable &a, const SupportTable &b,
                    const std::set<Fact> &defined, const FactSpace &space,
                    const std::string &what, SuiteResult &out) {
  for_each_interpretation(atoms_of(space), false, [&](const Interpretation &i) {
    for (const auto &x : defined) {
      ++out.checked;
      Truth va = a.supported_value(x, i);
      Truth vb = b.supported_value(x, i);
      if (va != vb) {
        out.failures.push_back(what + ": " + x.str() + " at " + i.str() + " " +
                               truth_char(va) + " vs " + truth_char(vb));
        return false;
      }
    }
    return true;
  });
}

void consistent(const JustificationSystem &sys, const std::string &what,
                SuiteResult &out, const Limits &limits) {
  auto table = SupportTable::build(sys, limits);
  for_each_interpretation(atoms_of(sys.frame.space()), false,
                          [&](const Interpretation &i) {
    for (const auto &x : sys.frame.defined()) {
      if (x.negated())
        continue;
      ++out.checked;
      Truth v = table.supported_value(x, i);
      Truth w = table.supported_value(x.complement(), i);
      if (w != negate(v)) {
        out.failures.push_back(what + ": " + x.str() + " at " + i.str());
        return false;
      }
    }
    return true;
  });
}

} // namespace

SuiteResult check_compress_merge(const std::vector<NestedSystem> &corpus,
                                 const Limits &limits) {
  SuiteResult out{"compress-merge", 0, {}};
  for (std::size_t n = 0; n < corpus.size(); ++n) {
    auto rep = check_equivalence(corpus[n], SamplingPolicy{}, limits);
    if (!rep.in_hypothesis) {
      out.failures.push_back(label(n) + ": " + rep.reason);
      continue;
    }
    out.checked += rep.interpretations;
    for (const auto &c : rep.counterexamples)
      out.failures.push_back(label(n) + ": " + c.fact.str() + " at " +
                             c.interpretation.str() + " compress " +
                             truth_char(c.compressed) + " merge " +
                             truth_char(c.merged));
  }
  return out;
}

SuiteResult check_flattening(const std::vector<NestedSystem> &corpus,
                             const Limits &limits) {
  SuiteResult out{"flatten", 0, {}};
  for (std::size_t n = 0; n < corpus.size(); ++n) {
    std::vector<std::pair<std::string, JustificationSystem>> systems;
    systems.emplace_back(label(n) + " compressed",
                         compress(corpus[n], limits).system);
    auto visit = [&](auto &&self, const NestedSystem &ns,
                     const std::string &path) -> void {
      systems.emplace_back(label(n) + " " + path,
                           JustificationSystem{ns.local_frame(),
                                               BranchEvaluation(ns.evaluation)});
      for (std::size_t c = 0; c < ns.children.size(); ++c)
        self(self, ns.children[c], path + "/" + std::to_string(c));
    };
    visit(visit, corpus[n], "root");
    for (const auto &[what, sys] : systems) {
      auto flat = flatten(sys, limits);
      compare_tables(SupportTable::build(sys, limits),
                     SupportTable::build(flat.system, limits),
                     sys.frame.defined(), sys.frame.space(), what, out);
    }
  }
  return out;
}

SuiteResult check_shrink_expand(const std::vector<NestedSystem> &corpus,
                                std::size_t per_fact, std::uint64_t seed) {
  SuiteResult out{"shrink-expand", 0, {}};
  std::mt19937_64 rng(seed);
  for (std::size_t n = 0; n < corpus.size(); ++n) {
    const auto &ns = corpus[n];
    auto c = compress(ns);
    auto merged = merge(ns);
    const FactSpace space = ns.space();
    auto probe = random_interpretation(rng, space);
    auto fail = [&](const Fact &x, const Justification &j, const char *what) {
      out.failures.push_back(label(n) + ": " + x.str() + " " + what + "\n" +
                             j.str());
    };
    for (const auto &x : ns.defined()) {
      std::size_t seen = 0;
      enumerate_justifications(c.system, x, Limits{}, [&](const Justification &j) {
        ++out.checked;
        auto e = expand(c, j);
        if (!is_locally_complete(merged.frame, e))
          fail(x, j, "expands to a non-justification");
        else if (branch_values(merged, e) != branch_values(c.system, j) ||
                 jval(merged, e, probe) != jval(c.system, j, probe))
          fail(x, j, "changes value under expand");
        else if (!equivalent(shrink(ns, e), j))
          fail(x, j, "is not restored by shrink");
        return ++seen < per_fact;
      });
      seen = 0;
      enumerate_justifications(merged, x, Limits{}, [&](const Justification &j) {
        ++out.checked;
        auto s = shrink(ns, j);
        if (!is_locally_complete(c.system.frame, s))
          fail(x, j, "shrinks to a non-justification");
        else if (branch_values(c.system, s) != branch_values(merged, j) ||
                 jval(c.system, s, probe) != jval(merged, j, probe))
          fail(x, j, "changes value under shrink");
        return ++seen < per_fact;
      });
    }
  }
  return out;
}

SuiteResult check_consistency(const std::vector<NestedSystem> &corpus,
                              const Limits &limits) {
  SuiteResult out{"consistency", 0, {}};
  for (std::size_t n = 0; n < corpus.size(); ++n) {
    consistent(merge(corpus[n]), label(n) + " merged", out, limits);
    consistent(compress(corpus[n], limits).system, label(n) + " compressed",
               out, limits);
  }
  return out;
}

SuiteResult check_round_trip(const std::vector<NestedSystem> &corpus,
                             const std::vector<FixpointDefinition> &defs) {
  SuiteResult out{"round-trip", 0, {}};
  for (std::size_t n = 0; n < corpus.size(); ++n) {
    ++out.checked;
    auto text = print_system(corpus[n]);
    try {
      if (!(parse_system(text) == corpus[n]))
        out.failures.push_back(label(n) + " reads back differently:\n" + text);
    } catch (const Error &e) {
      out.failures.push_back(label(n) + ": " + e.what() + "\n" + text);
    }
  }
  for (std::size_t n = 0; n < defs.size(); ++n) {
    ++out.checked;
    auto text = print_fixpoint(defs[n]);
    try {
      if (!(parse_fixpoint(text) == defs[n]))
        out.failures.push_back("definition " + std::to_string(n) +
                               " reads back differently:\n" + text);
    } catch (const Error &e) {
      out.failures.push_back("definition " + std::to_string(n) + ": " +
                             e.what() + "\n" + text);
    }
  }
  return out;
}

SuiteResult check_fixpoints(const std::vector<FixpointDefinition> &defs,
                            const Limits &limits) {
  SuiteResult out{"fixpoint", 0, {}};
  for (std::size_t n = 0; n < defs.size(); ++n) {
    const auto &d = defs[n];
    auto table = SupportTable::build(merge(translate_to_nested(d)), limits);
    auto opens = d.opens();
    std::vector<std::string> open_list(opens.begin(), opens.end());
    for_each_interpretation(open_list, true, [&](const Interpretation &i) {
      Assignment o;
      for (const auto &a : open_list)
        o[a] = i(Fact::atom(a)) == Truth::True;
      auto direct = solve_direct(d, o);
      for (const auto &[p, v] : direct) {
        ++out.checked;
        Truth sv = table.supported_value(Fact::atom(p), i);
        Truth expected = v ? Truth::True : Truth::False;
        if (sv != expected) {
          out.failures.push_back("definition " + std::to_string(n) + ": " + p +
                                 " at " + i.str() + " translated " +
                                 truth_char(sv) + " direct " +
                                 truth_char(expected) + "\n" +
                                 print_fixpoint(d));
          return false;
        }
      }
      return true;
    });
  }
  return out;
}

bool SelfCheckReport::passed() const {
  return std::all_of(suites.begin(), suites.end(),
                     [](const SuiteResult &s) { return s.passed(); });
}

SelfCheckReport run_selfcheck(std::size_t count, std::uint64_t seed,
                              const Limits &limits) {
  std::mt19937_64 rng(seed);
  std::vector<NestedSystem> corpus;
  std::vector<FixpointDefinition> defs;
  for (std::size_t i = 0; i < count; ++i)
    corpus.push_back(random_nested(rng));
  for (std::size_t i = 0; i < count; ++i)
    defs.push_back(random_definition(rng));
  SelfCheckReport r;
  r.suites.push_back(check_round_trip(corpus, defs));
  r.suites.push_back(check_compress_merge(corpus, limits));
  r.suites.push_back(check_flattening(corpus, limits));
  r.suites.push_back(check_consistency(corpus, limits));
  r.suites.push_back(check_shrink_expand(corpus, 32, seed));
  r.suites.push_back(check_fixpoints(defs, limits));
  return r;
}

} // namespace njust
