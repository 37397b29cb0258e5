// SPDX-License-Identifier: Apache-2.0
#include "njust/njust.h"

#include "njust/selfcheck.hpp"
#include "njust/text.hpp"

#include "json.hpp"

#include <cstdlib>
#include <cstring>

struct njs_system {
  njust::NestedSystem ns;
};

struct njs_fixpoint {
  njust::FixpointDefinition def;
};

namespace {

using njust::Truth;
using json = nlohmann::json;

thread_local std::string last_error;

njs_status fail(njs_status s, const std::string &msg) {
  last_error = msg;
  return s;
}

template <class F> njs_status guarded(F &&body) {
  last_error.clear();
  try {
    return body();
  } catch (const njust::ParseError &e) {
    return fail(NJS_INPUT_ERROR, std::string("syntax error: ") + e.what());
  } catch (const njust::ValidationError &e) {
    return fail(NJS_INPUT_ERROR, e.what());
  } catch (const njust::ResourceError &e) {
    return fail(NJS_RESOURCE_ERROR, e.what());
  } catch (const njust::ContractError &e) {
    return fail(NJS_CONTRACT_ERROR, e.what());
  } catch (const std::bad_alloc &) {
    return fail(NJS_RESOURCE_ERROR, "out of memory");
  } catch (const std::exception &e) {
    return fail(NJS_INTERNAL_ERROR, e.what());
  }
}

char *dup(const std::string &s) {
  char *p = static_cast<char *>(std::malloc(s.size() + 1));
  if (p == nullptr)
    throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void require(const void *p, const char *what) {
  if (p == nullptr)
    throw njust::ContractError(std::string(what) + " is null");
}

njust::Limits limits_of(const njs_limits *l) {
  njust::Limits out;
  if (l != nullptr) {
    out.max_justifications = l->max_justifications;
    out.max_bodies = l->max_bodies;
    out.max_interpretations = l->max_interpretations;
  }
  return out;
}

njust::JustificationSystem semantics_of(const njust::NestedSystem &ns,
                                        njs_semantics sem,
                                        const njust::Limits &limits) {
  if (sem == NJS_MERGE)
    return njust::merge(ns);
  if (sem != NJS_COMPRESS)
    throw njust::ContractError("unknown semantics");
  return njust::compress(ns, limits).system;
}

// Atoms missing from the text are defined ones and get u; their value never
// reaches a supported value.
njust::Interpretation interpretation(const njust::NestedSystem &ns,
                                     const char *text) {
  auto given = njust::Interpretation::parse(text == nullptr ? "" : text);
  const njust::FactSpace space = ns.space();
  for (const auto &[a, v] : given.values())
    if (space.atoms().count(a) == 0)
      throw njust::ContractError("atom '" + a + "' does not occur in the system");
  for (const auto &x : ns.opens())
    if (x.is_atom() && !x.negated() && !given.has(x.name()))
      throw njust::ContractError("no value for open atom '" + x.name() + "'");
  njust::Interpretation out = njust::Interpretation::constant(space, Truth::Unknown);
  for (const auto &[a, v] : given.values())
    out.set(a, v);
  return out;
}

njust::Fact defined_fact(const njust::JustificationSystem &sys, const char *text) {
  require(text, "fact");
  auto x = njust::Fact::parse(text);
  if (!sys.frame.is_defined(x))
    throw njust::ContractError("'" + x.str() + "' is not a defined fact");
  return x;
}

std::string tv(Truth v) { return std::string(1, njust::truth_char(v)); }

json interp_json(const njust::Interpretation &i) {
  json o = json::object();
  for (const auto &[a, v] : i.values())
    o[a] = tv(v);
  return o;
}

} // namespace

extern "C" {

void njs_limits_default(njs_limits *limits) {
  if (limits == nullptr)
    return;
  njust::Limits d;
  limits->max_justifications = d.max_justifications;
  limits->max_bodies = d.max_bodies;
  limits->max_interpretations = d.max_interpretations;
}

const char *njs_last_error(void) { return last_error.c_str(); }

const char *njs_version(void) { return "0.1.0"; }

void njs_string_free(char *s) { std::free(s); }

njs_status njs_system_parse(const char *text, int validate, njs_system **out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = nullptr;
    auto ns = njust::parse_system(text, validate != 0);
    *out = new njs_system{std::move(ns)};
    return NJS_OK;
  });
}

void njs_system_free(njs_system *sys) { delete sys; }

njs_status njs_system_print(const njs_system *sys, char **out) {
  return guarded([&] {
    require(sys, "system");
    require(out, "out");
    *out = dup(njust::print_system(sys->ns));
    return NJS_OK;
  });
}

njs_status njs_system_report(const njs_system *sys, char **out) {
  return guarded([&] {
    require(sys, "system");
    require(out, "out");
    auto rep = njust::validate_nested(sys->ns);
    std::string s;
    for (const auto &v : rep.violations)
      s += v.str() + "\n";
    for (const auto &o : rep.compressibility.offending)
      s += "not compressible: " + o + "\n";
    *out = dup(s);
    return NJS_OK;
  });
}

njs_status njs_compress(const njs_system *sys, const njs_limits *limits,
                        char **out) {
  return guarded([&] {
    require(sys, "system");
    require(out, "out");
    *out = dup(njust::print_compression(njust::compress(sys->ns, limits_of(limits))));
    return NJS_OK;
  });
}

njs_status njs_merge(const njs_system *sys, char **out) {
  return guarded([&] {
    require(sys, "system");
    require(out, "out");
    *out = dup(njust::print_frame(njust::merge(sys->ns)));
    return NJS_OK;
  });
}

njs_status njs_flatten(const njs_system *sys, const njs_limits *limits,
                       char **out) {
  return guarded([&] {
    require(sys, "system");
    require(out, "out");
    auto l = limits_of(limits);
    auto c = njust::compress(sys->ns, l);
    *out = dup(njust::print_flattening(njust::flatten(c.system, l)));
    return NJS_OK;
  });
}

njs_status njs_models(const njs_system *sys, njs_semantics sem, int two_valued,
                      const njs_limits *limits, char **out) {
  return guarded([&] {
    require(sys, "system");
    require(out, "out");
    auto l = limits_of(limits);
    auto js = semantics_of(sys->ns, sem, l);
    auto models = njust::enumerate_models(js, two_valued != 0, l);
    std::string s;
    for (const auto &m : models)
      s += interp_json(m).dump() + "\n";
    *out = dup(s);
    return models.empty() ? NJS_COUNTEREXAMPLE : NJS_OK;
  });
}

njs_status njs_supported_value(const njs_system *sys, njs_semantics sem,
                               const char *fact, const char *interp,
                               const njs_limits *limits, char *value) {
  return guarded([&] {
    require(sys, "system");
    require(value, "value");
    auto l = limits_of(limits);
    auto js = semantics_of(sys->ns, sem, l);
    auto x = defined_fact(js, fact);
    auto i = interpretation(sys->ns, interp);
    *value = njust::truth_char(njust::supported_value(js, x, i, l));
    return NJS_OK;
  });
}

njs_status njs_explain(const njs_system *sys, njs_semantics sem, const char *fact,
                       const char *interp, njs_format format,
                       const njs_limits *limits, char **out) {
  return guarded([&] {
    require(sys, "system");
    require(out, "out");
    auto l = limits_of(limits);
    auto js = semantics_of(sys->ns, sem, l);
    auto x = defined_fact(js, fact);
    auto i = interpretation(sys->ns, interp);
    auto e = njust::best_justification(js, x, i, l);
    switch (format) {
    case NJS_TEXT:
      *out = dup(njust::to_text(e));
      break;
    case NJS_DOT:
      *out = dup(njust::to_dot(js, e));
      break;
    case NJS_JSON_LINES: {
      json o;
      o["fact"] = x.str();
      o["value"] = tv(e.value);
      json vals = json::array();
      for (const auto &v : e.values)
        vals.push_back(v.str());
      o["values"] = vals;
      json rules = json::array();
      for (const auto &r : e.justification.rules_in_order())
        rules.push_back(r.str());
      o["rules"] = rules;
      *out = dup(o.dump() + "\n");
      break;
    }
    default:
      throw njust::ContractError("unknown format");
    }
    return NJS_OK;
  });
}

njs_status njs_check_equivalence(const njs_system *sys, int exhaustive,
                                 size_t samples, uint64_t seed,
                                 const njs_limits *limits, char **out) {
  return guarded([&] {
    require(sys, "system");
    require(out, "out");
    njust::SamplingPolicy policy{exhaustive != 0, samples, seed};
    auto rep = njust::check_equivalence(sys->ns, policy, limits_of(limits));
    std::string s;
    for (const auto &c : rep.counterexamples) {
      json o;
      o["kind"] = "counterexample";
      o["fact"] = c.fact.str();
      o["interpretation"] = interp_json(c.interpretation);
      o["compress"] = tv(c.compressed);
      o["merge"] = tv(c.merged);
      s += o.dump() + "\n";
    }
    json v;
    v["kind"] = "verdict";
    v["verdict"] = !rep.in_hypothesis   ? "outside hypothesis"
                   : rep.equivalent() ? "equivalent"
                                      : "not equivalent";
    v["interpretations"] = rep.interpretations;
    v["counterexamples"] = rep.counterexamples.size();
    if (!rep.reason.empty())
      v["reason"] = rep.reason;
    s += v.dump() + "\n";
    *out = dup(s);
    return rep.equivalent() ? NJS_OK : NJS_COUNTEREXAMPLE;
  });
}

njs_status njs_fixpoint_parse(const char *text, njs_fixpoint **out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = nullptr;
    auto d = njust::parse_fixpoint(text);
    *out = new njs_fixpoint{std::move(d)};
    return NJS_OK;
  });
}

void njs_fixpoint_free(njs_fixpoint *fp) { delete fp; }

njs_status njs_fixpoint_print(const njs_fixpoint *fp, char **out) {
  return guarded([&] {
    require(fp, "definition");
    require(out, "out");
    *out = dup(njust::print_fixpoint(fp->def));
    return NJS_OK;
  });
}

njs_status njs_fixpoint_solve(const njs_fixpoint *fp, const char *opens,
                              int via_translation, const njs_limits *limits,
                              char **out) {
  return guarded([&] {
    require(fp, "definition");
    require(out, "out");
    const auto &d = fp->def;
    auto given = njust::Interpretation::parse(opens == nullptr ? "" : opens);
    std::map<std::string, std::string> inner;
    for (const auto &[alias, name] : d.aliases)
      inner[name] = alias;
    njust::Assignment o;
    njust::Interpretation i;
    auto open_set = d.opens();
    for (const auto &[a, v] : given.values()) {
      auto it = inner.find(a);
      std::string name = it == inner.end() ? a : it->second;
      if (!open_set.count(name))
        throw njust::ContractError("'" + a + "' is not an open symbol");
      if (v == Truth::Unknown)
        throw njust::ContractError("open symbol '" + a + "' needs t or f");
      o[name] = v == Truth::True;
      i.set(name, v);
    }
    for (const auto &a : open_set)
      if (!o.count(a))
        throw njust::ContractError("no value for open symbol '" + d.display(a) + "'");
    json res = json::object();
    if (via_translation) {
      auto l = limits_of(limits);
      auto js = njust::merge(njust::translate_to_nested(d));
      for (const auto &a : js.frame.space().atoms())
        if (!i.has(a))
          i.set(a, Truth::Unknown);
      for (const auto &p : d.defined())
        res[d.display(p)] = tv(njust::supported_value(js, njust::Fact::atom(p), i, l));
    } else {
      for (const auto &[p, v] : njust::solve_direct(d, o))
        res[d.display(p)] = v ? "t" : "f";
    }
    *out = dup(res.dump() + "\n");
    return NJS_OK;
  });
}

njs_status njs_fixpoint_aliases(const njs_fixpoint *fp, char **out) {
  return guarded([&] {
    require(fp, "definition");
    require(out, "out");
    json o = json::object();
    for (const auto &[inner, name] : fp->def.aliases)
      o[inner] = name;
    *out = dup(o.dump() + "\n");
    return NJS_OK;
  });
}

njs_status njs_fixpoint_translate(const njs_fixpoint *fp, njs_system **out) {
  return guarded([&] {
    require(fp, "definition");
    require(out, "out");
    *out = nullptr;
    *out = new njs_system{njust::translate_to_nested(fp->def)};
    return NJS_OK;
  });
}

njs_status njs_selfcheck(size_t count, uint64_t seed, const njs_limits *limits,
                         char **out) {
  return guarded([&] {
    require(out, "out");
    auto rep = njust::run_selfcheck(count, seed, limits_of(limits));
    std::string s;
    for (const auto &suite : rep.suites) {
      json o;
      o["suite"] = suite.name;
      o["checked"] = suite.checked;
      o["failures"] = suite.failures;
      o["passed"] = suite.passed();
      s += o.dump() + "\n";
    }
    *out = dup(s);
    return rep.passed() ? NJS_OK : NJS_COUNTEREXAMPLE;
  });
}

} // extern "C"
