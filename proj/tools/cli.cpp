// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include "njust/njust.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <sstream>

namespace njust::cli {

namespace {

using json = nlohmann::json;

struct Failure {
  int code;
  std::string message;
};

int exit_code(njs_status s) {
  switch (s) {
  case NJS_OK:
    return 0;
  case NJS_COUNTEREXAMPLE:
    return 1;
  case NJS_RESOURCE_ERROR:
    return 3;
  default:
    return 2;
  }
}

void check(njs_status s) {
  if (s != NJS_OK && s != NJS_COUNTEREXAMPLE)
    throw Failure{exit_code(s), njs_last_error()};
}

std::string take(char *s) {
  std::string out = s == nullptr ? "" : s;
  njs_string_free(s);
  return out;
}

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Failure{2, "cannot read '" + path + "'"};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

using System = std::unique_ptr<njs_system, decltype(&njs_system_free)>;
using Definition = std::unique_ptr<njs_fixpoint, decltype(&njs_fixpoint_free)>;

System load_system(const std::string &path) {
  njs_system *sys = nullptr;
  auto text = read_file(path);
  njs_status s = njs_system_parse(text.c_str(), 1, &sys);
  if (s != NJS_OK)
    throw Failure{exit_code(s), path + ": " + njs_last_error()};
  return {sys, &njs_system_free};
}

Definition load_definition(const std::string &path) {
  njs_fixpoint *fp = nullptr;
  auto text = read_file(path);
  njs_status s = njs_fixpoint_parse(text.c_str(), &fp);
  if (s != NJS_OK)
    throw Failure{exit_code(s), path + ": " + njs_last_error()};
  return {fp, &njs_fixpoint_free};
}

std::vector<json> records(const std::string &lines) {
  std::vector<json> out;
  std::istringstream in(lines);
  for (std::string line; std::getline(in, line);)
    if (!line.empty())
      out.push_back(json::parse(line));
  return out;
}

std::string assignment_line(const json &o) {
  std::string s;
  for (const auto &[k, v] : o.items())
    s += (s.empty() ? "" : " ") + k + "=" + v.get<std::string>();
  return s;
}

struct Options {
  std::string file;
  std::string fact;
  std::string interp;
  std::string format = "text";
  std::string semantics = "compress";
  bool two_valued = false;
  bool exhaustive = false;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::size_t random = 0;
  njs_limits limits{};
};

njs_semantics semantics(const Options &o) {
  return o.semantics == "merge" ? NJS_MERGE : NJS_COMPRESS;
}

int models(const Options &o, RunReport &r) {
  auto sys = load_system(o.file);
  char *out = nullptr;
  njs_status s = njs_models(sys.get(), semantics(o), o.two_valued ? 1 : 0,
                            &o.limits, &out);
  check(s);
  auto text = take(out);
  if (o.format == "json-lines") {
    r.out = text;
  } else {
    auto rows = records(text);
    if (rows.empty()) {
      r.out = "no models\n";
    } else {
      std::vector<std::string> atoms;
      for (const auto &[k, v] : rows.front().items())
        atoms.push_back(k);
      std::size_t width = 1;
      for (const auto &a : atoms)
        width = std::max(width, a.size());
      std::ostringstream t;
      for (const auto &a : atoms)
        t << a << std::string(width - a.size() + 1, ' ');
      t << '\n';
      for (const auto &row : rows) {
        for (const auto &a : atoms)
          t << row[a].get<std::string>() << std::string(width, ' ');
        t << '\n';
      }
      t << rows.size() << (rows.size() == 1 ? " model\n" : " models\n");
      r.out = t.str();
    }
  }
  return exit_code(s);
}

int sv(const Options &o, RunReport &r) {
  auto sys = load_system(o.file);
  char value = 0;
  check(njs_supported_value(sys.get(), semantics(o), o.fact.c_str(),
                            o.interp.c_str(), &o.limits, &value));
  if (o.format == "json-lines") {
    json j;
    j["fact"] = o.fact;
    j["value"] = std::string(1, value);
    r.out = j.dump() + "\n";
  } else {
    r.out = o.fact + " = " + std::string(1, value) + "\n";
  }
  return 0;
}

int explain(const Options &o, RunReport &r) {
  auto sys = load_system(o.file);
  njs_format f = o.format == "dot"          ? NJS_DOT
                 : o.format == "json-lines" ? NJS_JSON_LINES
                                            : NJS_TEXT;
  char *out = nullptr;
  check(njs_explain(sys.get(), semantics(o), o.fact.c_str(), o.interp.c_str(), f,
                    &o.limits, &out));
  r.out = take(out);
  return 0;
}

template <class Fn> int print_with(const Options &o, RunReport &r, Fn fn) {
  auto sys = load_system(o.file);
  char *out = nullptr;
  check(fn(sys.get(), &out));
  r.out = take(out);
  return 0;
}

int check_equiv(const Options &o, RunReport &r) {
  auto sys = load_system(o.file);
  char *out = nullptr;
  njs_status s = njs_check_equivalence(sys.get(), o.exhaustive ? 1 : 0, o.samples,
                                       o.seed, &o.limits, &out);
  check(s);
  auto text = take(out);
  if (o.format == "json-lines") {
    r.out = text;
    return exit_code(s);
  }
  std::ostringstream t;
  for (const auto &rec : records(text)) {
    if (rec["kind"] == "counterexample") {
      t << "counterexample: " << rec["fact"].get<std::string>() << " at "
        << assignment_line(rec["interpretation"]) << ": compress "
        << rec["compress"].get<std::string>() << ", merge "
        << rec["merge"].get<std::string>() << '\n';
      continue;
    }
    t << rec["verdict"].get<std::string>();
    if (rec.contains("reason"))
      t << ": " << rec["reason"].get<std::string>();
    else
      t << " (" << rec["interpretations"].get<std::size_t>()
        << " interpretations)";
    t << '\n';
  }
  r.out = t.str();
  return exit_code(s);
}

int fpd_solve(const Options &o, RunReport &r) {
  auto fp = load_definition(o.file);
  char *direct = nullptr;
  char *translated = nullptr;
  check(njs_fixpoint_solve(fp.get(), o.interp.c_str(), 0, &o.limits, &direct));
  auto a = json::parse(take(direct));
  check(njs_fixpoint_solve(fp.get(), o.interp.c_str(), 1, &o.limits, &translated));
  auto b = json::parse(take(translated));
  if (o.format == "json-lines") {
    json j;
    j["direct"] = a;
    j["translated"] = b;
    r.out = j.dump() + "\n";
  } else {
    r.out = assignment_line(a) + "\n";
  }
  if (a != b) {
    r.err = "translation disagrees: " + assignment_line(b) + "\n";
    return 1;
  }
  return 0;
}

int fpd_translate(const Options &o, RunReport &r) {
  auto fp = load_definition(o.file);
  njs_system *sys = nullptr;
  check(njs_fixpoint_translate(fp.get(), &sys));
  System owned(sys, &njs_system_free);
  char *aliases = nullptr;
  check(njs_fixpoint_aliases(fp.get(), &aliases));
  const json renamed = json::parse(take(aliases));
  for (const auto &[inner, name] : renamed.items())
    r.out += "% " + inner + " stands for " + name.get<std::string>() + "\n";
  char *out = nullptr;
  check(njs_system_print(owned.get(), &out));
  r.out += take(out);
  return 0;
}

int selfcheck(const Options &o, RunReport &r) {
  char *out = nullptr;
  njs_status s = njs_selfcheck(o.random, o.seed, &o.limits, &out);
  check(s);
  auto text = take(out);
  if (o.format == "json-lines") {
    r.out = text;
    return exit_code(s);
  }
  std::ostringstream t;
  for (const auto &rec : records(text)) {
    t << (rec["passed"].get<bool>() ? "PASS " : "FAIL ")
      << rec["suite"].get<std::string>() << " ("
      << rec["checked"].get<std::size_t>() << " checks)\n";
    for (const auto &f : rec["failures"])
      t << "  " << f.get<std::string>() << '\n';
  }
  r.out = t.str();
  return exit_code(s);
}

} // namespace

RunReport run(const std::vector<std::string> &args) {
  RunReport report;
  Options o;
  njs_limits_default(&o.limits);

  CLI::App app{"justification semantics for nested rule systems", "njust"};
  app.require_subcommand(1);
  app.set_version_flag("--version", njs_version());

  auto add_caps = [&](CLI::App *cmd) {
    cmd->add_option("--cap-justifications", o.limits.max_justifications,
                     "justifications enumerated per fact")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--cap-interps", o.limits.max_interpretations,
                     "interpretations enumerated")
        ->check(CLI::PositiveNumber);
  };
  auto add_file = [&](CLI::App *cmd, const char *what) {
    cmd->add_option("file", o.file, what)->required();
  };
  auto add_format = [&](CLI::App *cmd, std::vector<std::string> allowed) {
    cmd->add_option("--format", o.format)->check(CLI::IsMember(allowed));
  };
  auto add_semantics = [&](CLI::App *cmd) {
    cmd->add_option("--semantics", o.semantics, "compress (default) or merge")
        ->check(CLI::IsMember({"compress", "merge"}));
  };

  auto *c_models = app.add_subcommand("models", "list the models");
  add_file(c_models, "nested system (.njs)");
  c_models->add_flag("--two-valued", o.two_valued);
  add_semantics(c_models);
  add_format(c_models, {"text", "json-lines"});
  add_caps(c_models);

  auto *c_sv = app.add_subcommand("sv", "supported value of a fact");
  add_file(c_sv, "nested system (.njs)");
  c_sv->add_option("--fact", o.fact)->required();
  c_sv->add_option("--interp", o.interp, "values of the open atoms: p=t,q=f");
  add_semantics(c_sv);
  add_format(c_sv, {"text", "json-lines"});
  add_caps(c_sv);

  auto *c_explain = app.add_subcommand("explain", "best justification of a fact");
  add_file(c_explain, "nested system (.njs)");
  c_explain->add_option("--fact", o.fact)->required();
  c_explain->add_option("--interp", o.interp, "values of the open atoms: p=t,q=f");
  add_semantics(c_explain);
  add_format(c_explain, {"text", "dot", "json-lines"});
  add_caps(c_explain);

  auto *c_flatten = app.add_subcommand("flatten", "flatten the compressed system");
  add_file(c_flatten, "nested system (.njs)");
  add_caps(c_flatten);

  auto *c_compress = app.add_subcommand("compress", "compress a nested system");
  add_file(c_compress, "nested system (.njs)");
  add_caps(c_compress);

  auto *c_merge = app.add_subcommand("merge", "merge a nested system");
  add_file(c_merge, "nested system (.njs)");

  auto *c_equiv = app.add_subcommand("check-equiv", "compare compress and merge");
  add_file(c_equiv, "nested system (.njs)");
  auto *o_exh = c_equiv->add_flag("--exhaustive", o.exhaustive);
  auto *o_samples = c_equiv->add_option("--samples", o.samples)
                        ->check(CLI::PositiveNumber);
  auto *o_seed = c_equiv->add_option("--seed", o.seed);
  o_exh->excludes(o_samples);
  o_samples->needs(o_seed);
  add_format(c_equiv, {"text", "json-lines"});
  add_caps(c_equiv);

  auto *c_solve = app.add_subcommand("fpd-solve", "solve a fixpoint definition");
  add_file(c_solve, "fixpoint definition (.lfp)");
  c_solve->add_option("--interp", o.interp, "values of the open symbols: a=t,b=f");
  add_format(c_solve, {"text", "json-lines"});
  add_caps(c_solve);

  auto *c_translate =
      app.add_subcommand("fpd-translate", "nested system of a fixpoint definition");
  add_file(c_translate, "fixpoint definition (.lfp)");

  auto *c_self = app.add_subcommand("selfcheck", "randomised property suites");
  c_self->add_option("--random", o.random, "systems and definitions to draw")
      ->required();
  c_self->add_option("--seed", o.seed)->required();
  add_format(c_self, {"text", "json-lines"});
  add_caps(c_self);

  std::ostringstream out;
  std::ostringstream err;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e, out, err);
    report.out = out.str();
    report.err = err.str();
    report.exit_code = code == 0 ? 0 : 2;
    return report;
  }
  if (c_equiv->parsed() && !o.exhaustive && o.samples == 0)
    o.exhaustive = true;

  try {
    if (c_models->parsed())
      report.exit_code = models(o, report);
    else if (c_sv->parsed())
      report.exit_code = sv(o, report);
    else if (c_explain->parsed())
      report.exit_code = explain(o, report);
    else if (c_flatten->parsed())
      report.exit_code = print_with(o, report, [&](njs_system *s, char **p) {
        return njs_flatten(s, &o.limits, p);
      });
    else if (c_compress->parsed())
      report.exit_code = print_with(o, report, [&](njs_system *s, char **p) {
        return njs_compress(s, &o.limits, p);
      });
    else if (c_merge->parsed())
      report.exit_code = print_with(o, report, [&](njs_system *s, char **p) {
        return njs_merge(s, p);
      });
    else if (c_equiv->parsed())
      report.exit_code = check_equiv(o, report);
    else if (c_solve->parsed())
      report.exit_code = fpd_solve(o, report);
    else if (c_translate->parsed())
      report.exit_code = fpd_translate(o, report);
    else if (c_self->parsed())
      report.exit_code = selfcheck(o, report);
  } catch (const Failure &f) {
    report.exit_code = f.code;
    report.err += "error: " + f.message + "\n";
  } catch (const json::exception &e) {
    report.exit_code = 2;
    report.err += std::string("error: malformed library output: ") + e.what() + "\n";
  }
  return report;
}

} // namespace njust::cli
