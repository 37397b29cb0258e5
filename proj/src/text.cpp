// SPDX-License-Identifier: Apache-2.0
#include "njust/text.hpp"

#include <cctype>
#include <sstream>

namespace njust {

namespace {

struct Token {
  enum Kind { Ident, Sym, Directive, End } kind = End;
  std::string text;
  int line = 1;
  int col = 1;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token &peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string &msg, const Token &at) const {
    throw ParseError(msg, at.line, at.col);
  }
  [[noreturn]] void fail(const std::string &msg) const { fail(msg, tok_); }

  Token expect(const std::string &sym) {
    if (tok_.kind != Token::Sym || tok_.text != sym)
      fail("expected '" + sym + "' but found " + describe(tok_));
    return take();
  }
  bool accept(const std::string &sym) {
    if (tok_.kind == Token::Sym && tok_.text == sym) {
      advance();
      return true;
    }
    return false;
  }
  Token ident() {
    if (tok_.kind != Token::Ident)
      fail("expected a name but found " + describe(tok_));
    return take();
  }

  static std::string describe(const Token &t) {
    switch (t.kind) {
    case Token::End:
      return "end of input";
    case Token::Directive:
      return "'#" + t.text + "'";
    default:
      return "'" + t.text + "'";
    }
  }

private:
  char at(std::size_t i) const { return i < src_.size() ? src_[i] : '\0'; }
  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  static bool word_char(char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '_' || c == '\'';
  }

  void advance() {
    for (;;) {
      while (pos_ < src_.size() &&
             std::isspace(static_cast<unsigned char>(src_[pos_])))
        bump();
      if (pos_ >= src_.size())
        break;
      char c = src_[pos_];
      if (c == '#' && src_.substr(pos_ + 1, 8) == "complete" &&
          !word_char(at(pos_ + 9)))
        break;
      if (c == '%' || c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n')
          bump();
        continue;
      }
      break;
    }
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
      tok_.kind = Token::End;
      return;
    }
    char c = src_[pos_];
    if (c == '#') {
      for (int i = 0; i < 9; ++i)
        bump();
      tok_.kind = Token::Directive;
      tok_.text = "complete";
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      tok_.kind = Token::Ident;
      while (pos_ < src_.size() && word_char(src_[pos_])) {
        tok_.text += src_[pos_];
        bump();
      }
      return;
    }
    tok_.kind = Token::Sym;
    if (c == '<' && at(pos_ + 1) == '-') {
      tok_.text = "<-";
      bump();
      bump();
      return;
    }
    static const std::string singles = "~,.{}|&!()";
    if (singles.find(c) == std::string::npos)
      fail("unexpected character '" + std::string(1, c) + "'", tok_);
    tok_.text = std::string(1, c);
    bump();
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

Fact parse_fact(Lexer &lx) {
  bool neg = lx.accept("~");
  Token name = lx.ident();
  if (is_reserved(name.text)) {
    if (neg)
      lx.fail("a logical fact cannot be negated", name);
    return Fact::logical(parse_truth(name.text));
  }
  return Fact::atom(name.text, neg);
}

Rule parse_rule(Lexer &lx) {
  Token start = lx.peek();
  Fact head = parse_fact(lx);
  if (head.is_logical())
    lx.fail("a rule head must be an atom or a negated atom", start);
  lx.expect("<-");
  if (lx.peek().kind == Token::Sym && lx.peek().text == ".")
    lx.fail("empty rule body");
  std::vector<Fact> body{parse_fact(lx)};
  while (lx.accept(","))
    body.push_back(parse_fact(lx));
  lx.expect(".");
  return Rule(std::move(head), std::move(body));
}

NestedSystem parse_block(Lexer &lx) {
  Token kw = lx.ident();
  if (kw.text != "system")
    lx.fail("expected 'system' but found '" + kw.text + "'", kw);
  Token ev = lx.ident();
  EvalKind kind{};
  try {
    kind = parse_eval(ev.text);
  } catch (const Error &) {
    lx.fail("unknown evaluation '" + ev.text + "'", ev);
  }
  if (kind == EvalKind::MERGE)
    lx.fail("merge is not a block evaluation", ev);
  lx.expect("{");
  std::vector<Rule> rules;
  std::vector<NestedSystem> children;
  bool complete = false;
  for (;;) {
    const Token &t = lx.peek();
    if (t.kind == Token::Sym && t.text == "}")
      break;
    if (t.kind == Token::End)
      lx.fail("unterminated block; expected '}'");
    if (t.kind == Token::Directive) {
      lx.take();
      complete = true;
      continue;
    }
    if (t.kind == Token::Ident && t.text == "system") {
      children.push_back(parse_block(lx));
      continue;
    }
    rules.push_back(parse_rule(lx));
  }
  lx.expect("}");
  if (complete) {
    std::vector<Rule> positive;
    std::vector<Rule> all;
    for (auto &r : rules)
      (r.head.negated() ? all : positive).push_back(r);
    for (auto &r : complementation(positive))
      all.push_back(std::move(r));
    rules = std::move(all);
  }
  return NestedSystem::make(kind, std::move(rules), std::move(children));
}

void print_block(const NestedSystem &ns, int depth, std::ostringstream &out) {
  std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  out << pad << "system " << eval_name(ns.evaluation) << " {\n";
  for (const auto &r : ns.rules)
    out << pad << "  " << r.str() << '\n';
  for (const auto &c : ns.children)
    print_block(c, depth + 1, out);
  out << pad << "}\n";
}

std::string rules_line(const std::vector<Rule> &rules) {
  std::string s;
  for (const auto &r : rules)
    s += (s.empty() ? "" : " ") + r.str();
  return s;
}

void print_origin(const Rule &r, const RuleOrigin &o, std::ostringstream &out) {
  switch (o.kind) {
  case RuleOrigin::Kind::Local:
    return;
  case RuleOrigin::Kind::Flattened:
    out << "  # from: child " << o.child << " justification "
        << rules_line(o.witness ? o.witness->rules_in_order()
                                : std::vector<Rule>{})
        << '\n';
    return;
  case RuleOrigin::Kind::Unfolded: {
    out << "  # from: " << (o.source ? o.source->str() : r.str());
    bool first = true;
    for (const auto &[x, lower] : o.substitution) {
      out << (first ? " with " : ", ") << x.str() << " by " << lower.str();
      first = false;
    }
    out << '\n';
    return;
  }
  }
}

// Formula grammar: or := and ('|' and)*; and := un ('&' un)*;
// un := '!' un | '(' or ')' | name
Formula parse_or(Lexer &lx);

Formula parse_unary(Lexer &lx) {
  if (lx.accept("!"))
    return Formula::negation(parse_unary(lx));
  if (lx.accept("(")) {
    Formula f = parse_or(lx);
    lx.expect(")");
    return f;
  }
  return Formula::var(lx.ident().text);
}

Formula parse_and(Lexer &lx) {
  std::vector<Formula> parts{parse_unary(lx)};
  while (lx.accept("&"))
    parts.push_back(parse_unary(lx));
  return Formula::conjunction(std::move(parts));
}

Formula parse_or(Lexer &lx) {
  std::vector<Formula> parts{parse_and(lx)};
  while (lx.accept("|"))
    parts.push_back(parse_and(lx));
  return Formula::disjunction(std::move(parts));
}

FixpointDefinition parse_definition(Lexer &lx) {
  Token kw = lx.ident();
  FixpointDefinition d;
  if (kw.text == "lfp")
    d.polarity = Polarity::Least;
  else if (kw.text == "gfp")
    d.polarity = Polarity::Greatest;
  else
    lx.fail("expected 'lfp' or 'gfp' but found '" + kw.text + "'", kw);
  lx.expect("{");
  for (;;) {
    const Token &t = lx.peek();
    if (t.kind == Token::Sym && t.text == "}")
      break;
    if (t.kind == Token::End)
      lx.fail("unterminated block; expected '}'");
    if (t.kind == Token::Ident && (t.text == "lfp" || t.text == "gfp")) {
      d.children.push_back(parse_definition(lx));
      continue;
    }
    Token head = lx.ident();
    lx.expect("<-");
    if (lx.peek().kind == Token::Sym && lx.peek().text == ".")
      lx.fail("empty rule body");
    Formula f = parse_or(lx);
    lx.expect(".");
    d.rules.emplace_back(head.text, std::move(f));
  }
  lx.expect("}");
  return d;
}

void rename(FixpointDefinition &d, const std::map<std::string, std::string> &to) {
  auto fix = [&](auto &&self, Formula &f) -> void {
    if (f.kind == Formula::Kind::Atom) {
      auto it = to.find(f.atom);
      if (it != to.end())
        f.atom = it->second;
    }
    for (auto &a : f.args)
      self(self, a);
  };
  for (auto &[p, f] : d.rules) {
    auto it = to.find(p);
    if (it != to.end())
      p = it->second;
    fix(fix, f);
  }
  for (auto &c : d.children)
    rename(c, to);
}

void print_definition(const FixpointDefinition &d, const FixpointDefinition &top,
                      int depth, std::ostringstream &out) {
  std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  out << pad << (d.polarity == Polarity::Least ? "lfp" : "gfp") << " {\n";
  for (const auto &[p, f] : d.rules) {
    Formula g = f;
    auto fix = [&](auto &&self, Formula &h) -> void {
      if (h.kind == Formula::Kind::Atom)
        h.atom = top.display(h.atom);
      for (auto &a : h.args)
        self(self, a);
    };
    fix(fix, g);
    out << pad << "  " << top.display(p) << " <- " << g.str() << ".\n";
  }
  for (const auto &c : d.children)
    print_definition(c, top, depth + 1, out);
  out << pad << "}\n";
}

} // namespace

NestedSystem parse_system(std::string_view text, bool validate) {
  Lexer lx(text);
  NestedSystem ns;
  try {
    ns = parse_block(lx);
  } catch (const ParseError &) {
    throw;
  } catch (const Error &e) {
    lx.fail(e.what());
  }
  if (lx.peek().kind != Token::End)
    lx.fail("trailing input after the top-level block");
  if (validate)
    require_valid(ns);
  return ns;
}

std::string print_system(const NestedSystem &ns) {
  std::ostringstream out;
  print_block(ns, 0, out);
  return out.str();
}

std::string print_frame(const JustificationSystem &sys) {
  std::ostringstream out;
  const auto *ctx = sys.evaluation.context();
  out << "system " << sys.evaluation.str() << " {\n";
  for (const auto &r : sys.frame.rules()) {
    out << "  " << r.str();
    if (ctx) {
      auto it = ctx->system_of.find(r.head);
      if (it != ctx->system_of.end())
        out << "  # node " << it->second << ' '
            << eval_name(ctx->evaluation_of.at(
                   static_cast<std::size_t>(it->second)));
    }
    out << '\n';
  }
  out << "}\n";
  return out.str();
}

std::string print_compression(const Compression &c) {
  std::ostringstream out;
  out << "system " << c.system.evaluation.str() << " {\n";
  for (const auto &r : c.system.frame.rules()) {
    auto it = c.origin.find(r);
    if (it != c.origin.end())
      print_origin(r, it->second, out);
    out << "  " << r.str() << '\n';
  }
  out << "}\n";
  return out.str();
}

std::string print_flattening(const Flattening &f) {
  std::ostringstream out;
  out << "system " << f.system.evaluation.str() << " {\n";
  for (const auto &r : f.system.frame.rules()) {
    auto it = f.source.find(r);
    if (it != f.source.end())
      out << "  # from: justification " << rules_line(it->second.rules_in_order())
          << '\n';
    out << "  " << r.str() << '\n';
  }
  out << "}\n";
  return out.str();
}

FixpointDefinition parse_fixpoint(std::string_view text) {
  Lexer lx(text);
  FixpointDefinition d = parse_definition(lx);
  if (lx.peek().kind != Token::End)
    lx.fail("trailing input after the top-level block");
  std::set<std::string> names = d.defined();
  auto opens = d.opens();
  names.insert(opens.begin(), opens.end());
  std::map<std::string, std::string> to;
  for (const char *r : {"f", "t", "u"}) {
    if (!names.count(r))
      continue;
    std::string fresh = std::string(r) + "_";
    while (names.count(fresh))
      fresh += "_";
    names.insert(fresh);
    to[r] = fresh;
    d.aliases[fresh] = r;
  }
  rename(d, to);
  auto violations = validate_definition(d);
  if (!violations.empty()) {
    std::string msg = "invalid fixpoint definition:";
    for (const auto &v : violations)
      msg += "\n  " + v.str();
    throw ValidationError(msg);
  }
  return d;
}

std::string print_fixpoint(const FixpointDefinition &d) {
  std::ostringstream out;
  print_definition(d, d, 0, out);
  return out.str();
}

} // namespace njust
