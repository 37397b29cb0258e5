// SPDX-License-Identifier: Apache-2.0
#include "njust/branches.hpp"

#include "njust/error.hpp"

#include <algorithm>
#include <sstream>

namespace njust {

std::string eval_name(EvalKind kind) {
  switch (kind) {
  case EvalKind::SP:
    return "sp";
  case EvalKind::KK:
    return "kk";
  case EvalKind::WF:
    return "wf";
  case EvalKind::CWF:
    return "cwf";
  case EvalKind::ST:
    return "st";
  case EvalKind::MERGE:
    return "merge";
  }
  return "?";
}

EvalKind parse_eval(std::string_view name) {
  for (auto k : {EvalKind::SP, EvalKind::KK, EvalKind::WF, EvalKind::CWF,
                 EvalKind::ST, EvalKind::MERGE})
    if (eval_name(k) == name)
      return k;
  throw ContractError("unknown branch evaluation '" + std::string(name) + "'");
}

int LocalityContext::depth(int node) const {
  int d = 0;
  while (parent.at(node) >= 0) {
    node = parent[node];
    ++d;
  }
  return d;
}

bool LocalityContext::is_ancestor_or_self(int ancestor, int node) const {
  while (node >= 0) {
    if (node == ancestor)
      return true;
    node = parent.at(node);
  }
  return false;
}

BranchEvaluation::BranchEvaluation(EvalKind kind) : kind_(kind) {
  if (kind == EvalKind::MERGE)
    throw ContractError("a merge evaluation needs a locality context");
}

BranchEvaluation
BranchEvaluation::merge(std::shared_ptr<const LocalityContext> ctx) {
  if (!ctx || ctx->evaluation_of.empty())
    throw ContractError("a merge evaluation needs a locality context");
  BranchEvaluation be;
  be.kind_ = EvalKind::MERGE;
  be.ctx_ = std::move(ctx);
  return be;
}

bool is_parametric(const BranchEvaluation &be) {
  switch (be.kind()) {
  case EvalKind::KK:
  case EvalKind::WF:
  case EvalKind::CWF:
    return true;
  case EvalKind::MERGE:
    return std::all_of(be.context()->evaluation_of.begin(),
                       be.context()->evaluation_of.end(), [](EvalKind k) {
                         return k == EvalKind::KK || k == EvalKind::WF ||
                                k == EvalKind::CWF;
                       });
  default:
    return false;
  }
}

Branch Branch::finite(std::vector<Fact> path) {
  if (path.size() < 2)
    throw ContractError("a finite branch has at least two elements");
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (path[i].is_logical())
      throw ContractError("logical fact '" + path[i].str() +
                          "' inside a branch");
  Branch b;
  b.prefix_ = std::move(path);
  return b;
}

Branch Branch::lasso(std::vector<Fact> prefix, std::vector<Fact> cycle) {
  if (cycle.empty())
    throw ContractError("the cycle of an infinite branch is empty");
  for (const auto *part : {&prefix, &cycle})
    for (const auto &x : *part)
      if (x.is_logical())
        throw ContractError("logical fact '" + x.str() +
                            "' inside an infinite branch");
  Branch b;
  b.prefix_ = std::move(prefix);
  b.cycle_ = std::move(cycle);
  return b;
}

Branch Branch::parse(std::string_view text) {
  std::vector<Fact> prefix;
  std::vector<Fact> cycle;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto arrow = text.find("->", pos);
    if (arrow == std::string_view::npos)
      arrow = text.size();
    std::string item(text.substr(pos, arrow - pos));
    auto open = item.find('(');
    if (open != std::string::npos) {
      auto close = item.find(")*");
      if (close == std::string::npos || close < open)
        throw ContractError("malformed cycle in branch '" + std::string(text) +
                            "'");
      cycle.push_back(Fact::parse(item.substr(open + 1, close - open - 1)));
    } else {
      if (!cycle.empty())
        throw ContractError("branch continues after its cycle");
      prefix.push_back(Fact::parse(item));
    }
    pos = arrow + 2;
  }
  if (cycle.empty())
    return finite(std::move(prefix));
  return lasso(std::move(prefix), std::move(cycle));
}

const Fact &Branch::first() const {
  return prefix_.empty() ? cycle_.front() : prefix_.front();
}

const Fact &Branch::at(std::size_t i) const {
  if (i < prefix_.size())
    return prefix_[i];
  if (cycle_.empty())
    throw ContractError("index past the end of a finite branch");
  return cycle_[(i - prefix_.size()) % cycle_.size()];
}

std::string Branch::str() const {
  std::ostringstream out;
  bool first = true;
  for (const auto &x : prefix_) {
    out << (first ? "" : " -> ") << x.str();
    first = false;
  }
  for (const auto &x : cycle_) {
    out << (first ? "" : " -> ") << '(' << x.str() << ")*";
    first = false;
  }
  return out.str();
}

namespace {

Fact infinite_value(EvalKind kind, const std::vector<Fact> &cycle) {
  bool pos = false;
  bool neg = false;
  for (const auto &x : cycle)
    (default_sign(x) == Sign::Plus ? pos : neg) = true;
  Fact t = Fact::logical(Truth::True);
  Fact f = Fact::logical(Truth::False);
  Fact u = Fact::logical(Truth::Unknown);
  switch (kind) {
  case EvalKind::KK:
    return u;
  case EvalKind::WF:
    return pos && neg ? u : neg ? t : f;
  case EvalKind::CWF:
    return pos && neg ? u : pos ? t : f;
  default:
    throw ContractError("no tail value for " + eval_name(kind));
  }
}

Fact evaluate_plain(EvalKind kind, const Branch &b, Sign root_sign) {
  switch (kind) {
  case EvalKind::SP:
    return b.at(1);
  case EvalKind::KK:
  case EvalKind::WF:
  case EvalKind::CWF:
    if (b.is_finite())
      return b.path().back();
    return infinite_value(kind, b.cycle());
  case EvalKind::ST: {
    const auto &prefix = b.prefix();
    std::size_t scan = b.is_finite() ? prefix.size() - 1 : prefix.size();
    for (std::size_t i = 0; i < scan; ++i)
      if (default_sign(prefix[i]) != root_sign)
        return prefix[i];
    if (b.is_finite())
      return prefix.back();
    for (const auto &x : b.cycle())
      if (default_sign(x) != root_sign)
        return x;
    return infinite_value(EvalKind::WF, b.cycle());
  }
  case EvalKind::MERGE:
    break;
  }
  throw ContractError("merge evaluation reached the plain evaluator");
}

} // namespace

Fact evaluate_branch(const BranchEvaluation &be, const Branch &b,
                     std::optional<Sign> root_sign) {
  if (be.kind() != EvalKind::MERGE) {
    Sign s = root_sign ? *root_sign : default_sign(b.first());
    return evaluate_plain(be.kind(), b, s);
  }
  if (b.is_finite())
    return b.path().back();
  const LocalityContext &ctx = *be.context();
  auto node_of = [&](const Fact &x) {
    auto it = ctx.system_of.find(x);
    if (it == ctx.system_of.end())
      throw ContractError("fact '" + x.str() +
                          "' on an infinite branch is not defined");
    return it->second;
  };
  for (const auto &x : b.prefix())
    (void)node_of(x);
  int top = -1;
  for (const auto &x : b.cycle()) {
    int n = node_of(x);
    if (top < 0 || ctx.depth(n) < ctx.depth(top))
      top = n;
  }
  for (const auto &x : b.cycle())
    if (!ctx.is_ancestor_or_self(top, node_of(x)))
      throw ContractError("cycle of '" + b.str() +
                          "' has no unique highest system");
  std::set<Fact> keep;
  for (const auto &[x, n] : ctx.system_of)
    if (n == top)
      keep.insert(x);
  Branch projected = project_branch(b, keep);
  EvalKind local = ctx.evaluation_of.at(top);
  if (local == EvalKind::MERGE)
    throw ContractError("nested merge evaluation");
  return evaluate_plain(local, projected, default_sign(projected.first()));
}

Branch project_branch(const Branch &b, const std::set<Fact> &keep) {
  std::vector<Fact> prefix;
  std::vector<Fact> cycle;
  for (const auto &x : b.prefix())
    if (keep.count(x))
      prefix.push_back(x);
  for (const auto &x : b.cycle())
    if (keep.count(x))
      cycle.push_back(x);
  if (b.is_finite())
    return Branch::finite(std::move(prefix));
  if (cycle.empty())
    throw ContractError("projection removes every element of the cycle");
  return Branch::lasso(std::move(prefix), std::move(cycle));
}

} // namespace njust
