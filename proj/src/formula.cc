#include "bplan/formula.h"

#include <algorithm>
#include <map>

#include "bplan/error.h"

namespace bplan {

using K = Formula::Kind;

const char* kind_name(K k) {
  switch (k) {
    case K::kLiteral: return "literal";
    case K::kAnd: return "and";
    case K::kOr: return "or";
    case K::kNegation: return "negation";
    case K::kForall: return "forall";
    case K::kExists: return "exists";
    case K::kGoal: return "goal";
    case K::kUntil: return "until";
    case K::kAlways: return "always";
    case K::kEventually: return "eventually";
    case K::kNext: return "next";
  }
  return "?";
}

Formula::Formula() : Formula(literal(Term::constant("true"))) {}

Formula Formula::build(Node n) {
  bool temporal_op = n.kind == K::kUntil || n.kind == K::kAlways || n.kind == K::kEventually ||
                     n.kind == K::kNext;
  n.temporal = temporal_op;
  n.goal = n.kind == K::kGoal;
  n.quant = n.kind == K::kForall || n.kind == K::kExists;
  n.depth = 0;
  for (const auto& c : n.kids) {
    n.temporal = n.temporal || c.is_temporal();
    n.goal = n.goal || c.has_goal();
    n.quant = n.quant || c.has_quantifier();
    n.depth = std::max(n.depth, c.depth() + 1);
    for (const auto& v : c.free_vars())
      if (v != n.var && std::find(n.free.begin(), n.free.end(), v) == n.free.end())
        n.free.push_back(v);
  }
  if (n.kind == K::kLiteral) n.atom.collect_variables(n.free);

  switch (n.kind) {
    case K::kLiteral:
      n.name = n.atom.str();
      break;
    case K::kForall:
    case K::kExists: {
      n.name = std::string(kind_name(n.kind)) + "(" + n.var + ",set(";
      for (size_t i = 0; i < n.domain.size(); ++i) n.name += (i ? "," : "") + n.domain[i].str();
      n.name += ")," + n.kids[0].name() + ")";
      break;
    }
    default:
      n.name = std::string(kind_name(n.kind)) + "(";
      for (size_t i = 0; i < n.kids.size(); ++i) n.name += (i ? "," : "") + n.kids[i].name();
      n.name += ")";
  }
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::literal(const Term& t) {
  Node n;
  n.kind = K::kLiteral;
  n.atom = t;
  return build(std::move(n));
}

Formula Formula::unary(Kind k, Formula a) {
  if (k != K::kNegation && k != K::kGoal && k != K::kAlways && k != K::kEventually &&
      k != K::kNext)
    throw InputError(std::string("not a unary operator: ") + kind_name(k));
  if (k == K::kGoal && a.has_goal()) throw InputError("goal cannot be nested inside goal");
  Node n;
  n.kind = k;
  n.kids = {std::move(a)};
  return build(std::move(n));
}

Formula Formula::binary(Kind k, Formula a, Formula b) {
  if (k != K::kAnd && k != K::kOr && k != K::kUntil)
    throw InputError(std::string("not a binary operator: ") + kind_name(k));
  Node n;
  n.kind = k;
  n.kids = {std::move(a), std::move(b)};
  return build(std::move(n));
}

Formula Formula::quantifier(Kind k, std::string var, std::vector<Term> domain, Formula body) {
  if (k != K::kForall && k != K::kExists) throw InputError("not a quantifier");
  Node n;
  n.kind = k;
  n.var = std::move(var);
  n.domain = std::move(domain);
  n.kids = {std::move(body)};
  return build(std::move(n));
}

Formula Formula::implies(Formula a, Formula b) {
  return binary(K::kOr, unary(K::kNegation, std::move(a)), std::move(b));
}

Formula Formula::substitute(const Subst& s) const {
  if (is_closed()) return *this;
  Node n = *n_;
  if (kind() == K::kLiteral) {
    n.atom = atom().substitute(s);
  } else if (kind() == K::kForall || kind() == K::kExists) {
    Subst inner = s;
    inner.erase(var());
    n.kids = {child(0).substitute(inner)};
  } else {
    for (auto& c : n.kids) c = c.substitute(s);
  }
  n.free.clear();
  return build(std::move(n));
}

namespace {

Formula expand(const Formula& f) {
  if (!f.has_quantifier()) return f;
  if (f.kind() == K::kForall || f.kind() == K::kExists) {
    if (f.domain().empty())
      throw InputError("quantifier over an empty constant set: " + f.name());
    K op = f.kind() == K::kForall ? K::kAnd : K::kOr;
    std::vector<Formula> parts;
    for (const auto& c : f.domain()) parts.push_back(expand(f.child(0).substitute({{f.var(), c}})));
    Formula acc = parts.back();
    for (size_t i = parts.size() - 1; i-- > 0;) acc = Formula::binary(op, parts[i], acc);
    return acc;
  }
  if (f.num_children() == 1) return Formula::unary(f.kind(), expand(f.child(0)));
  return Formula::binary(f.kind(), expand(f.child(0)), expand(f.child(1)));
}

}  // namespace

Formula ground_quantifiers(const Formula& f) {
  if (!f.is_closed()) throw InputError("formula has free variables: " + f.name());
  return expand(f);
}

bool eval_state(const Signature& sig, const Formula& f, const State& s) {
  switch (f.kind()) {
    case K::kLiteral:
      return s.contains(resolve_literal(sig, f.atom()));
    case K::kAnd:
      return eval_state(sig, f.child(0), s) && eval_state(sig, f.child(1), s);
    case K::kOr:
      return eval_state(sig, f.child(0), s) || eval_state(sig, f.child(1), s);
    case K::kNegation:
      return !eval_state(sig, f.child(0), s);
    case K::kForall:
    case K::kExists:
      return eval_state(sig, ground_quantifiers(f), s);
    default:
      throw InputError("not a fluent formula: " + f.name());
  }
}

namespace {

struct SatEval {
  const Signature& sig;
  const std::vector<State>& seq;
  const std::optional<LiteralSet>& goal;
  size_t last;
  std::map<std::pair<const void*, size_t>, bool> memo;

  bool at(const Formula& f, size_t t) {
    t = std::min(t, last);
    auto key = std::make_pair(f.id(), t);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool v = compute(f, t);
    memo[key] = v;
    return v;
  }

  bool compute(const Formula& f, size_t t) {
    switch (f.kind()) {
      case K::kLiteral:
        return seq[t].contains(resolve_literal(sig, f.atom()));
      case K::kAnd:
        return at(f.child(0), t) && at(f.child(1), t);
      case K::kOr:
        return at(f.child(0), t) || at(f.child(1), t);
      case K::kNegation:
        return !at(f.child(0), t);
      case K::kForall:
      case K::kExists:
        return at(ground_quantifiers(f.substitute({})), t);
      case K::kGoal: {
        if (!goal) throw InputError("goal-dependent formula evaluated without a goal set");
        const Formula& g = f.child(0);
        if (g.kind() != K::kLiteral)
          throw InputError("goal(...) is only supported on literals: " + f.name());
        return goal->contains(resolve_literal(sig, g.atom()));
      }
      case K::kNext:
        return at(f.child(0), t + 1);
      case K::kAlways:
        for (size_t u = t; u <= last; ++u)
          if (!at(f.child(0), u)) return false;
        return true;
      case K::kEventually:
        for (size_t u = t; u <= last; ++u)
          if (at(f.child(0), u)) return true;
        return false;
      case K::kUntil:
        for (size_t u = t; u <= last; ++u) {
          if (at(f.child(1), u)) return true;
          if (!at(f.child(0), u)) return false;
        }
        return false;
    }
    return false;
  }
};

}  // namespace

bool sat(const Signature& sig, const std::vector<State>& seq, const Formula& f,
         const std::optional<LiteralSet>& goal, size_t t) {
  if (seq.empty()) throw InputError("sat needs a non-empty state sequence");
  if (f.has_goal() && !goal) throw InputError("goal-dependent formula needs a goal set");
  SatEval ev{sig, seq, goal, seq.size() - 1, {}};
  return ev.at(f, t);
}

bool FormulaTable::contains(const std::string& name) const {
  return std::binary_search(seen_.begin(), seen_.end(), name);
}

void FormulaTable::add(const Formula& f) {
  if (f.has_quantifier()) throw InputError("encode_formula needs a quantifier-free formula");
  if (f.kind() == K::kLiteral || contains(f.name())) return;
  Node node{f.name(), f.kind(), {}};
  if (f.kind() != K::kGoal) {
    for (size_t i = 0; i < f.num_children(); ++i) {
      add(f.child(i));
      node.kids.push_back(f.child(i).name());
    }
  } else {
    node.kids.push_back(f.child(0).name());
  }
  seen_.insert(std::lower_bound(seen_.begin(), seen_.end(), f.name()), f.name());
  nodes.push_back(std::move(node));
}

std::vector<std::string> FormulaTable::facts() const {
  std::vector<std::string> out;
  for (const auto& n : nodes) {
    out.push_back("formula(" + n.name + ")");
    if (n.kind == K::kGoal) continue;
    std::string f = std::string(kind_name(n.kind)) + "(" + n.name;
    for (const auto& k : n.kids) f += "," + k;
    out.push_back(f + ")");
  }
  return out;
}

FormulaTable encode_formula(const Formula& f) {
  FormulaTable t;
  t.add(f);
  return t;
}

}  // namespace bplan
