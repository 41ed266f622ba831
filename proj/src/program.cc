#include "bplan/program.h"

#include <algorithm>
#include <deque>
#include <functional>

#include "bplan/error.h"

namespace bplan {

using CK = ComplexAction::Kind;

namespace {

Formula normalize_formula(const Formula& f) {
  return f.is_closed() && f.has_quantifier() ? ground_quantifiers(f) : f;
}

void add_free(std::vector<std::string>& out, const std::vector<std::string>& vs,
              const std::string& bound = "") {
  for (const auto& v : vs)
    if (v != bound && std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
}

std::vector<std::string> term_vars(const Term& t) {
  std::vector<std::string> v;
  t.collect_variables(v);
  return v;
}

}  // namespace

const char* constraint_kind_name(HtnConstraint::Kind k) {
  switch (k) {
    case HtnConstraint::Kind::kOrder: return "order";
    case HtnConstraint::Kind::kPrecondition: return "precondition";
    case HtnConstraint::Kind::kPostcondition: return "postcondition";
    case HtnConstraint::Kind::kMaintain: return "maintain";
  }
  return "?";
}

std::string HtnNode::name() const {
  if (label) return label->str();
  std::string s = "htn(tasks(";
  for (size_t i = 0; i < tasks.size(); ++i) s += (i ? "," : "") + tasks[i].name();
  s += "),constraints(";
  for (size_t i = 0; i < constraints.size(); ++i) {
    const auto& c = constraints[i];
    s += (i ? "," : "") + std::string(constraint_kind_name(c.kind)) + "(" + c.label.str();
    switch (c.kind) {
      case HtnConstraint::Kind::kOrder:
        s += "," + c.first.str() + "," + c.second.str();
        break;
      case HtnConstraint::Kind::kPrecondition:
        s += "," + c.formula.name() + "," + c.first.str();
        break;
      case HtnConstraint::Kind::kPostcondition:
        s += "," + c.first.str() + "," + c.formula.name();
        break;
      case HtnConstraint::Kind::kMaintain:
        s += "," + c.first.str() + "," + c.formula.name() + "," + c.second.str();
        break;
    }
    s += ")";
  }
  return s + "))";
}

int HtnNode::task_index(const Term& ref) const {
  for (size_t i = 0; i < tasks.size(); ++i)
    if (tasks[i].name() == ref.str()) return static_cast<int>(i);
  return -1;
}

ComplexAction::ComplexAction() : ComplexAction(null()) {}

ComplexAction ComplexAction::build(Node n) {
  switch (n.kind) {
    case CK::kAction:
    case CK::kCall:
    case CK::kBare:
      n.name = n.term.str();
      add_free(n.free, term_vars(n.term));
      break;
    case CK::kTest:
      n.formula = normalize_formula(n.formula);
      n.name = n.formula.name();
      add_free(n.free, n.formula.free_vars());
      break;
    case CK::kNull:
      n.name = "null";
      break;
    case CK::kSeq:
      n.name = "seq(" + n.kids[0].name() + "," + n.kids[1].name() + ")";
      break;
    case CK::kChoice:
      n.name = "alt(";
      for (size_t i = 0; i < n.kids.size(); ++i) n.name += (i ? "," : "") + n.kids[i].name();
      n.name += ")";
      break;
    case CK::kIf:
      n.formula = normalize_formula(n.formula);
      n.name = "ite(" + n.formula.name() + "," + n.kids[0].name() + "," + n.kids[1].name() + ")";
      add_free(n.free, n.formula.free_vars());
      break;
    case CK::kWhile:
      n.formula = normalize_formula(n.formula);
      n.name = "loop(" + n.formula.name() + "," + n.kids[0].name() + ")";
      add_free(n.free, n.formula.free_vars());
      break;
    case CK::kPick:
      n.name = "pick(" + n.var + ",set(";
      for (size_t i = 0; i < n.domain.size(); ++i) n.name += (i ? "," : "") + n.domain[i].str();
      n.name += ")," + n.kids[0].name() + ")";
      break;
    case CK::kHtn: {
      n.name = n.htn->name();
      const HtnNode& h = *n.htn;
      if (h.label) add_free(n.free, term_vars(*h.label));
      for (const auto& t : h.tasks) {
        add_free(n.free, t.body.free_vars());
        if (t.label) add_free(n.free, term_vars(*t.label));
      }
      for (const auto& c : h.constraints) {
        add_free(n.free, term_vars(c.label));
        add_free(n.free, term_vars(c.first));
        add_free(n.free, term_vars(c.second));
        add_free(n.free, c.formula.free_vars());
      }
      break;
    }
  }
  for (const auto& k : n.kids) add_free(n.free, k.free_vars(), n.kind == CK::kPick ? n.var : "");
  return ComplexAction(std::make_shared<const Node>(std::move(n)));
}

ComplexAction ComplexAction::action(Term a) {
  Node n;
  n.kind = CK::kAction;
  n.term = std::move(a);
  return build(std::move(n));
}

ComplexAction ComplexAction::test(Formula f) {
  Node n;
  n.kind = CK::kTest;
  n.formula = std::move(f);
  return build(std::move(n));
}

ComplexAction ComplexAction::seq(ComplexAction a, ComplexAction b) {
  Node n;
  n.kind = CK::kSeq;
  n.kids = {std::move(a), std::move(b)};
  return build(std::move(n));
}

ComplexAction ComplexAction::choice(std::vector<ComplexAction> alts) {
  if (alts.size() < 2) throw InputError("a choice needs at least two alternatives");
  Node n;
  n.kind = CK::kChoice;
  n.kids = std::move(alts);
  return build(std::move(n));
}

ComplexAction ComplexAction::if_then_else(Formula c, ComplexAction a, ComplexAction b) {
  Node n;
  n.kind = CK::kIf;
  n.formula = std::move(c);
  n.kids = {std::move(a), std::move(b)};
  return build(std::move(n));
}

ComplexAction ComplexAction::while_do(Formula c, ComplexAction body) {
  Node n;
  n.kind = CK::kWhile;
  n.formula = std::move(c);
  n.kids = {std::move(body)};
  return build(std::move(n));
}

ComplexAction ComplexAction::pick(std::string var, std::vector<Term> domain, ComplexAction body) {
  Node n;
  n.kind = CK::kPick;
  n.var = std::move(var);
  n.domain = std::move(domain);
  n.kids = {std::move(body)};
  return build(std::move(n));
}

ComplexAction ComplexAction::call(Term p) {
  Node n;
  n.kind = CK::kCall;
  n.term = std::move(p);
  return build(std::move(n));
}

ComplexAction ComplexAction::null() {
  Node n;
  n.kind = CK::kNull;
  return build(std::move(n));
}

ComplexAction ComplexAction::htn(HtnNode node) {
  Node n;
  n.kind = CK::kHtn;
  n.htn = std::make_shared<const HtnNode>(std::move(node));
  return build(std::move(n));
}

ComplexAction ComplexAction::bare(Term t) {
  Node n;
  n.kind = CK::kBare;
  n.term = std::move(t);
  return build(std::move(n));
}

bool ComplexAction::is_leaf() const {
  switch (kind()) {
    case CK::kAction:
    case CK::kTest:
    case CK::kCall:
    case CK::kNull:
    case CK::kBare:
      return true;
    default:
      return false;
  }
}

ComplexAction ComplexAction::substitute(const Subst& s) const {
  if (is_ground() || s.empty()) return *this;
  Node n = *n_;
  n.free.clear();
  switch (kind()) {
    case CK::kAction:
    case CK::kCall:
    case CK::kBare:
      n.term = term().substitute(s);
      break;
    case CK::kTest:
    case CK::kIf:
    case CK::kWhile:
      n.formula = formula().substitute(s);
      for (auto& k : n.kids) k = k.substitute(s);
      break;
    case CK::kPick: {
      Subst inner = s;
      inner.erase(var());
      n.kids = {child(0).substitute(inner)};
      break;
    }
    case CK::kHtn: {
      HtnNode h = htn_node();
      if (h.label) h.label = h.label->substitute(s);
      for (auto& t : h.tasks) {
        if (t.label) t.label = t.label->substitute(s);
        t.body = t.body.substitute(s);
      }
      for (auto& c : h.constraints) {
        c.label = c.label.substitute(s);
        c.first = c.first.substitute(s);
        c.second = c.second.substitute(s);
        c.formula = normalize_formula(c.formula.substitute(s));
      }
      n.htn = std::make_shared<const HtnNode>(std::move(h));
      break;
    }
    default:
      for (auto& k : n.kids) k = k.substitute(s);
  }
  return build(std::move(n));
}

ComplexAction ComplexAction::pick_instance(const Term& c) const {
  return child(0).substitute({{var(), c}});
}

void ProcedureTable::add(Procedure p) {
  auto key = std::make_pair(p.name, p.params.size());
  if (procs_.count(key))
    throw InputError("procedure " + p.name + "/" + std::to_string(p.params.size()) +
                     " defined twice");
  procs_.emplace(key, std::move(p));
}

const Procedure* ProcedureTable::find(const std::string& name, size_t arity) const {
  auto it = procs_.find({name, arity});
  return it == procs_.end() ? nullptr : &it->second;
}

ComplexAction ProcedureTable::instantiate(const Term& call) const {
  const Procedure* p = find(call.functor(), call.arity());
  if (!p) throw InputError("unknown procedure: " + call.str());
  if (!call.is_ground()) throw InputError("procedure call is not ground: " + call.str());
  Subst s;
  for (size_t i = 0; i < p->params.size(); ++i) s[p->params[i]] = call.args()[i];
  return p->body.substitute(s);
}

ComplexAction ground_complex(const ComplexAction& d, const Subst& s) {
  ComplexAction g = d.substitute(s);
  if (!g.is_ground()) throw InputError("unbound variable " + g.free_vars()[0] + " in " + g.name());
  return g;
}

namespace {

void prim_rec(const ComplexAction& d, const ProcedureTable& procs, std::set<std::string>& out,
              std::set<std::string>& expanded) {
  switch (d.kind()) {
    case CK::kAction:
    case CK::kBare:
    case CK::kTest:
      out.insert(d.name());
      break;
    case CK::kNull:
      break;
    case CK::kIf:
    case CK::kWhile:
      out.insert(d.formula().name());
      for (const auto& k : d.children()) prim_rec(k, procs, out, expanded);
      break;
    case CK::kSeq:
    case CK::kChoice:
      for (const auto& k : d.children()) prim_rec(k, procs, out, expanded);
      break;
    case CK::kPick:
      for (const auto& c : d.domain()) prim_rec(d.pick_instance(c), procs, out, expanded);
      break;
    case CK::kCall:
      out.insert(d.name());
      if (expanded.insert(d.name()).second) prim_rec(procs.instantiate(d.term()), procs, out, expanded);
      break;
    case CK::kHtn:
      for (const auto& t : d.htn_node().tasks) prim_rec(t.body, procs, out, expanded);
      for (const auto& c : d.htn_node().constraints)
        if (c.kind != HtnConstraint::Kind::kOrder) out.insert(c.formula.name());
      break;
  }
}

void for_each_tuple(const std::vector<std::vector<Term>>& domains,
                    const std::function<void(const std::vector<Term>&)>& fn) {
  std::vector<Term> cur;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == domains.size()) {
      fn(cur);
      return;
    }
    for (const auto& c : domains[i]) {
      cur.push_back(c);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

}  // namespace

std::set<std::string> prim(const ComplexAction& d, const ProcedureTable& procs) {
  std::set<std::string> out, expanded;
  prim_rec(d, procs, out, expanded);
  return out;
}

CoherenceReport check_coherent(const ProcedureTable& procs) {
  CoherenceReport rep;
  for (const auto& [key, p] : procs.all()) {
    if (p.body.kind() == CK::kCall)
      rep.problems.push_back("procedure " + p.name + " is a nested procedure (body is the call " +
                             p.body.name() + ")");
  }
  if (!rep.ok()) return rep;
  for (const auto& [key, p] : procs.all()) {
    bool bad = false;
    for_each_tuple(p.domains, [&](const std::vector<Term>& args) {
      if (bad) return;
      Term call = Term::compound(p.name, args);
      std::set<std::string> deps;
      try {
        deps = prim(procs.instantiate(call), procs);
      } catch (const InputError& e) {
        rep.problems.push_back("procedure instance " + call.str() + ": " + e.what());
        bad = true;
        return;
      }
      if (deps.count(call.str())) {
        std::string list;
        for (const auto& x : deps) list += (list.empty() ? "" : ", ") + x;
        rep.problems.push_back("procedure " + p.name + " is not well-defined: " + call.str() +
                               " is in prim(" + call.str() + ") = {" + list + "}");
        bad = true;
      }
    });
  }
  return rep;
}

namespace {

void check_formula(const Signature& sig, const Formula& f, const std::string& where) {
  if (!f.is_closed()) throw InputError("free variable in formula " + f.name() + " (" + where + ")");
  if (f.is_temporal() || f.has_goal())
    throw InputError("temporal operators are not allowed in program tests: " + f.name());
  std::function<void(const Formula&)> rec = [&](const Formula& g) {
    if (g.kind() == Formula::Kind::kLiteral) {
      resolve_literal(sig, g.atom());
      return;
    }
    for (size_t i = 0; i < g.num_children(); ++i) rec(g.child(i));
  };
  rec(f);
}

void check_htn_order_acyclic(const HtnNode& h) {
  size_t k = h.tasks.size();
  std::vector<std::vector<int>> succ(k);
  for (const auto& c : h.constraints)
    if (c.kind == HtnConstraint::Kind::kOrder)
      succ[h.task_index(c.first)].push_back(h.task_index(c.second));
  std::vector<int> color(k, 0);
  std::function<bool(int)> cyc = [&](int v) {
    color[v] = 1;
    for (int w : succ[v])
      if (color[w] == 1 || (color[w] == 0 && cyc(w))) return true;
    color[v] = 2;
    return false;
  };
  for (size_t v = 0; v < k; ++v)
    if (color[v] == 0 && cyc(static_cast<int>(v)))
      throw InputError("ordering constraints of " + h.name() + " are cyclic");
}

void validate_node(const Signature& sig, const ProcedureTable& procs, const ComplexAction& d,
                   std::set<std::string>& seen) {
  if (!seen.insert(d.name()).second) return;
  switch (d.kind()) {
    case CK::kBare:
      throw InputError("unresolved name in program: " + d.name());
    case CK::kAction:
      if (sig.action_index(d.term()) < 0) throw InputError("unknown action in program: " + d.name());
      break;
    case CK::kTest:
    case CK::kIf:
    case CK::kWhile:
      check_formula(sig, d.formula(), d.name());
      for (const auto& k : d.children()) validate_node(sig, procs, k, seen);
      break;
    case CK::kNull:
      break;
    case CK::kSeq:
    case CK::kChoice:
      for (const auto& k : d.children()) validate_node(sig, procs, k, seen);
      break;
    case CK::kPick:
      if (d.domain().empty()) throw InputError("pick over an empty constant set: " + d.name());
      for (const auto& c : d.domain()) validate_node(sig, procs, d.pick_instance(c), seen);
      break;
    case CK::kCall:
      validate_node(sig, procs, procs.instantiate(d.term()), seen);
      break;
    case CK::kHtn: {
      const HtnNode& h = d.htn_node();
      if (h.tasks.empty()) throw InputError("HTN node without tasks: " + h.name());
      std::set<std::string> names, labels;
      for (const auto& t : h.tasks) {
        if (!names.insert(t.name()).second)
          throw InputError("duplicate task name " + t.name() + " in " + h.name() +
                           "; give the tasks distinct labels");
        validate_node(sig, procs, t.body, seen);
      }
      for (const auto& c : h.constraints) {
        if (!labels.insert(c.label.str()).second)
          throw InputError("duplicate constraint label " + c.label.str() + " in " + h.name());
        if (h.task_index(c.first) < 0)
          throw InputError("constraint " + c.label.str() + " names unknown task " + c.first.str());
        bool two = c.kind == HtnConstraint::Kind::kOrder || c.kind == HtnConstraint::Kind::kMaintain;
        if (two && h.task_index(c.second) < 0)
          throw InputError("constraint " + c.label.str() + " names unknown task " + c.second.str());
        if (two && c.first == c.second)
          throw InputError("constraint " + c.label.str() + " relates a task to itself");
        if (c.kind != HtnConstraint::Kind::kOrder) check_formula(sig, c.formula, c.label.str());
      }
      check_htn_order_acyclic(h);
      break;
    }
  }
}

}  // namespace

void validate_program(const Signature& sig, const GeneralProgram& p) {
  if (!p.main.is_ground()) throw InputError("main program is not ground: " + p.main.name());
  std::set<std::string> seen;
  validate_node(sig, p.procs, p.main, seen);
}

std::vector<Term> reachable_calls(const GeneralProgram& p) {
  std::map<std::string, Term> calls;
  std::set<std::string> seen;
  std::function<void(const ComplexAction&)> rec = [&](const ComplexAction& d) {
    if (!seen.insert(d.name()).second) return;
    switch (d.kind()) {
      case CK::kCall:
        calls.emplace(d.name(), d.term());
        rec(p.procs.instantiate(d.term()));
        break;
      case CK::kPick:
        for (const auto& c : d.domain()) rec(d.pick_instance(c));
        break;
      case CK::kHtn:
        for (const auto& t : d.htn_node().tasks) rec(t.body);
        break;
      default:
        for (const auto& k : d.children()) rec(k);
    }
  };
  rec(p.main);
  std::vector<Term> out;
  for (auto& [name, t] : calls) out.push_back(t);
  return out;
}

TraceChecker::TraceChecker(const DomainDescription& d, const ProcedureTable& procs,
                           const Trajectory& t)
    : d_(d), procs_(procs), t_(t) {}

bool TraceChecker::holds(const Formula& f, size_t i) {
  auto key = std::make_pair(f.id(), i);
  auto it = formula_memo_.find(key);
  if (it != formula_memo_.end()) return it->second;
  bool v = eval_state(d_.sig(), f, t_.states.at(i));
  formula_memo_[key] = v;
  return v;
}

const ComplexAction& TraceChecker::instance(const ComplexAction& node, const Term* c) {
  std::string key = node.name();
  if (c) key += "#" + c->str();
  auto it = instances_.find(key);
  if (it != instances_.end()) return it->second;
  ComplexAction inst = c ? node.pick_instance(*c) : procs_.instantiate(node.term());
  return instances_.emplace(key, std::move(inst)).first->second;
}

bool TraceChecker::trace(const ComplexAction& node, size_t i, size_t j) {
  if (i > j || j >= t_.states.size()) return false;
  auto key = std::make_tuple(node.id(), i, j);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second == 1;
  memo_[key] = -1;
  bool v = compute(node, i, j);
  memo_[key] = v ? 1 : 0;
  return v;
}

bool TraceChecker::compute(const ComplexAction& node, size_t i, size_t j) {
  switch (node.kind()) {
    case CK::kAction:
      return j == i + 1 && t_.actions[i] == d_.sig().action_index(node.term());
    case CK::kTest:
      return i == j && holds(node.formula(), i);
    case CK::kNull:
      return i == j;
    case CK::kSeq:
      for (size_t k = i; k <= j; ++k)
        if (trace(node.child(0), i, k) && trace(node.child(1), k, j)) return true;
      return false;
    case CK::kChoice:
      for (const auto& alt : node.children())
        if (trace(alt, i, j)) return true;
      return false;
    case CK::kIf:
      return holds(node.formula(), i) ? trace(node.child(0), i, j) : trace(node.child(1), i, j);
    case CK::kWhile:
      if (!holds(node.formula(), i)) return i == j;
      for (size_t k = i + 1; k <= j; ++k)
        if (trace(node.child(0), i, k) && trace(node, k, j)) return true;
      return false;
    case CK::kPick:
      for (const auto& c : node.domain())
        if (trace(instance(node, &c), i, j)) return true;
      return false;
    case CK::kCall:
      return trace(instance(node, nullptr), i, j);
    case CK::kHtn:
      return htn_trace(node.htn_node(), i, j, -1, nullptr);
    case CK::kBare:
      throw InputError("unresolved name in program: " + node.name());
  }
  return false;
}

bool TraceChecker::htn_trace(const HtnNode& h, size_t i, size_t j, int skip,
                             std::vector<HtnSegment>* witness) {
  using HK = HtnConstraint::Kind;
  const size_t k = h.tasks.size();
  std::vector<uint32_t> preds(k, 0);
  std::vector<std::vector<const Formula*>> pre(k), post(k);
  struct Maint {
    int a, b;
    const Formula* f;
  };
  std::vector<Maint> maint;
  for (size_t ci = 0; ci < h.constraints.size(); ++ci) {
    if (static_cast<int>(ci) == skip) continue;
    const auto& c = h.constraints[ci];
    int a = h.task_index(c.first);
    switch (c.kind) {
      case HK::kOrder:
        preds[h.task_index(c.second)] |= 1u << a;
        break;
      case HK::kPrecondition:
        pre[a].push_back(&c.formula);
        break;
      case HK::kPostcondition:
        post[a].push_back(&c.formula);
        break;
      case HK::kMaintain:
        maint.push_back({a, h.task_index(c.second), &c.formula});
        break;
    }
  }
  std::vector<HtnSegment> order;
  std::vector<size_t> b(k), e(k);
  const uint32_t all = (k >= 32) ? ~0u : ((1u << k) - 1);
  std::function<bool(size_t, uint32_t)> dfs = [&](size_t cur, uint32_t placed) -> bool {
    if (placed == all) {
      if (cur != j) return false;
      for (const auto& m : maint) {
        // phi holds from the end of the first task to the start of the second
        if (e[m.a] > b[m.b]) return false;
        for (size_t s = e[m.a]; s <= b[m.b]; ++s)
          if (!holds(*m.f, s)) return false;
      }
      if (witness) *witness = order;
      return true;
    }
    for (size_t t = 0; t < k; ++t) {
      if ((placed >> t) & 1 || (preds[t] & ~placed)) continue;
      bool ok = true;
      for (const auto* f : pre[t]) ok = ok && holds(*f, cur);
      if (!ok) continue;
      for (size_t end = cur; end <= j; ++end) {
        if (!trace(h.tasks[t].body, cur, end)) continue;
        bool pok = true;
        for (const auto* f : post[t]) pok = pok && holds(*f, end);
        if (!pok) continue;
        b[t] = cur;
        e[t] = end;
        order.push_back({static_cast<int>(t), cur, end});
        if (dfs(end, placed | (1u << t))) return true;
        order.pop_back();
      }
    }
    return false;
  };
  if (k > 31) throw CapExceeded("HTN nodes are limited to 31 tasks");
  return dfs(i, 0);
}

bool TraceChecker::may_extend(const ComplexAction& node, size_t i, size_t k) {
  if (i > k) return false;
  auto key = std::make_tuple(node.id(), i, k);
  auto it = ext_memo_.find(key);
  if (it != ext_memo_.end()) return it->second == 1;
  ext_memo_[key] = -1;
  bool v = false;
  switch (node.kind()) {
    case CK::kAction:
      v = i == k;
      break;
    case CK::kTest:
    case CK::kNull:
      v = false;
      break;
    case CK::kSeq:
      v = may_extend(node.child(0), i, k);
      for (size_t m = i; m <= k && !v; ++m)
        v = trace(node.child(0), i, m) && may_extend(node.child(1), m, k);
      break;
    case CK::kChoice:
      for (const auto& alt : node.children()) v = v || may_extend(alt, i, k);
      break;
    case CK::kIf:
      v = holds(node.formula(), i) ? may_extend(node.child(0), i, k)
                                   : may_extend(node.child(1), i, k);
      break;
    case CK::kWhile:
      if (holds(node.formula(), i)) {
        v = may_extend(node.child(0), i, k);
        for (size_t m = i + 1; m <= k && !v; ++m)
          v = trace(node.child(0), i, m) && may_extend(node, m, k);
      }
      break;
    case CK::kPick:
      for (const auto& c : node.domain()) v = v || may_extend(instance(node, &c), i, k);
      break;
    case CK::kCall:
      v = may_extend(instance(node, nullptr), i, k);
      break;
    case CK::kHtn:
    case CK::kBare:
      v = true;
      break;
  }
  ext_memo_[key] = v ? 1 : 0;
  return v;
}

TraceResult is_trace(const DomainDescription& d, const GeneralProgram& p, const Trajectory& t) {
  TraceChecker tc(d, p.procs, t);
  TraceResult r;
  size_t n = t.actions.size();
  if (p.main.kind() == CK::kHtn)
    r.ok = tc.htn_trace(p.main.htn_node(), 0, n, -1, &r.witness);
  else
    r.ok = tc.trace(p.main, 0, n);
  return r;
}

}  // namespace bplan
