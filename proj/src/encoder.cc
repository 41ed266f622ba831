#include "bplan/encoder.h"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <tuple>

#include "bplan/error.h"

namespace bplan {
namespace {

using K = Formula::Kind;
using CK = ComplexAction::Kind;
using HK = HtnConstraint::Kind;
using Strs = std::vector<std::string>;

std::string num(size_t t) { return std::to_string(t); }

std::string fn(const std::string& f, const Strs& args) {
  std::string s = f + "(";
  for (size_t i = 0; i < args.size(); ++i) s += (i ? "," : "") + args[i];
  return s + ")";
}

std::string hf(const std::string& n, size_t t) { return fn("hf", {n, num(t)}); }
std::string hf_during(const std::string& n, size_t a, size_t b) {
  return fn("hf_during", {n, num(a), num(b)});
}
std::string trans(const std::string& n, size_t a, size_t b) {
  return fn("trans", {n, num(a), num(b)});
}

// Literal and closed-ness are checked by the callers; quantifiers are
// expanded here so that names match between facts and rules.
Formula prepare(const Formula& f) { return f.has_quantifier() ? ground_quantifiers(f) : f; }

void collect_literals(const Formula& f, std::set<std::string>& out) {
  if (f.kind() == K::kLiteral) {
    out.insert(f.name());
    return;
  }
  if (f.kind() == K::kGoal) return;
  for (size_t i = 0; i < f.num_children(); ++i) collect_literals(f.child(i), out);
}

// hf rules for every node of the table plus the literal leaves.
class FormulaEmitter {
 public:
  FormulaEmitter(GroundProgram& g, size_t n, const EncodeOptions& opt) : g_(g), n_(n), opt_(opt) {}

  void add(const Formula& f) {
    table_.add(f);
    collect_literals(f, literals_);
    if (f.kind() == K::kLiteral) literals_.insert(f.name());
  }

  // goal: names of goal literals, or nullopt when goal(.) must not appear.
  void emit(const std::optional<std::set<std::string>>& goal) {
    for (const auto& l : literals_) {
      g_.add_fact(fn("formula", {l}), "formula_literal");
      for (size_t t = 0; t <= n_; ++t)
        g_.add_rule(hf(l, t), {fn("holds", {l, num(t)})}, {}, "hf_literal");
    }
    for (const auto& f : table_.facts()) g_.add_fact(f, "formula_table");
    std::set<std::string> during;
    for (const auto& node : table_.nodes) {
      const auto& nm = node.name;
      const auto& k = node.kids;
      for (size_t t = 0; t <= n_; ++t) {
        switch (node.kind) {
          case K::kAnd:
            g_.add_rule(hf(nm, t), {hf(k[0], t), hf(k[1], t)}, {}, "hf_and");
            break;
          case K::kOr:
            g_.add_rule(hf(nm, t), {hf(k[0], t)}, {}, "hf_or");
            g_.add_rule(hf(nm, t), {hf(k[1], t)}, {}, "hf_or");
            break;
          case K::kNegation:
            g_.add_rule(hf(nm, t), {}, {hf(k[0], t)}, "hf_negation");
            break;
          case K::kUntil:
            during.insert(k[0]);
            if (opt_.literal_rules) {
              for (size_t u = t; u <= n_; ++u)
                g_.add_rule(hf(nm, t), {hf_during(k[0], t, u), hf(k[1], u)}, {}, "hf_until");
            } else {
              g_.add_rule(hf(nm, t), {hf(k[1], t)}, {}, "hf_until");
              for (size_t u = t + 1; u <= n_; ++u)
                g_.add_rule(hf(nm, t), {hf_during(k[0], t, u - 1), hf(k[1], u)}, {}, "hf_until");
            }
            break;
          case K::kAlways:
            during.insert(k[0]);
            g_.add_rule(hf(nm, t), {hf_during(k[0], t, n_)}, {}, "hf_always");
            break;
          case K::kEventually:
            for (size_t u = t; u <= n_; ++u)
              g_.add_rule(hf(nm, t), {hf(k[0], u)}, {}, "hf_eventually");
            break;
          case K::kNext:
            if (t < n_)
              g_.add_rule(hf(nm, t), {hf(k[0], t + 1)}, {}, "hf_next");
            else if (!opt_.literal_rules)
              g_.add_rule(hf(nm, t), {hf(k[0], t)}, {}, "hf_next");
            break;
          case K::kGoal:
            if (!goal) throw InputError("goal(.) used without a goal: " + nm);
            if (goal->count(k[0])) g_.add_rule(hf(nm, t), {fn("time", {num(t)})}, {}, "hf_goal");
            break;
          default:
            throw InputError("cannot encode formula node " + nm);
        }
      }
    }
    for (const auto& d : during) {
      for (size_t t = 0; t <= n_; ++t) {
        g_.add_rule(hf_during(d, t, t), {hf(d, t)}, {}, "hf_during");
        for (size_t u = t + 1; u <= n_; ++u)
          g_.add_rule(hf_during(d, t, u), {hf(d, t), hf_during(d, t + 1, u)}, {}, "hf_during");
      }
    }
  }

 private:
  GroundProgram& g_;
  size_t n_;
  const EncodeOptions& opt_;
  FormulaTable table_;
  std::set<std::string> literals_;
};

void add_time(GroundProgram& g, size_t n) {
  for (size_t t = 0; t <= n; ++t) g.add_fact(fn("time", {num(t)}), "time");
}

void add_literal_decls(GroundProgram& g, const Signature& sig) {
  for (size_t f = 0; f < sig.num_fluents(); ++f) {
    Literal p{static_cast<int>(f), true};
    std::string pos = literal_name(sig, p), neg = literal_name(sig, p.complement());
    g.add_fact(fn("fluent", {pos}), "fluent");
    g.add_fact(fn("literal", {pos}), "literal_pos");
    g.add_fact(fn("literal", {neg}), "literal_neg");
    g.add_fact(fn("contrary", {pos, neg}), "contrary_pos");
    g.add_fact(fn("contrary", {neg, pos}), "contrary_neg");
  }
}

std::set<std::string> goal_names(const Signature& sig, const std::vector<Literal>& goal) {
  std::set<std::string> out;
  for (auto l : goal) out.insert(literal_name(sig, l));
  return out;
}

// Emits r(P) for every node reachable from main. Trans rules are emitted on
// demand, starting from trans(main,0,n): a node gets rules only for the
// spans some parent can ask about. Left-out spans carry no constraint of
// their own (an HTN span can always fall back to nok through not_used), so
// the answer sets are those of the full grounding restricted to the atoms
// that remain.
class ProgramEmitter {
 public:
  ProgramEmitter(GroundProgram& g, const Signature& sig, const ProcedureTable& procs, size_t n,
                 bool rules, bool allow_htn, const EncodeOptions& opt)
      : g_(g), sig_(sig), procs_(procs), n_(n), rules_(rules), allow_htn_(allow_htn), opt_(opt),
        formulas_(g, n, opt) {}

  std::string run(const ComplexAction& main) {
    std::string name = node(main);
    while (!pending_.empty()) {
      Term call = pending_.back();
      pending_.pop_back();
      named(procs_.instantiate(call), call.str());
    }
    if (rules_) {
      demand(name, 0, n_);
      while (!queue_.empty()) {
        auto [nm, a, b] = queue_.back();
        queue_.pop_back();
        span(nm, a, b);
      }
    }
    return name;
  }

  void emit_formulas() { formulas_.emit(std::nullopt); }

 private:
  struct HtnInfo {
    std::vector<std::string> tn;
    std::vector<ComplexAction> bodies;
    struct Order {
      int a, b;
    };
    std::vector<Order> orders;
    struct Cond {
      int task;
      std::string f;
    };
    std::vector<Cond> pre, post;
    struct Maint {
      int a, b;
      std::string f;
    };
    std::vector<Maint> maint;
  };

  // A composite node: its children by name and by structure (for fits).
  struct Def {
    CK kind = CK::kNull;
    bool wrapper = false;
    std::string f;
    std::vector<std::string> kids;
    std::vector<ComplexAction> kid_nodes;
    std::shared_ptr<HtnInfo> htn;
  };

  void fact(const std::string& f) { g_.add_fact(f, "program_table"); }

  void demand(const std::string& name, size_t a, size_t b) {
    if (defs_.count(name) && asked_.insert({name, a, b}).second) queue_.push_back({name, a, b});
  }

  // Encodes d under its own name; returns that name. Actions, tests and null
  // are cheap and get their rules for every time point right away.
  std::string node(const ComplexAction& d) {
    switch (d.kind()) {
      case CK::kAction:
        if (done_.insert(d.name()).second && rules_)
          for (size_t t = 0; t < n_; ++t)
            g_.add_rule(trans(d.name(), t, t + 1), {fn("occ", {d.name(), num(t)})}, {},
                        "trans_action");
        return d.name();
      case CK::kTest: {
        Formula f = prepare(d.formula());
        if (done_.insert(f.name()).second) {
          formulas_.add(f);
          if (rules_)
            for (size_t t = 0; t <= n_; ++t)
              g_.add_rule(trans(f.name(), t, t), {hf(f.name(), t)}, {}, "trans_formula");
        }
        return f.name();
      }
      case CK::kNull:
        if (done_.insert("null").second && rules_)
          for (size_t t = 0; t <= n_; ++t) g_.add_fact(trans("null", t, t), "trans_null");
        return "null";
      case CK::kCall:
        if (called_.insert(d.term().str()).second) pending_.push_back(d.term());
        return d.term().str();
      case CK::kBare:
        throw InputError("unresolved name in program: " + d.name());
      default:
        named(d, d.name());
        return d.name();
    }
  }

  // Fixed duration of a node, if any; only used to skip impossible spans.
  std::optional<size_t> length(const ComplexAction& d) {
    switch (d.kind()) {
      case CK::kAction: return 1;
      case CK::kTest:
      case CK::kNull: return 0;
      case CK::kSeq: {
        auto a = length(d.child(0)), b = length(d.child(1));
        if (a && b) return *a + *b;
        return std::nullopt;
      }
      default: return std::nullopt;
    }
  }

  bool fits(const ComplexAction& d, size_t a, size_t b) {
    auto l = length(d);
    return !l || b - a == *l;
  }

  // Registers d with the given name (procedure instance, labeled task or the
  // node's own name) and writes its facts.
  void named(const ComplexAction& d, const std::string& name) {
    if (!done_.insert(name).second) return;
    Def df;
    df.kind = d.kind();
    if (d.is_leaf()) {
      std::string leaf = node(d);
      if (leaf == name) return;
      fact(fn("choiceAction", {name}));
      fact(fn("in", {leaf, name}));
      df.wrapper = true;
      df.kids = {leaf};
      df.kid_nodes = {d};
      defs_[name] = std::move(df);
      return;
    }
    switch (d.kind()) {
      case CK::kSeq: {
        std::string p1 = node(d.child(0)), p2 = node(d.child(1));
        fact(fn("sequence", {name, p1, p2}));
        df.kids = {p1, p2};
        df.kid_nodes = {d.child(0), d.child(1)};
        break;
      }
      case CK::kChoice:
        fact(fn("choiceAction", {name}));
        for (const auto& alt : d.children()) {
          std::string p = node(alt);
          fact(fn("in", {p, name}));
          df.kids.push_back(p);
          df.kid_nodes.push_back(alt);
        }
        break;
      case CK::kIf: {
        Formula f = prepare(d.formula());
        formulas_.add(f);
        std::string p1 = node(d.child(0)), p2 = node(d.child(1));
        fact(fn("if", {name, f.name(), p1, p2}));
        df.f = f.name();
        df.kids = {p1, p2};
        df.kid_nodes = {d.child(0), d.child(1)};
        break;
      }
      case CK::kWhile: {
        Formula f = prepare(d.formula());
        formulas_.add(f);
        std::string p = node(d.child(0));
        fact(fn("while", {name, f.name(), p}));
        df.f = f.name();
        df.kids = {p};
        df.kid_nodes = {d.child(0)};
        break;
      }
      case CK::kPick:
        for (const auto& c : d.domain()) {
          ComplexAction inst = d.pick_instance(c);
          std::string p = node(inst);
          fact(fn("choiceArgs", {name, p}));
          df.kids.push_back(p);
          df.kid_nodes.push_back(inst);
        }
        break;
      case CK::kHtn:
        if (!allow_htn_) throw InputError("HTN node in a program encoded without HTN support: " + name);
        df.htn = htn(d.htn_node(), name);
        break;
      default:
        throw InputError("cannot encode program node " + name);
    }
    defs_[name] = std::move(df);
  }

  std::shared_ptr<HtnInfo> htn(const HtnNode& h, const std::string& name) {
    if (h.tasks.empty()) throw InputError("HTN " + name + " has no tasks");
    auto info = std::make_shared<HtnInfo>();
    std::string tasks = fn("tasks", {name}), cons = fn("constraints", {name});
    fact(fn("htn", {name, tasks, cons}));
    fact(fn("set", {tasks}));
    fact(fn("set", {cons}));
    for (const auto& t : h.tasks) {
      std::string s = t.label ? t.label->str() : t.body.name();
      if (t.label)
        named(t.body, s);
      else
        s = node(t.body);
      info->tn.push_back(s);
      info->bodies.push_back(t.body);
      fact(fn("in", {s, tasks}));
    }
    const auto& tn = info->tn;
    for (const auto& c : h.constraints) {
      std::string lbl = c.label.str();
      fact(fn("in", {lbl, cons}));
      int a = h.task_index(c.first);
      std::string ta = tn.at(a);
      switch (c.kind) {
        case HK::kOrder: {
          int b = h.task_index(c.second);
          fact(fn("order", {lbl, ta, tn.at(b)}));
          info->orders.push_back({a, b});
          break;
        }
        case HK::kPrecondition: {
          Formula f = prepare(c.formula);
          formulas_.add(f);
          fact(fn("precondition", {lbl, f.name(), ta}));
          info->pre.push_back({a, f.name()});
          break;
        }
        case HK::kPostcondition: {
          Formula f = prepare(c.formula);
          formulas_.add(f);
          fact(fn("postcondition", {lbl, f.name(), ta}));
          info->post.push_back({a, f.name()});
          break;
        }
        case HK::kMaintain: {
          Formula f = prepare(c.formula);
          formulas_.add(f);
          int b = h.task_index(c.second);
          fact(fn("maintain", {lbl, f.name(), ta, tn.at(b)}));
          info->maint.push_back({a, b, f.name()});
          break;
        }
      }
    }
    return info;
  }

  // Trans rules of one composite node over [a,b].
  void span(const std::string& name, size_t a, size_t b) {
    const Def& df = defs_.at(name);
    auto alt = [&](size_t i, const char* tag) {
      if (!fits(df.kid_nodes[i], a, b)) return;
      g_.add_rule(trans(name, a, b), {trans(df.kids[i], a, b)}, {}, tag);
      demand(df.kids[i], a, b);
    };
    if (df.wrapper) {
      alt(0, "trans_choice");
      return;
    }
    switch (df.kind) {
      case CK::kSeq:
        for (size_t m = a; m <= b; ++m)
          if (fits(df.kid_nodes[0], a, m) && fits(df.kid_nodes[1], m, b)) {
            g_.add_rule(trans(name, a, b), {trans(df.kids[0], a, m), trans(df.kids[1], m, b)}, {},
                        "trans_sequence");
            demand(df.kids[0], a, m);
            demand(df.kids[1], m, b);
          }
        break;
      case CK::kChoice:
        for (size_t i = 0; i < df.kids.size(); ++i) alt(i, "trans_choice");
        break;
      case CK::kPick:
        for (size_t i = 0; i < df.kids.size(); ++i) alt(i, "trans_pick");
        break;
      case CK::kIf:
        if (fits(df.kid_nodes[0], a, b)) {
          g_.add_rule(trans(name, a, b), {hf(df.f, a), trans(df.kids[0], a, b)}, {}, "trans_if_true");
          demand(df.kids[0], a, b);
        }
        if (fits(df.kid_nodes[1], a, b)) {
          g_.add_rule(trans(name, a, b), {trans(df.kids[1], a, b)}, {hf(df.f, a)}, "trans_if_false");
          demand(df.kids[1], a, b);
        }
        break;
      case CK::kWhile:
        if (a == b) g_.add_rule(trans(name, a, a), {}, {hf(df.f, a)}, "trans_while_false");
        for (size_t m = a + 1; m <= b; ++m)
          if (fits(df.kid_nodes[0], a, m)) {
            g_.add_rule(trans(name, a, b), {hf(df.f, a), trans(df.kids[0], a, m), trans(name, m, b)}, {},
                        "trans_while_true");
            demand(df.kids[0], a, m);
            demand(name, m, b);
          }
        break;
      case CK::kHtn:
        htn_span(*df.htn, name, a, b);
        break;
      default:
        break;
    }
  }

  void htn_span(const HtnInfo& h, const std::string& name, size_t a, size_t b) {
    const auto& tn = h.tn;
    const size_t k = tn.size();
    auto span = [&](size_t a, size_t b) { return num(a) + "," + num(b); };
    auto nok = [&](size_t a, size_t b) { return "nok(" + name + "," + span(a, b) + ")"; };
    auto begin = [&](int i, size_t x, size_t a, size_t b) {
      return "begin(" + name + "," + tn[i] + "," + num(x) + "," + span(a, b) + ")";
    };
    auto end = [&](int i, size_t x, size_t a, size_t b) {
      return "end(" + name + "," + tn[i] + "," + num(x) + "," + span(a, b) + ")";
    };
    auto at = [&](const char* pred, size_t x, size_t a, size_t b) {
      return std::string(pred) + "(" + name + "," + num(x) + "," + span(a, b) + ")";
    };
    // B < T <= E for task i; shared by the overlap and step coverage rules
    auto inside = [&](int i, size_t x, size_t a, size_t b) {
      return "inside(" + name + "," + tn[i] + "," + num(x) + "," + span(a, b) + ")";
    };
    const bool lit = opt_.literal_rules;

    for (size_t x = a; x <= b; ++x) g_.add_fact(fn("between", {num(x), num(a), num(b)}), "htn_between");
    g_.add_rule(trans(name, a, b), {}, {nok(a, b)}, "htn_trans");
    for (size_t i = 0; i < k; ++i) {
      Strs bs, es;
      for (size_t x = a; x <= b; ++x) {
        bs.push_back(begin(i, x, a, b));
        es.push_back(end(i, x, a, b));
      }
      g_.add_choice(1, 1, bs, {trans(name, a, b)}, {}, "htn_begin");
      g_.add_choice(1, 1, es, {trans(name, a, b)}, {}, "htn_end");
    }

    for (size_t i = 0; i < k; ++i)
      for (size_t x = a; x <= b; ++x)
        for (size_t y = a; y <= b; ++y) {
          Strs body{begin(i, x, a, b), end(i, y, a, b)};
          if (x > y) {
            g_.add_rule(nok(a, b), body, {}, "nok_begin_after_end");
            continue;
          }
          g_.add_rule(nok(a, b), body, {trans(tn[i], x, y)}, "nok_subtrace");
          if (fits(h.bodies[i], x, y)) demand(tn[i], x, y);
          for (size_t t = x; t <= y; ++t) g_.add_rule(at("used", t, a, b), body, {}, "htn_used");
          for (size_t t = x + 1; t <= y; ++t) g_.add_rule(inside(i, t, a, b), body, {}, "htn_inside");
        }

    for (size_t t = a; t <= b; ++t) {
      g_.add_rule(at("not_used", t, a, b), {}, {at("used", t, a, b)}, "htn_not_used");
      g_.add_rule(nok(a, b), {at("not_used", t, a, b)}, {}, "nok_not_used");
      if (t == a || k < 2) continue;
      for (size_t i = 0; i < k; ++i)
        for (size_t j = i + 1; j < k; ++j)
          g_.add_rule(at("overlap", t, a, b), {inside(i, t, a, b), inside(j, t, a, b)}, {}, "htn_overlap");
      g_.add_rule(nok(a, b), {at("overlap", t, a, b)}, {}, "nok_overlap");
    }

    if (!lit) {
      for (size_t t = a; t < b; ++t) {
        for (size_t i = 0; i < k; ++i)
          g_.add_rule(at("used_step", t, a, b), {inside(i, t + 1, a, b)}, {}, "htn_used_step");
        g_.add_rule(at("not_used_step", t, a, b), {}, {at("used_step", t, a, b)}, "htn_not_used_step");
        g_.add_rule(nok(a, b), {at("not_used_step", t, a, b)}, {}, "nok_not_used_step");
      }
      // a zero-length segment strictly inside another one
      for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j)
          if (i != j)
            for (size_t x = a + 1; x < b; ++x)
              g_.add_rule(nok(a, b),
                          {begin(j, x, a, b), end(j, x, a, b), inside(i, x, a, b), inside(i, x + 1, a, b)},
                          {}, "nok_zero_inside");
    }

    auto add_order = [&](int i, int j) {
      for (size_t x = a; x <= b; ++x)
        for (size_t y = a; y < x; ++y)
          g_.add_rule(nok(a, b), {begin(i, x, a, b), begin(j, y, a, b)}, {}, "nok_order");
      if (lit) return;
      // same start: only fine if the earlier task is the zero-length one
      for (size_t x = a; x <= b; ++x)
        for (size_t y = x + 1; y <= b; ++y)
          g_.add_rule(nok(a, b), {begin(i, x, a, b), end(i, y, a, b), begin(j, x, a, b), end(j, x, a, b)}, {},
                      "nok_order_tie");
    };
    for (const auto& o : h.orders) add_order(o.a, o.b);

    for (const auto& c : h.pre)
      for (size_t x = a; x <= b; ++x)
        g_.add_rule(nok(a, b), {begin(c.task, x, a, b)}, {hf(c.f, x)}, "nok_precondition");
    for (const auto& c : h.post)
      for (size_t x = a; x <= b; ++x)
        g_.add_rule(nok(a, b), {end(c.task, x, a, b)}, {hf(c.f, x)}, "nok_postcondition");
    for (const auto& m : h.maint)
      for (size_t e = a; e <= b; ++e)
        for (size_t s = a; s <= b; ++s) {
          Strs body{end(m.a, e, a, b), begin(m.b, s, a, b)};
          if (lit) {
            for (size_t t = e + 1; t < s; ++t) g_.add_rule(nok(a, b), body, {hf(m.f, t)}, "nok_maintain");
          } else if (e > s) {
            g_.add_rule(nok(a, b), body, {}, "nok_maintain");
          } else {
            for (size_t t = e; t <= s; ++t) g_.add_rule(nok(a, b), body, {hf(m.f, t)}, "nok_maintain");
          }
        }
  }

  GroundProgram& g_;
  const Signature& sig_;
  const ProcedureTable& procs_;
  size_t n_;
  bool rules_, allow_htn_;
  const EncodeOptions& opt_;
  FormulaEmitter formulas_;
  std::set<std::string> done_, called_;
  std::vector<Term> pending_;
  std::map<std::string, Def> defs_;
  std::set<std::tuple<std::string, size_t, size_t>> asked_;
  std::vector<std::tuple<std::string, size_t, size_t>> queue_;
};

GroundProgram encode_program(const GroundProgram& base, const Signature& sig,
                             const GeneralProgram& prog, size_t n, bool keep_goal, bool allow_htn,
                             const EncodeOptions& opt) {
  GroundProgram g = base;
  if (!keep_goal) g.remove_tag("goal_constraint");
  ProgramEmitter em(g, sig, prog.procs, n, true, allow_htn, opt);
  std::string main = em.run(prog.main);
  em.emit_formulas();
  g.add_constraint({}, {trans(main, 0, n)}, "trans_constraint");
  return g;
}

}  // namespace

std::string holds_atom(const Signature& sig, Literal l, size_t t) {
  return fn("holds", {literal_name(sig, l), num(t)});
}

std::string occ_atom(const Signature& sig, int action, size_t t) {
  return fn("occ", {sig.actions()[action].str(), num(t)});
}

GroundProgram encode_base(const DomainDescription& d, const InitialState& gamma,
                          const std::vector<Literal>& goal, size_t n, const EncodeOptions& opt) {
  const Signature& sig = d.sig();
  GroundProgram g;
  add_time(g, n);
  add_literal_decls(g, sig);
  for (size_t a = 0; a < sig.num_actions(); ++a)
    g.add_fact(fn("action", {sig.actions()[a].str()}), "action");

  auto holds_all = [&](const std::vector<Literal>& ls, size_t t) {
    Strs out;
    for (auto l : ls) out.push_back(holds_atom(sig, l, t));
    return out;
  };

  for (auto l : gamma) g.add_fact(holds_atom(sig, l, 0), "init");
  for (size_t t = 0; t <= n; ++t) {
    for (const auto& e : d.executables())
      g.add_rule(fn("possible", {sig.actions()[e.action].str(), num(t)}), holds_all(e.cond, t), {},
                 "possible");
    for (const auto& s : d.statics()) g.add_rule(holds_atom(sig, s.head, t), holds_all(s.body, t), {}, "static");
    for (size_t f = 0; f < sig.num_fluents(); ++f) {
      Literal p{static_cast<int>(f), true};
      g.add_constraint({holds_atom(sig, p, t), holds_atom(sig, p.complement(), t)}, {}, "consistency");
    }
  }
  for (size_t t = 0; t < n; ++t) {
    for (const auto& dl : d.dynamics()) {
      Strs body{occ_atom(sig, dl.action, t)};
      for (auto& b : holds_all(dl.pre, t)) body.push_back(b);
      g.add_rule(holds_atom(sig, dl.effect, t + 1), body, {}, "dynamic");
    }
    for (size_t f = 0; f < sig.num_fluents(); ++f)
      for (bool pos : {true, false}) {
        Literal l{static_cast<int>(f), pos};
        g.add_rule(holds_atom(sig, l, t + 1), {holds_atom(sig, l, t)},
                   {holds_atom(sig, l.complement(), t + 1)}, "inertia");
      }
    std::string p_t = num(t);
    if (opt.occ == EncodeOptions::Occ::kRules) {
      for (size_t a = 0; a < sig.num_actions(); ++a) {
        std::string an = sig.actions()[a].str();
        g.add_rule(occ_atom(sig, a, t), {fn("possible", {an, p_t})}, {fn("nocc", {an, p_t})}, "occ");
        for (size_t b = 0; b < sig.num_actions(); ++b)
          if (b != a) g.add_rule(fn("nocc", {an, p_t}), {occ_atom(sig, b, t)}, {}, "nocc");
      }
    } else {
      Strs heads;
      for (size_t a = 0; a < sig.num_actions(); ++a) heads.push_back(occ_atom(sig, a, t));
      g.add_choice(0, 1, heads, {fn("time", {p_t})}, {}, "occ_choice");
      for (size_t a = 0; a < sig.num_actions(); ++a) {
        std::string an = sig.actions()[a].str();
        g.add_constraint({occ_atom(sig, a, t)}, {fn("possible", {an, p_t})}, "occ_possible");
        g.add_rule(fn("occurs", {p_t}), {occ_atom(sig, a, t)}, {}, "occ_some");
        g.add_constraint({fn("possible", {an, p_t})}, {fn("occurs", {p_t})}, "occ_required");
      }
    }
  }
  g.add_rule("goal", holds_all(goal, n), {}, "goal");
  g.add_constraint({}, {"goal"}, "goal_constraint");
  return g;
}

GroundProgram encode_temporal(const GroundProgram& base, const Signature& sig, const Formula& phi,
                              const std::optional<std::vector<Literal>>& goal, size_t n,
                              const EncodeOptions& opt) {
  if (!phi.is_closed()) throw InputError("temporal formula has free variables: " + phi.name());
  Formula f = prepare(phi);
  GroundProgram g = base;
  FormulaEmitter em(g, n, opt);
  em.add(f);
  std::optional<std::set<std::string>> gn;
  if (goal) gn = goal_names(sig, *goal);
  em.emit(gn);
  g.add_constraint({}, {hf(f.name(), 0)}, "hf_constraint");
  return g;
}

GroundProgram encode_golog(const GroundProgram& base, const Signature& sig,
                           const GeneralProgram& prog, size_t n, bool keep_goal,
                           const EncodeOptions& opt) {
  return encode_program(base, sig, prog, n, keep_goal, false, opt);
}

GroundProgram encode_htn(const GroundProgram& base, const Signature& sig,
                         const GeneralProgram& prog, size_t n, bool keep_goal,
                         const EncodeOptions& opt) {
  return encode_program(base, sig, prog, n, keep_goal, true, opt);
}

GroundProgram formula_program(const Signature& sig, const std::vector<Formula>& phis,
                              const std::vector<State>& seq, const EncodeOptions& opt) {
  if (seq.empty()) throw InputError("formula_program needs at least one state");
  size_t n = seq.size() - 1;
  GroundProgram g;
  add_time(g, n);
  add_literal_decls(g, sig);
  for (size_t t = 0; t <= n; ++t)
    for (auto l : seq[t].literals()) g.add_fact(holds_atom(sig, l, t), "init");
  FormulaEmitter em(g, n, opt);
  for (const auto& f : phis) em.add(prepare(f));
  em.emit(std::nullopt);
  return g;
}

GroundProgram closure_program(const Signature& sig, const std::vector<StaticLaw>& k,
                              const LiteralSet& y, size_t step) {
  GroundProgram g;
  for (const auto& s : k) {
    Strs body;
    for (auto l : s.body) body.push_back(holds_atom(sig, l, step));
    g.add_rule(holds_atom(sig, s.head, step), body, {}, "static");
  }
  for (auto l : y.literals()) g.add_fact(holds_atom(sig, l, step), "init");
  for (size_t f = 0; f < sig.num_fluents(); ++f) {
    Literal p{static_cast<int>(f), true};
    g.add_fact(fn("fluent", {literal_name(sig, p)}), "fluent");
    g.add_constraint({holds_atom(sig, p, step), holds_atom(sig, p.complement(), step)}, {},
                     "consistency");
  }
  return g;
}

std::vector<std::string> program_facts(const GeneralProgram& prog) {
  GroundProgram g;
  Signature sig;
  EncodeOptions opt;
  ProgramEmitter em(g, sig, prog.procs, 0, false, true, opt);
  em.run(prog.main);
  em.emit_formulas();
  std::set<std::string> out;
  for (const auto& r : g.rules())
    if (r.tag == "program_table" || r.tag == "formula_table") out.insert(g.name(r.head[0]));
  return {out.begin(), out.end()};
}

const std::vector<std::string>& rule_families() {
  static const std::vector<std::string> tags = {
      "time", "fluent", "action", "literal_pos", "literal_neg", "contrary_pos", "contrary_neg",
      "init", "possible", "dynamic", "static", "occ", "nocc", "occ_choice", "occ_possible",
      "occ_some", "occ_required", "inertia", "consistency", "goal", "goal_constraint",
      "formula_literal", "hf_literal", "hf_and", "hf_or", "hf_negation", "hf_until", "hf_always",
      "hf_eventually", "hf_next", "hf_during", "hf_goal", "formula_table", "hf_constraint",
      "trans_action", "trans_formula", "trans_sequence", "trans_choice", "trans_if_true",
      "trans_if_false", "trans_while_true", "trans_while_false", "trans_pick", "trans_null",
      "program_table", "trans_constraint", "htn_trans", "htn_begin", "htn_end", "htn_between",
      "htn_used", "htn_used_step", "htn_inside", "htn_not_used", "htn_not_used_step",
      "htn_overlap", "nok_begin_after_end", "nok_subtrace", "nok_not_used", "nok_not_used_step",
      "nok_overlap", "nok_zero_inside", "nok_order", "nok_order_tie", "nok_maintain",
      "nok_precondition", "nok_postcondition"};
  return tags;
}

}  // namespace bplan
