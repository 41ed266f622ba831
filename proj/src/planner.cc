#include "bplan/planner.h"

#include <algorithm>
#include <map>
#include <set>

#include "bplan/error.h"

namespace bplan {
namespace {

LiteralSet goal_set(const PlanningProblem& prob) {
  LiteralSet g(prob.domain.sig().num_fluents());
  if (prob.goal)
    for (auto l : *prob.goal) g.insert(l);
  return g;
}

bool deterministic(const PlanningProblem& prob, size_t max_fluents) {
  ValidateOptions vo;
  vo.max_fluents = max_fluents;
  auto rep = validate_theory(prob.domain, prob.gamma, vo);
  return rep.deterministic.value_or(false);
}

// The node a program's main resolves to, following calls.
std::optional<HtnNode> main_htn(const GeneralProgram& p) {
  ComplexAction m = p.main;
  for (int guard = 0; guard < 64 && m.kind() == ComplexAction::Kind::kCall; ++guard)
    m = p.procs.instantiate(m.term());
  if (m.kind() == ComplexAction::Kind::kHtn) return m.htn_node();
  return std::nullopt;
}

const char* constraint_phrase(HtnConstraint::Kind k) {
  switch (k) {
    case HtnConstraint::Kind::kOrder: return "ordering constraint";
    case HtnConstraint::Kind::kPrecondition: return "precondition";
    case HtnConstraint::Kind::kPostcondition: return "postcondition";
    case HtnConstraint::Kind::kMaintain: return "maintain constraint";
  }
  return "constraint";
}

// Control-knowledge and goal check of a trajectory known to be valid.
class Acceptor {
 public:
  explicit Acceptor(const PlanningProblem& prob) : prob_(prob), goal_(goal_set(prob)) {
    if (prob.temporal && prob.temporal->has_goal()) tgoal_ = goal_;
  }

  bool operator()(const Trajectory& t) const {
    const size_t n = prob_.horizon;
    if (prob_.knowledge == PlanningProblem::Knowledge::kProgram) {
      if (t.length() != n) return false;
      if (prob_.goal && !t.states.back().contains_all(*prob_.goal)) return false;
      return is_trace(prob_.domain, *prob_.program, t).ok;
    }
    if (prob_.goal && !t.states.back().contains_all(*prob_.goal)) return false;
    if (prob_.knowledge == PlanningProblem::Knowledge::kTemporal)
      return sat(prob_.domain.sig(), padded_states(t, n), *prob_.temporal, tgoal_, 0);
    return true;
  }

 private:
  const PlanningProblem& prob_;
  LiteralSet goal_;
  std::optional<LiteralSet> tgoal_;
};

bool any_executable(const DomainDescription& d, const State& s) {
  for (size_t a = 0; a < d.sig().num_actions(); ++a)
    if (is_executable(d, static_cast<int>(a), s)) return true;
  return false;
}

long time_priority(const std::string& name) {
  bool occ = name.rfind("occ(", 0) == 0;
  bool holds = name.rfind("holds(", 0) == 0;
  if (!occ && !holds) return 1L << 40;
  size_t comma = name.rfind(',');
  long t = std::stol(name.substr(comma + 1, name.size() - comma - 2));
  return 2 * t + (holds ? 1 : 0);
}

}  // namespace

std::vector<State> padded_states(const Trajectory& t, size_t n) {
  std::vector<State> seq = t.states;
  while (seq.size() < n + 1) seq.push_back(seq.back());
  return seq;
}

void validate_problem(const PlanningProblem& prob) {
  using Kn = PlanningProblem::Knowledge;
  if (prob.knowledge == Kn::kTemporal && !prob.temporal)
    throw InputError("temporal knowledge selected without a formula");
  if (prob.knowledge == Kn::kProgram && !prob.program)
    throw InputError("program knowledge selected without a program");
  if (prob.temporal) {
    if (!prob.temporal->is_closed()) throw InputError("temporal formula has free variables");
    if (prob.temporal->has_goal() && !prob.goal)
      throw InputError("goal(.) in the temporal formula needs a goal");
  }
  if (prob.program) validate_program(prob.domain.sig(), *prob.program);
  if (!initial_state(prob.domain, prob.gamma))
    throw InputError("initial state is incomplete, inconsistent or not closed");
}

PlanResult plan_direct(const PlanningProblem& prob, const PlanOptions& opt) {
  validate_problem(prob);
  const auto& d = prob.domain;
  const size_t n = prob.horizon;
  const bool is_prog = prob.knowledge == PlanningProblem::Knowledge::kProgram;
  PlanResult res;
  res.deterministic = deterministic(prob, opt.max_fluents);
  if (prob.require_deterministic && !res.deterministic)
    throw InputError("domain is not deterministic");

  Acceptor accept(prob);
  Trajectory cur;
  cur.states.push_back(*initial_state(d, prob.gamma));
  size_t nodes = 0;
  std::set<Trajectory> found;

  auto full = [&]() { return opt.limit && found.size() >= opt.limit; };
  auto dfs = [&](auto&& self) -> void {
    if (full()) return;
    if (++nodes > opt.max_nodes)
      throw CapExceeded("direct search exceeded " + std::to_string(opt.max_nodes) + " nodes");
    const size_t k = cur.length();
    if (k == n) {
      if (accept(cur)) found.insert(cur);
      return;
    }
    if (is_prog && opt.prune && k > 0) {
      TraceChecker tc(d, prob.program->procs, cur);
      if (!tc.may_extend(prob.program->main, 0, k)) return;
    }
    const State s = cur.states.back();
    bool moved = false;
    for (size_t a = 0; a < d.sig().num_actions(); ++a) {
      if (!is_executable(d, static_cast<int>(a), s)) continue;
      moved = true;
      for (const auto& next : successors(d, static_cast<int>(a), s, opt.max_fluents)) {
        cur.actions.push_back(static_cast<int>(a));
        cur.states.push_back(next);
        self(self);
        cur.actions.pop_back();
        cur.states.pop_back();
        if (full()) return;
      }
    }
    // stuck before the horizon: the answer-set route pads such trajectories
    if (!moved && !is_prog && accept(cur)) found.insert(cur);
  };
  dfs(dfs);
  res.limited = full();
  for (const auto& t : found) res.plans.push_back({t, t.length() < n});
  return res;
}

GroundProgram encode_problem(const PlanningProblem& prob, const EncodeOptions& opt) {
  using Kn = PlanningProblem::Knowledge;
  const auto& sig = prob.domain.sig();
  std::vector<Literal> goal = prob.goal.value_or(std::vector<Literal>{});
  GroundProgram base = encode_base(prob.domain, prob.gamma, goal, prob.horizon, opt);
  switch (prob.knowledge) {
    case Kn::kNone:
      return base;
    case Kn::kTemporal:
      return encode_temporal(base, sig, *prob.temporal, prob.goal, prob.horizon, opt);
    case Kn::kProgram:
      return encode_htn(base, sig, *prob.program, prob.horizon, prob.goal.has_value(), opt);
  }
  return base;
}

PlanResult plan_asp(const PlanningProblem& prob, const PlanOptions& opt) {
  validate_problem(prob);
  const auto& d = prob.domain;
  const auto& sig = d.sig();
  const size_t n = prob.horizon;
  PlanResult res;
  res.deterministic = deterministic(prob, opt.max_fluents);
  if (prob.require_deterministic && !res.deterministic)
    throw InputError("domain is not deterministic");

  GroundProgram g = encode_problem(prob, opt.encode);

  struct HoldsAt {
    Literal l;
    size_t t;
  };
  std::map<AtomId, HoldsAt> holds;
  std::map<AtomId, std::pair<int, size_t>> occs;
  for (size_t t = 0; t <= n; ++t) {
    for (size_t f = 0; f < sig.num_fluents(); ++f)
      for (bool pos : {true, false}) {
        Literal l{static_cast<int>(f), pos};
        AtomId id = g.find(holds_atom(sig, l, t));
        if (id >= 0) holds[id] = {l, t};
      }
    for (size_t a = 0; a < sig.num_actions(); ++a) {
      AtomId id = g.find(occ_atom(sig, static_cast<int>(a), t));
      if (id >= 0) occs[id] = {static_cast<int>(a), t};
    }
  }

  SolveConfig cfg;
  cfg.limit = opt.limit;
  cfg.choice_mode = opt.choice_mode;
  cfg.max_decisions = opt.max_decisions;
  for (const auto& [id, _] : holds) cfg.project.push_back(id);
  for (const auto& [id, _] : occs) cfg.project.push_back(id);
  std::sort(cfg.project.begin(), cfg.project.end());
  cfg.priority = time_priority;
  auto models = enumerate(g, cfg);

  std::set<Trajectory> found;
  for (const auto& m : models) {
    std::vector<State> states(n + 1, State(sig.num_fluents()));
    std::vector<int> act(n, -1);
    for (AtomId a : m) {
      if (auto it = holds.find(a); it != holds.end()) states[it->second.t].insert(it->second.l);
      if (auto it = occs.find(a); it != occs.end()) {
        if (act[it->second.second] != -1)
          throw std::logic_error("two actions at one time step in an answer set");
        act[it->second.second] = it->second.first;
      }
    }
    Trajectory t;
    size_t k = 0;
    while (k < n && act[k] != -1) ++k;
    for (size_t i = k; i < n; ++i)
      if (act[i] != -1) throw std::logic_error("action after a step without one");
    t.actions.assign(act.begin(), act.begin() + static_cast<long>(k));
    t.states.assign(states.begin(), states.begin() + static_cast<long>(k) + 1);
    if (k < n && any_executable(d, t.states.back())) continue;
    found.insert(t);
  }
  res.limited = opt.limit && models.size() >= opt.limit;
  for (const auto& t : found) res.plans.push_back({t, t.length() < n});
  return res;
}

VerifyResult verify_plan(const PlanningProblem& prob, const Trajectory& traj, size_t max_fluents) {
  VerifyResult r;
  const auto& d = prob.domain;
  const size_t n = prob.horizon;
  auto fail = [&](std::string msg) {
    r.diagnostics.push_back(std::move(msg));
    return r;
  };
  if (traj.states.size() != traj.actions.size() + 1) return fail("malformed trajectory");
  auto s0 = initial_state(d, prob.gamma);
  if (!s0 || traj.states[0] != *s0) return fail("initial state differs from the initial situation");
  for (size_t i = 0; i < traj.actions.size(); ++i) {
    Trajectory step{{traj.states[i], traj.states[i + 1]}, {traj.actions[i]}};
    if (!is_trajectory(d, step, max_fluents))
      return fail("step " + std::to_string(i) + " is not a transition");
  }
  const bool is_prog = prob.knowledge == PlanningProblem::Knowledge::kProgram;
  if (traj.length() > n) return fail("trajectory longer than the horizon");
  if (traj.length() < n) {
    if (is_prog) return fail("trace shorter than the horizon");
    if (any_executable(d, traj.states.back()))
      return fail("trajectory stops at " + std::to_string(traj.length()) +
                  " although an action is executable");
  }
  if (prob.goal && !traj.states.back().contains_all(*prob.goal)) return fail("goal at n");
  if (prob.knowledge == PlanningProblem::Knowledge::kTemporal) {
    std::optional<LiteralSet> g;
    if (prob.temporal->has_goal()) g = goal_set(prob);
    if (!sat(d.sig(), padded_states(traj, n), *prob.temporal, g, 0))
      return fail("temporal constraint");
  }
  if (is_prog && !is_trace(d, *prob.program, traj).ok) {
    if (auto h = main_htn(*prob.program)) {
      TraceChecker tc(d, prob.program->procs, traj);
      for (size_t c = 0; c < h->constraints.size(); ++c)
        if (tc.htn_trace(*h, 0, n, static_cast<int>(c), nullptr))
          r.diagnostics.push_back(std::string(constraint_phrase(h->constraints[c].kind)) + " " +
                                  h->constraints[c].label.str());
      if (!r.diagnostics.empty()) return r;
    }
    return fail("not a trace of " + prob.program->main.name());
  }
  r.ok = true;
  r.classification = deterministic(prob, max_fluents) ? "plan" : "possible plan";
  return r;
}

std::string format_trajectory(const Signature& sig, const Trajectory& t) {
  std::string s = "{" + format_literals(sig, t.states[0]) + "}";
  for (size_t i = 0; i < t.actions.size(); ++i)
    s += " " + sig.actions()[t.actions[i]].str() + " {" + format_literals(sig, t.states[i + 1]) + "}";
  return s;
}

CrossCheckReport cross_check(const PlanningProblem& prob, const PlanOptions& opt) {
  PlanOptions all = opt;
  all.limit = 0;
  auto a = plan_direct(prob, all);
  auto b = plan_asp(prob, all);
  CrossCheckReport rep;
  rep.direct_count = a.plans.size();
  rep.asp_count = b.plans.size();
  std::set<Trajectory> sa, sb;
  for (const auto& p : a.plans) sa.insert(p.traj);
  for (const auto& p : b.plans) sb.insert(p.traj);
  const auto& sig = prob.domain.sig();
  for (const auto& t : sa)
    if (!sb.count(t)) rep.only_direct.push_back(format_trajectory(sig, t));
  for (const auto& t : sb)
    if (!sa.count(t)) rep.only_asp.push_back(format_trajectory(sig, t));
  rep.agree = rep.only_direct.empty() && rep.only_asp.empty();
  return rep;
}

}  // namespace bplan
