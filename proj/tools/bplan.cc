#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "bplan/error.h"
#include "bplan/planner.h"
#include "bplan/problem_file.h"

using namespace bplan;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kNoPlan = 2, kCap = 3 };

struct Common {
  std::string file;
  long horizon = -1;
  std::string occ = "rules";
  std::string choice = "native";
  size_t max_fluents = kDefaultMaxFluents;
  bool literal_rules = false;
};

void add_common(CLI::App* c, Common& o) {
  c->add_option("file", o.file, "problem file")->required();
  c->add_option("--horizon", o.horizon, "plan length n (overrides the file)");
  c->add_option("--occ-encoding", o.occ, "rules|choice")->check(CLI::IsMember({"rules", "choice"}));
  c->add_option("--choice-mode", o.choice, "native|expand")->check(CLI::IsMember({"native", "expand"}));
  c->add_option("--max-fluents", o.max_fluents, "cap for successor enumeration");
  c->add_flag("--literal-rules", o.literal_rules, "use the uncorrected until/next/HTN rules");
}

ProblemFile load(const Common& o) {
  ProblemFile pf = load_problem(o.file);
  if (o.horizon >= 0) {
    pf.problem.horizon = static_cast<size_t>(o.horizon);
    pf.has_horizon = true;
  }
  return pf;
}

EncodeOptions encode_options(const Common& o) {
  EncodeOptions e;
  e.occ = o.occ == "choice" ? EncodeOptions::Occ::kChoice : EncodeOptions::Occ::kRules;
  e.literal_rules = o.literal_rules;
  return e;
}

SolveConfig::ChoiceMode choice_mode(const Common& o) {
  return o.choice == "expand" ? SolveConfig::ChoiceMode::kExpand : SolveConfig::ChoiceMode::kNative;
}

void need_horizon(const ProblemFile& pf) {
  if (!pf.has_horizon) throw InputError("no horizon: add horizon(n). or pass --horizon");
}

int cmd_validate(const Common& o) {
  ProblemFile pf = load(o);
  const auto& prob = pf.problem;
  ValidateOptions vo;
  vo.max_fluents = o.max_fluents;
  vo.check_consistency = true;
  auto rep = validate_theory(prob.domain, prob.gamma, vo);
  bool ok = rep.ok();
  for (const auto& v : rep.violations) std::cout << "violation " << v.kind << ": " << v.detail << "\n";
  if (prob.program) {
    auto coh = check_coherent(prob.program->procs);
    for (const auto& p : coh.problems) std::cout << "incoherent: " << p << "\n";
    ok = ok && coh.ok();
  }
  if (!ok) return kInvalid;
  std::cout << "OK";
  if (rep.deterministic) {
    std::cout << ", " << (*rep.deterministic ? "deterministic" : "nondeterministic");
    if (!*rep.deterministic) std::cout << " (" << rep.nondeterminism_witness << ")";
  }
  if (rep.consistent) std::cout << ", " << (*rep.consistent ? "consistent" : "inconsistent");
  std::cout << "\n";
  return kOk;
}

int cmd_translate(const Common& o, const std::string& emit, const std::string& mode) {
  ProblemFile pf = load(o);
  need_horizon(pf);
  PlanningProblem prob = pf.problem;
  if (mode == "none") {
    prob.knowledge = PlanningProblem::Knowledge::kNone;
    if (!prob.goal) prob.goal = std::vector<Literal>{};
  }
  validate_problem(prob);
  std::string text = encode_problem(prob, encode_options(o)).to_text();
  if (emit.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(emit, std::ios::binary);
    if (!out) throw InputError("cannot write " + emit);
    out << text;
  }
  return kOk;
}

std::string action_list(const Signature& sig, const Trajectory& t) {
  std::string s;
  for (size_t i = 0; i < t.actions.size(); ++i) s += (i ? "; " : "") + sig.actions()[t.actions[i]].str();
  return s.empty() ? "(empty plan)" : s;
}

int cmd_plan(const Common& o, const std::string& route, bool all, size_t limit, const std::string& emit,
             bool prune) {
  ProblemFile pf = load(o);
  need_horizon(pf);
  const auto& prob = pf.problem;
  PlanOptions po;
  po.limit = all ? limit : 1;
  po.max_fluents = o.max_fluents;
  po.encode = encode_options(o);
  po.choice_mode = choice_mode(o);
  po.prune = prune;
  const auto& sig = prob.domain.sig();
  if (route == "both") {
    auto rep = cross_check(prob, po);
    if (!rep.agree) {
      std::cout << "DIVERGENCE: direct " << rep.direct_count << ", asp " << rep.asp_count << "\n";
      for (const auto& w : rep.only_direct) std::cout << "only direct: " << w << "\n";
      for (const auto& w : rep.only_asp) std::cout << "only asp: " << w << "\n";
      return kInvalid;
    }
    std::cout << "% routes agree on " << rep.direct_count << (rep.direct_count == 1 ? " trajectory\n" : " trajectories\n");
  }
  PlanResult res = route == "asp" ? plan_asp(prob, po) : plan_direct(prob, po);
  if (res.plans.empty()) {
    std::cout << "no plan\n";
    return kNoPlan;
  }
  size_t shown = 0;
  for (const auto& p : res.plans) {
    if (po.limit && shown++ >= po.limit) break;
    std::cout << action_list(sig, p.traj);
    if (p.dead_end) std::cout << "  % stops at " << p.k() << ", no action executable";
    std::cout << "\n";
  }
  std::cout << "% " << res.plans.size() << " " << res.classification() << (res.plans.size() == 1 ? "" : "s")
            << (res.limited && all ? " (limit reached)" : "") << "\n";
  if (!emit.empty()) {
    std::ofstream out(emit, std::ios::binary);
    if (!out) throw InputError("cannot write " + emit);
    out << write_plan(sig, res.plans.front().traj);
  }
  return kOk;
}

int cmd_check(const Common& o, const std::string& plan_path) {
  ProblemFile pf = load(o);
  const auto& prob = pf.problem;
  const auto& d = prob.domain;
  PlanFile plan = parse_plan(d.sig(), read_file(plan_path));
  PlanningProblem p = prob;
  if (!pf.has_horizon) p.horizon = plan.actions.size();

  // Missing states are filled in with every possible successor.
  std::vector<Trajectory> candidates;
  Trajectory cur;
  auto s0 = initial_state(d, p.gamma);
  if (!s0) throw InputError("initial state is incomplete, inconsistent or not closed");
  std::vector<State> first = plan.states[0] ? std::vector<State>{*plan.states[0]} : std::vector<State>{*s0};
  std::function<void(size_t)> fill = [&](size_t i) {
    if (candidates.size() >= 4096) return;
    if (i == plan.actions.size()) {
      candidates.push_back(cur);
      return;
    }
    std::vector<State> next;
    if (plan.states[i + 1])
      next = {*plan.states[i + 1]};
    else
      next = successors(d, plan.actions[i], cur.states.back(), o.max_fluents);
    if (next.empty()) {
      candidates.push_back(cur);  // reported as a failed step
      return;
    }
    for (const auto& s : next) {
      cur.actions.push_back(plan.actions[i]);
      cur.states.push_back(s);
      fill(i + 1);
      cur.actions.pop_back();
      cur.states.pop_back();
    }
  };
  for (const auto& s : first) {
    cur.states = {s};
    fill(0);
  }
  VerifyResult verdict;
  for (const auto& t : candidates) {
    Trajectory full = t;
    if (full.actions.size() < plan.actions.size()) {
      verdict.diagnostics = {"step " + std::to_string(full.actions.size()) + " is not a transition"};
      continue;
    }
    VerifyResult r = verify_plan(p, full, o.max_fluents);
    if (r.ok) {
      std::cout << "VALID (" << r.classification << ")\n";
      return kOk;
    }
    if (verdict.diagnostics.empty()) verdict = r;
  }
  std::cout << "INVALID:";
  for (size_t i = 0; i < verdict.diagnostics.size(); ++i)
    std::cout << (i ? ";" : "") << " " << verdict.diagnostics[i];
  std::cout << "\n";
  return kNoPlan;
}

int cmd_solve(const std::string& file, size_t limit, const std::string& choice) {
  GroundProgram g = GroundProgram::parse(read_file(file));
  SolveConfig cfg;
  cfg.limit = limit;
  cfg.choice_mode = choice == "expand" ? SolveConfig::ChoiceMode::kExpand : SolveConfig::ChoiceMode::kNative;
  auto models = enumerate(g, cfg);
  for (size_t i = 0; i < models.size(); ++i) {
    std::cout << "Answer " << i + 1 << ":";
    for (const auto& a : atom_names(g, models[i])) std::cout << " " << a;
    std::cout << "\n";
  }
  std::cout << (models.empty() ? "UNSATISFIABLE" : "SATISFIABLE") << "\n";
  return models.empty() ? kNoPlan : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bplan: planning with action language B and answer sets"};
  app.require_subcommand(1);

  Common vo, to, po, co;
  auto* validate = app.add_subcommand("validate", "check a problem file");
  add_common(validate, vo);

  auto* translate = app.add_subcommand("translate", "print the ground logic program");
  add_common(translate, to);
  std::string t_emit, t_mode = "auto";
  translate->add_option("--emit", t_emit, "write to this file instead of stdout");
  translate->add_option("--knowledge-mode", t_mode, "auto|none")->check(CLI::IsMember({"auto", "none"}));

  auto* plan = app.add_subcommand("plan", "search for plans");
  add_common(plan, po);
  std::string route = "direct", p_emit;
  bool all = false, prune = false;
  size_t limit = 0;
  plan->add_option("--route", route, "direct|asp|both")->check(CLI::IsMember({"direct", "asp", "both"}));
  plan->add_flag("--all", all, "list every plan");
  plan->add_option("--limit", limit, "with --all, stop after this many");
  plan->add_option("--emit", p_emit, "write the first plan as a plan file");
  plan->add_flag("--prune", prune, "prefix pruning for program knowledge (direct route)");

  auto* check = app.add_subcommand("check", "verify a plan file");
  add_common(check, co);
  std::string plan_path;
  check->add_option("--plan", plan_path, "plan file")->required();

  auto* solve = app.add_subcommand("solve", "enumerate answer sets of a ground program");
  std::string s_file, s_choice = "native";
  size_t s_limit = 0;
  solve->add_option("file", s_file, "ground program")->required();
  solve->add_option("--limit", s_limit, "stop after this many answer sets");
  solve->add_option("--choice-mode", s_choice, "native|expand")->check(CLI::IsMember({"native", "expand"}));

  CLI11_PARSE(app, argc, argv);
  try {
    if (*validate) return cmd_validate(vo);
    if (*translate) return cmd_translate(to, t_emit, t_mode);
    if (*plan) return cmd_plan(po, route, all, limit, p_emit, prune);
    if (*check) return cmd_check(co, plan_path);
    if (*solve) return cmd_solve(s_file, s_limit, s_choice);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const CapExceeded& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kCap;
  }
  return kOk;
}
