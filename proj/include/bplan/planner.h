#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bplan/action_theory.h"
#include "bplan/encoder.h"
#include "bplan/formula.h"
#include "bplan/program.h"
#include "bplan/solver.h"

namespace bplan {

struct PlanningProblem {
  enum class Knowledge { kNone, kTemporal, kProgram };

  DomainDescription domain;
  InitialState gamma;
  // With program knowledge the goal is only enforced when present; otherwise
  // a missing goal is the empty conjunction.
  std::optional<std::vector<Literal>> goal;
  size_t horizon = 0;
  Knowledge knowledge = Knowledge::kNone;
  std::optional<Formula> temporal;
  std::optional<GeneralProgram> program;
  bool require_deterministic = false;
};

struct PlanOptions {
  size_t limit = 0;  // 0 = all
  size_t max_fluents = kDefaultMaxFluents;
  size_t max_nodes = 5'000'000;  // direct route search nodes
  bool prune = false;            // prefix pruning for program knowledge
  EncodeOptions encode;
  SolveConfig::ChoiceMode choice_mode = SolveConfig::ChoiceMode::kNative;
  size_t max_decisions = 20'000'000;
};

// A found trajectory. When k < n the plan stopped at a state where no action
// is executable; traj then has k actions and k+1 states.
struct PlannedTrajectory {
  Trajectory traj;
  bool dead_end = false;

  size_t k() const { return traj.length(); }
  bool operator<(const PlannedTrajectory& o) const { return traj < o.traj; }
  bool operator==(const PlannedTrajectory& o) const { return traj == o.traj; }
};

struct PlanResult {
  std::vector<PlannedTrajectory> plans;  // canonical order
  bool deterministic = false;            // plans are plans, not just possible plans
  bool limited = false;                  // stopped at the limit
  const char* classification() const { return deterministic ? "plan" : "possible plan"; }
};

// Throws InputError for an ill-formed problem.
void validate_problem(const PlanningProblem& prob);

PlanResult plan_direct(const PlanningProblem& prob, const PlanOptions& opt = {});
PlanResult plan_asp(const PlanningProblem& prob, const PlanOptions& opt = {});

// The ground program plan_asp solves.
GroundProgram encode_problem(const PlanningProblem& prob, const EncodeOptions& opt = {});

// The full state sequence over 0..n (a dead end repeats its last state).
std::vector<State> padded_states(const Trajectory& t, size_t n);

struct VerifyResult {
  bool ok = false;
  std::vector<std::string> diagnostics;
  std::string classification;  // "plan" or "possible plan" when ok
};

VerifyResult verify_plan(const PlanningProblem& prob, const Trajectory& traj,
                         size_t max_fluents = kDefaultMaxFluents);

struct CrossCheckReport {
  bool agree = false;
  size_t direct_count = 0, asp_count = 0;
  std::vector<std::string> only_direct, only_asp;  // printed witnesses
};

CrossCheckReport cross_check(const PlanningProblem& prob, const PlanOptions& opt = {});

std::string format_trajectory(const Signature& sig, const Trajectory& t);

}  // namespace bplan
