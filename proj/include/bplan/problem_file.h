#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "bplan/planner.h"

namespace bplan {

inline constexpr const char* kProblemHeader = "% bplan-problem v1";
inline constexpr const char* kPlanHeader = "% bplan-plan v1";

struct ProblemFile {
  PlanningProblem problem;
  std::map<std::string, std::vector<Term>> sorts;
  bool has_horizon = false;
};

// Throws InputError with "line:col: message".
ProblemFile parse_problem(std::string_view text);
ProblemFile load_problem(const std::string& path);

// Parses a standalone formula or program against a signature; used by tests.
Formula parse_formula(const Signature& sig, std::string_view text);

// A plan file lists actions and optionally the states between them.
struct PlanFile {
  std::vector<int> actions;
  std::vector<std::optional<State>> states;  // actions+1 entries
};

PlanFile parse_plan(const Signature& sig, std::string_view text);
std::string write_plan(const Signature& sig, const Trajectory& t);

std::string read_file(const std::string& path);

}  // namespace bplan
