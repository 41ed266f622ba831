#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "bplan/encoder.h"
#include "bplan/ground_program.h"
#include "bplan/planner.h"
#include "bplan/problem_file.h"
#include "bplan/solver.h"

namespace support {

using namespace bplan;

std::string corpus_path(const std::string& name);
ProblemFile load_corpus(const std::string& name);

using NameSet = std::set<std::string>;

// Answer sets by trying every atom subset; own reduct/least-model code so
// it shares nothing with the solver. Choice rules: a chosen head is
// supported by the rule's body, bounds are checked separately.
std::set<NameSet> brute_answer_sets(const GroundProgram& p);
std::set<NameSet> solver_answer_sets(const GroundProgram& p, const SolveConfig& cfg = {});
// Restriction of each model to atoms that also occur in `atoms`.
std::set<NameSet> project(const std::set<NameSet>& models, const NameSet& atoms);

// Random programs over atoms a0..a{k-1}. With choices, the upper half of
// the atoms are reserved for choice heads.
GroundProgram random_program(std::mt19937& rng, int atoms, int rules, bool choices);

// A domain of fluents f0..f{k-1}.
Signature plain_signature(int fluents);
Formula random_formula(std::mt19937& rng, const Signature& sig, int depth);
std::vector<State> random_sequence(std::mt19937& rng, const Signature& sig, size_t n);

// The small parameterized domain used for program and HTN generation:
// fluents p(x), p(y), q; actions on(X), off(X), flip.
std::string toy_text();
ProblemFile toy_problem();
ComplexAction random_golog(std::mt19937& rng, const Signature& sig, int depth);
ComplexAction random_htn(std::mt19937& rng, const Signature& sig, int max_tasks);

// The 3-coloring program of a graph and its brute-force coloring count.
GroundProgram coloring_program(int vertices, const std::vector<std::pair<int, int>>& edges);
size_t count_colorings(int vertices, const std::vector<std::pair<int, int>>& edges);

std::set<Trajectory> trajectories(const PlanResult& r);

// Runs named actions from s0, taking the first successor each step.
Trajectory run(const PlanningProblem& p, const std::vector<std::string>& actions);

}  // namespace support
