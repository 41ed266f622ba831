#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bplan/action_theory.h"
#include "bplan/formula.h"
#include "bplan/ground_program.h"
#include "bplan/program.h"

namespace bplan {

struct EncodeOptions {
  enum class Occ { kRules, kChoice };
  Occ occ = Occ::kRules;
  // Emit the until/next/HTN rule bodies exactly as published instead of the
  // corrected forms (see README). Only for demonstrating the difference.
  bool literal_rules = false;
};

// Planning without control knowledge over times 0..n.
GroundProgram encode_base(const DomainDescription& d, const InitialState& gamma,
                          const std::vector<Literal>& goal, size_t n,
                          const EncodeOptions& opt = {});

// Adds temporal control knowledge. goal is required iff phi uses goal(.).
GroundProgram encode_temporal(const GroundProgram& base, const Signature& sig, const Formula& phi,
                              const std::optional<std::vector<Literal>>& goal, size_t n,
                              const EncodeOptions& opt = {});

// Adds procedural knowledge; the goal constraint is kept only if keep_goal.
// encode_golog rejects HTN nodes, encode_htn accepts them.
GroundProgram encode_golog(const GroundProgram& base, const Signature& sig,
                           const GeneralProgram& prog, size_t n, bool keep_goal,
                           const EncodeOptions& opt = {});
GroundProgram encode_htn(const GroundProgram& base, const Signature& sig,
                         const GeneralProgram& prog, size_t n, bool keep_goal,
                         const EncodeOptions& opt = {});

// hf rules plus holds facts for the sequence and the tables of phis.
GroundProgram formula_program(const Signature& sig, const std::vector<Formula>& phis,
                              const std::vector<State>& seq, const EncodeOptions& opt = {});

// holds(l,k) rules for static laws K and facts for Y, with the consistency
// constraint.
GroundProgram closure_program(const Signature& sig, const std::vector<StaticLaw>& k,
                              const LiteralSet& y, size_t step);

// The fact set r(P), sorted.
std::vector<std::string> program_facts(const GeneralProgram& prog);

// Every provenance tag the encoder can emit.
const std::vector<std::string>& rule_families();

std::string holds_atom(const Signature& sig, Literal l, size_t t);
std::string occ_atom(const Signature& sig, int action, size_t t);

}  // namespace bplan
