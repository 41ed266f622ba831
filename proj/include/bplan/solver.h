#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bplan/ground_program.h"

namespace bplan {

// Sorted atom ids.
using AnswerSet = std::vector<AtomId>;

struct SolveConfig {
  enum class ChoiceMode { kNative, kExpand };
  enum class Strategy { kSearch, kExhaustive };

  size_t limit = 0;  // 0 = enumerate all
  ChoiceMode choice_mode = ChoiceMode::kNative;
  Strategy strategy = Strategy::kSearch;
  size_t exhaustive_max_atoms = 20;
  size_t max_decisions = 20'000'000;
  // When non-empty, models are enumerated modulo these atoms: one model per
  // distinct projection.
  std::vector<AtomId> project;
  // Branching priority, lower first; ties broken by atom name. Null means
  // pure canonical name order.
  std::function<long(const std::string&)> priority;
};

struct SolveStats {
  size_t decisions = 0;
  size_t conflicts = 0;
  bool tight = true;
};

// Pi^S for a program without choice rules.
GroundProgram reduct(const GroundProgram& p, const AnswerSet& s);
// Least model of a program without naf literals or choice rules; nullopt if
// a constraint fires.
std::optional<AnswerSet> least_model(const GroundProgram& p);
// Handles choice rules natively (chosen heads are supported, bounds checked).
bool is_answer_set(const GroundProgram& p, const AnswerSet& s);

// Normal-rule replacement of a restricted choice rule. Auxiliary atoms are
// interned into p.
std::vector<GroundRule> expand_choice(GroundProgram& p, const GroundRule& r, size_t index);
GroundProgram expand_choices(const GroundProgram& p);

// Answer sets in deterministic order. Throws CapExceeded when a cap is hit.
std::vector<AnswerSet> enumerate(const GroundProgram& p, const SolveConfig& cfg = {},
                                 SolveStats* stats = nullptr);

std::vector<std::string> atom_names(const GroundProgram& p, const AnswerSet& s);

}  // namespace bplan
