#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bplan/term.h"

namespace bplan {

// Objects, action and fluent names, and their ground instances. Ground
// fluents and actions are kept in canonical (print) order and addressed by
// index everywhere else.
class Signature {
 public:
  Signature() = default;
  Signature(std::vector<std::string> objects, std::vector<Term> fluents,
            std::vector<Term> actions);

  const std::vector<std::string>& objects() const { return objects_; }
  const std::vector<Term>& fluents() const { return fluents_; }
  const std::vector<Term>& actions() const { return actions_; }
  size_t num_fluents() const { return fluents_.size(); }
  size_t num_actions() const { return actions_.size(); }

  // -1 when absent.
  int fluent_index(const Term& t) const;
  int action_index(const Term& t) const;
  bool is_fluent_name(const std::string& name, size_t arity) const;
  bool is_action_name(const std::string& name, size_t arity) const;

 private:
  std::vector<std::string> objects_;
  std::vector<Term> fluents_, actions_;
  std::unordered_map<std::string, int> fluent_idx_, action_idx_;
  std::map<std::string, size_t> fluent_names_, action_names_;
};

struct Literal {
  int fluent = 0;
  bool positive = true;

  Literal complement() const { return {fluent, !positive}; }
  bool operator==(const Literal& o) const { return fluent == o.fluent && positive == o.positive; }
  bool operator<(const Literal& o) const {
    return fluent != o.fluent ? fluent < o.fluent : positive < o.positive;
  }
};

// f or -f as a term / string.
Term literal_term(const Signature& sig, Literal l);
std::string literal_name(const Signature& sig, Literal l);
// Accepts f(..) or -f(..); throws InputError for unknown fluents.
Literal resolve_literal(const Signature& sig, const Term& t);

// A set of fluent literals over a fixed fluent count. May be partial or
// inconsistent; a State is a complete, consistent, D_C-closed LiteralSet.
class LiteralSet {
 public:
  LiteralSet() = default;
  explicit LiteralSet(size_t num_fluents) : bits_(num_fluents, 0) {}
  template <class It>
  LiteralSet(size_t num_fluents, It first, It last) : bits_(num_fluents, 0) {
    for (; first != last; ++first) insert(*first);
  }

  size_t num_fluents() const { return bits_.size(); }
  void insert(Literal l) { bits_[l.fluent] |= l.positive ? 1 : 2; }
  bool contains(Literal l) const { return bits_[l.fluent] & (l.positive ? 1 : 2); }
  bool contains_all(const std::vector<Literal>& ls) const;
  bool consistent() const;
  bool complete() const;
  size_t size() const;
  std::vector<Literal> literals() const;
  LiteralSet intersect(const LiteralSet& o) const;
  void insert_all(const LiteralSet& o);
  bool subset_of(const LiteralSet& o) const;

  bool operator==(const LiteralSet& o) const { return bits_ == o.bits_; }
  bool operator!=(const LiteralSet& o) const { return bits_ != o.bits_; }
  bool operator<(const LiteralSet& o) const { return bits_ < o.bits_; }

 private:
  std::vector<uint8_t> bits_;
};
using State = LiteralSet;

std::string format_literals(const Signature& sig, const LiteralSet& s);

struct StaticLaw {
  std::vector<Literal> body;
  Literal head;
  bool operator<(const StaticLaw& o) const;
  bool operator==(const StaticLaw& o) const { return body == o.body && head == o.head; }
};

struct DynamicLaw {
  int action = 0;
  Literal effect;
  std::vector<Literal> pre;
  bool operator<(const DynamicLaw& o) const;
  bool operator==(const DynamicLaw& o) const {
    return action == o.action && effect == o.effect && pre == o.pre;
  }
};

struct ExecutableLaw {
  int action = 0;
  std::vector<Literal> cond;
  bool operator<(const ExecutableLaw& o) const;
  bool operator==(const ExecutableLaw& o) const { return action == o.action && cond == o.cond; }
};

class DomainDescription {
 public:
  DomainDescription() = default;
  DomainDescription(Signature sig, std::vector<StaticLaw> statics,
                    std::vector<DynamicLaw> dynamics, std::vector<ExecutableLaw> executables);

  const Signature& sig() const { return sig_; }
  const std::vector<StaticLaw>& statics() const { return statics_; }
  const std::vector<DynamicLaw>& dynamics() const { return dynamics_; }
  const std::vector<ExecutableLaw>& executables() const { return executables_; }
  const std::vector<int>& dynamics_of(int action) const { return dyn_by_action_[action]; }
  const std::vector<int>& executables_of(int action) const { return exec_by_action_[action]; }

 private:
  Signature sig_;
  std::vector<StaticLaw> statics_;
  std::vector<DynamicLaw> dynamics_;
  std::vector<ExecutableLaw> executables_;
  std::vector<std::vector<int>> dyn_by_action_, exec_by_action_;
};

using InitialState = std::vector<Literal>;

struct Trajectory {
  std::vector<State> states;  // n+1
  std::vector<int> actions;   // n
  size_t length() const { return actions.size(); }
  bool operator<(const Trajectory& o) const {
    return actions != o.actions ? actions < o.actions : states < o.states;
  }
  bool operator==(const Trajectory& o) const {
    return actions == o.actions && states == o.states;
  }
};

// Cl_K(Y) by iterating M_K to its fixpoint; nullopt means undefined.
std::optional<LiteralSet> closure(const std::vector<StaticLaw>& k, const LiteralSet& y);

LiteralSet direct_effects(const DomainDescription& d, int action, const State& s);
bool is_executable(const DomainDescription& d, int action, const State& s);
bool is_state(const DomainDescription& d, const LiteralSet& s);

constexpr size_t kDefaultMaxFluents = 24;

// Phi(a,s), in canonical order. Throws CapExceeded above max_fluents.
std::vector<State> successors(const DomainDescription& d, int action, const State& s,
                              size_t max_fluents = kDefaultMaxFluents);

bool is_trajectory(const DomainDescription& d, const Trajectory& t,
                   size_t max_fluents = kDefaultMaxFluents);

// s0 from Gamma; nullopt if incomplete or inconsistent.
std::optional<State> initial_state(const DomainDescription& d, const InitialState& gamma);

struct ValidateOptions {
  bool check_consistency = false;  // every executable (a,s) has a successor
  bool check_determinism = true;   // over states reachable from s0
  size_t max_states = 1 << 16;
  size_t max_fluents = kDefaultMaxFluents;
};

struct ValidationReport {
  struct Violation {
    std::string kind;
    std::string detail;
  };
  std::vector<Violation> violations;
  std::optional<bool> deterministic;
  std::string nondeterminism_witness;
  std::optional<bool> consistent;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate_theory(const DomainDescription& d, const InitialState& gamma,
                                 const ValidateOptions& opt = {});

}  // namespace bplan
