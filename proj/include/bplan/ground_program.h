#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace bplan {

using AtomId = int;

struct GroundRule {
  enum class Kind { kNormal, kConstraint, kChoice };
  Kind kind = Kind::kNormal;
  std::vector<AtomId> head;  // one atom (normal), none (constraint), the choice set
  int lower = 0, upper = 1;  // choice bounds
  std::vector<AtomId> pos, neg;
  std::string tag;  // rule family that produced the rule
};

// Ground normal rules, constraints and restricted choice rules over an
// interned atom table. Atom names are canonical term prints.
class GroundProgram {
 public:
  AtomId atom(const std::string& name);
  AtomId find(const std::string& name) const;  // -1 when absent
  const std::string& name(AtomId a) const { return names_[a]; }
  size_t num_atoms() const { return names_.size(); }

  void add_fact(const std::string& head, const std::string& tag);
  void add_rule(const std::string& head, const std::vector<std::string>& pos,
                const std::vector<std::string>& neg, const std::string& tag);
  void add_constraint(const std::vector<std::string>& pos, const std::vector<std::string>& neg,
                      const std::string& tag);
  void add_choice(int lower, int upper, const std::vector<std::string>& heads,
                  const std::vector<std::string>& pos, const std::vector<std::string>& neg,
                  const std::string& tag);
  void add(GroundRule r) { rules_.push_back(std::move(r)); }

  const std::vector<GroundRule>& rules() const { return rules_; }
  std::vector<GroundRule>& mutable_rules() { return rules_; }

  // Removes rules with the given tag; returns how many were removed.
  size_t remove_tag(const std::string& tag);

  std::string rule_text(const GroundRule& r) const;
  // Canonical text: header, then one rule per line sorted by (tag, text),
  // duplicates dropped, each followed by its tag.
  std::string to_text() const;
  static GroundProgram parse(std::string_view text);

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, AtomId> index_;
  std::vector<GroundRule> rules_;
};

inline constexpr const char* kGroundHeader = "% bplan-ground v1";

}  // namespace bplan
