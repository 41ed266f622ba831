#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace bplan {

class Term;
using Subst = std::map<std::string, Term>;

// Immutable first-order term. Equality and ordering go through the
// canonical print, which is computed once at construction.
class Term {
 public:
  Term();
  static Term constant(std::string name);
  static Term variable(std::string name);
  static Term compound(std::string functor, std::vector<Term> args);
  static Term integer(long v) { return constant(std::to_string(v)); }
  // Classical negation of a fluent atom, printed -f(..).
  static Term negated(const Term& atom) { return compound("-", {atom}); }

  const std::string& functor() const { return node_->functor; }
  const std::vector<Term>& args() const { return node_->args; }
  size_t arity() const { return node_->args.size(); }
  bool is_variable() const { return node_->variable; }
  bool is_negation() const { return node_->functor == "-" && arity() == 1; }
  bool is_ground() const { return node_->ground; }
  bool is_integer() const;
  long as_integer() const;
  const std::string& str() const { return node_->text; }

  Term substitute(const Subst& s) const;
  void collect_variables(std::vector<std::string>& out) const;

  bool operator==(const Term& o) const { return str() == o.str(); }
  bool operator!=(const Term& o) const { return str() != o.str(); }
  bool operator<(const Term& o) const { return str() < o.str(); }

 private:
  struct Node {
    std::string functor;
    std::vector<Term> args;
    bool variable = false;
    bool ground = true;
    std::string text;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Parses a ground term such as  holds(-up(l1),0). Every identifier is a
// constant here; variables only exist in problem files.
Term parse_ground_term(std::string_view text);

}  // namespace bplan
