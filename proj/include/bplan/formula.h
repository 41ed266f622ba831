#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bplan/action_theory.h"
#include "bplan/term.h"

namespace bplan {

// Fluent formulas and temporal constraints share one immutable AST.
// Every node carries its canonical print, which doubles as its name in
// the logic-program encoding.
class Formula {
 public:
  enum class Kind {
    kLiteral,
    kAnd,
    kOr,
    kNegation,
    kForall,
    kExists,
    kGoal,
    kUntil,
    kAlways,
    kEventually,
    kNext,
  };

  Formula();  // the literal "true"-less placeholder; not meaningful
  static Formula literal(const Term& t);  // t is f(..) or -f(..)
  static Formula unary(Kind k, Formula a);
  static Formula binary(Kind k, Formula a, Formula b);
  static Formula quantifier(Kind k, std::string var, std::vector<Term> domain, Formula body);
  // Desugars implication to or(negation(a),b).
  static Formula implies(Formula a, Formula b);

  Kind kind() const { return n_->kind; }
  const Term& atom() const { return n_->atom; }
  size_t num_children() const { return n_->kids.size(); }
  const Formula& child(size_t i) const { return n_->kids[i]; }
  const std::string& var() const { return n_->var; }
  const std::vector<Term>& domain() const { return n_->domain; }
  const std::string& name() const { return n_->name; }
  const std::vector<std::string>& free_vars() const { return n_->free; }
  bool is_closed() const { return n_->free.empty(); }
  bool is_temporal() const { return n_->temporal; }
  bool has_goal() const { return n_->goal; }
  bool has_quantifier() const { return n_->quant; }
  int depth() const { return n_->depth; }
  const void* id() const { return n_.get(); }

  Formula substitute(const Subst& s) const;

  bool operator==(const Formula& o) const { return name() == o.name(); }
  bool operator<(const Formula& o) const { return name() < o.name(); }

 private:
  struct Node {
    Kind kind = Kind::kLiteral;
    Term atom;
    std::vector<Formula> kids;
    std::string var;
    std::vector<Term> domain;
    std::string name;
    std::vector<std::string> free;
    bool temporal = false, goal = false, quant = false;
    int depth = 0;
  };
  explicit Formula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  static Formula build(Node n);
  std::shared_ptr<const Node> n_;
};

const char* kind_name(Formula::Kind k);

// forall -> right-nested and, exists -> right-nested or, constants in the
// listed order. Throws InputError on an empty domain or free variables.
Formula ground_quantifiers(const Formula& f);

// Propositional truth in a complete state.
bool eval_state(const Signature& sig, const Formula& f, const State& s);

// I |= f at time t over the stutter extension of seq. goal must be given iff
// f mentions the goal operator; goal(l) holds iff l is in the goal set.
bool sat(const Signature& sig, const std::vector<State>& seq, const Formula& f,
         const std::optional<LiteralSet>& goal = std::nullopt, size_t t = 0);

// The fact table r(phi). Literals name themselves and contribute no facts.
struct FormulaTable {
  struct Node {
    std::string name;
    Formula::Kind kind;
    std::vector<std::string> kids;
  };
  std::vector<Node> nodes;  // children first, names unique

  void add(const Formula& f);  // f quantifier-free
  std::vector<std::string> facts() const;
  bool contains(const std::string& name) const;

 private:
  std::vector<std::string> seen_;
};

FormulaTable encode_formula(const Formula& f);

}  // namespace bplan
