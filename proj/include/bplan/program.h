#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bplan/action_theory.h"
#include "bplan/formula.h"
#include "bplan/term.h"

namespace bplan {

struct HtnNode;

// Complex actions (GOLOG-style) plus HTN nodes. Immutable; every node has a
// canonical name used for memoization and for the encoding.
class ComplexAction {
 public:
  enum class Kind { kAction, kTest, kSeq, kChoice, kIf, kWhile, kPick, kCall, kNull, kHtn, kBare };

  ComplexAction();  // null
  static ComplexAction action(Term a);
  static ComplexAction test(Formula f);
  static ComplexAction seq(ComplexAction a, ComplexAction b);
  static ComplexAction choice(std::vector<ComplexAction> alts);
  static ComplexAction if_then_else(Formula c, ComplexAction a, ComplexAction b);
  static ComplexAction while_do(Formula c, ComplexAction body);
  static ComplexAction pick(std::string var, std::vector<Term> domain, ComplexAction body);
  static ComplexAction call(Term p);
  static ComplexAction null();
  static ComplexAction htn(HtnNode node);
  // Unresolved identifier from the parser: action, fluent test or call.
  static ComplexAction bare(Term t);

  Kind kind() const { return n_->kind; }
  const Term& term() const { return n_->term; }
  const Formula& formula() const { return n_->formula; }
  size_t num_children() const { return n_->kids.size(); }
  const ComplexAction& child(size_t i) const { return n_->kids[i]; }
  const std::vector<ComplexAction>& children() const { return n_->kids; }
  const std::string& var() const { return n_->var; }
  const std::vector<Term>& domain() const { return n_->domain; }
  const HtnNode& htn_node() const { return *n_->htn; }
  const std::string& name() const { return n_->name; }
  bool is_ground() const { return n_->free.empty(); }
  const std::vector<std::string>& free_vars() const { return n_->free; }
  bool is_leaf() const;
  const void* id() const { return n_.get(); }

  // Also grounds quantifiers of formulas that become closed.
  ComplexAction substitute(const Subst& s) const;
  // The body of a pick for one of its constants.
  ComplexAction pick_instance(const Term& c) const;

 private:
  struct Node {
    Kind kind = Kind::kNull;
    Term term;
    Formula formula;
    std::vector<ComplexAction> kids;
    std::string var;
    std::vector<Term> domain;
    std::shared_ptr<const HtnNode> htn;
    std::string name;
    std::vector<std::string> free;
  };
  explicit ComplexAction(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  static ComplexAction build(Node n);
  std::shared_ptr<const Node> n_;
};

struct HtnTask {
  std::optional<Term> label;
  ComplexAction body;
  std::string name() const { return label ? label->str() : body.name(); }
};

struct HtnConstraint {
  enum class Kind { kOrder, kPrecondition, kPostcondition, kMaintain };
  Kind kind = Kind::kOrder;
  Term label;
  Term first;   // order: earlier task; pre: the task; post/maintain: first task
  Term second;  // order: later task; maintain: second task
  Formula formula;
};

const char* constraint_kind_name(HtnConstraint::Kind k);

struct HtnNode {
  std::optional<Term> label;
  std::vector<HtnTask> tasks;
  std::vector<HtnConstraint> constraints;

  std::string name() const;
  int task_index(const Term& ref) const;  // -1 when unknown
};

struct Procedure {
  std::string name;
  std::vector<std::string> params;
  std::vector<std::vector<Term>> domains;  // one per parameter
  ComplexAction body;
};

class ProcedureTable {
 public:
  void add(Procedure p);  // throws on duplicate name/arity
  const Procedure* find(const std::string& name, size_t arity) const;
  const std::map<std::pair<std::string, size_t>, Procedure>& all() const { return procs_; }
  // body(c...) for a ground call p(c...).
  ComplexAction instantiate(const Term& call) const;

 private:
  std::map<std::pair<std::string, size_t>, Procedure> procs_;
};

struct GeneralProgram {
  ProcedureTable procs;
  ComplexAction main;
};

ComplexAction ground_complex(const ComplexAction& d, const Subst& s);

// Names of the actions, formulas and procedure calls d may depend on.
std::set<std::string> prim(const ComplexAction& d, const ProcedureTable& procs);

struct CoherenceReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};
CoherenceReport check_coherent(const ProcedureTable& procs);

// Structural checks: ground main, known actions/fluents/procedures,
// non-empty pick domains, valid HTN task references, acyclic HTN order.
// Throws InputError with a diagnostic.
void validate_program(const Signature& sig, const GeneralProgram& p);

// All procedure calls reachable from main, in canonical order.
std::vector<Term> reachable_calls(const GeneralProgram& p);

struct HtnSegment {
  int task;
  size_t begin, end;
};

struct TraceResult {
  bool ok = false;
  // Segmentation found for a top-level HTN node.
  std::vector<HtnSegment> witness;
};

TraceResult is_trace(const DomainDescription& d, const GeneralProgram& p, const Trajectory& t);

// Trace check of a ground node on states[i..j]; the shared memo makes
// repeated queries over one trajectory cheap.
class TraceChecker {
 public:
  TraceChecker(const DomainDescription& d, const ProcedureTable& procs, const Trajectory& t);
  bool trace(const ComplexAction& node, size_t i, size_t j);
  // Ignoring one constraint (by index) of the given HTN node; for diagnostics.
  bool htn_trace(const HtnNode& h, size_t i, size_t j, int skip_constraint,
                 std::vector<HtnSegment>* witness);
  // Could a trace of node start at i and end strictly after k, given
  // only states/actions up to k? Over-approximates; used for pruning.
  bool may_extend(const ComplexAction& node, size_t i, size_t k);

 private:
  bool compute(const ComplexAction& node, size_t i, size_t j);
  bool holds(const Formula& f, size_t i);
  const ComplexAction& instance(const ComplexAction& node, const Term* c);

  const DomainDescription& d_;
  const ProcedureTable& procs_;
  const Trajectory& t_;
  std::map<std::tuple<const void*, size_t, size_t>, int8_t> memo_, ext_memo_;
  std::map<std::string, ComplexAction> instances_;
  std::map<std::pair<const void*, size_t>, bool> formula_memo_;
};

}  // namespace bplan
