#include "bplan/action_theory.h"

#include <algorithm>
#include <deque>
#include <set>
#include <tuple>

#include "bplan/error.h"

namespace bplan {

Signature::Signature(std::vector<std::string> objects, std::vector<Term> fluents,
                     std::vector<Term> actions)
    : objects_(std::move(objects)), fluents_(std::move(fluents)), actions_(std::move(actions)) {
  std::sort(objects_.begin(), objects_.end());
  objects_.erase(std::unique(objects_.begin(), objects_.end()), objects_.end());
  for (auto* v : {&fluents_, &actions_}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  for (size_t i = 0; i < fluents_.size(); ++i) {
    if (!fluents_[i].is_ground() || fluents_[i].is_negation())
      throw InputError("fluent must be a ground atom: " + fluents_[i].str());
    fluent_idx_[fluents_[i].str()] = static_cast<int>(i);
    fluent_names_[fluents_[i].functor()] = fluents_[i].arity();
  }
  for (size_t i = 0; i < actions_.size(); ++i) {
    if (!actions_[i].is_ground()) throw InputError("action must be ground: " + actions_[i].str());
    action_idx_[actions_[i].str()] = static_cast<int>(i);
    action_names_[actions_[i].functor()] = actions_[i].arity();
  }
  for (const auto& [name, arity] : fluent_names_)
    if (action_names_.count(name))
      throw InputError("'" + name + "' is declared both as a fluent and as an action");
}

int Signature::fluent_index(const Term& t) const {
  auto it = fluent_idx_.find(t.str());
  return it == fluent_idx_.end() ? -1 : it->second;
}

int Signature::action_index(const Term& t) const {
  auto it = action_idx_.find(t.str());
  return it == action_idx_.end() ? -1 : it->second;
}

bool Signature::is_fluent_name(const std::string& name, size_t arity) const {
  auto it = fluent_names_.find(name);
  return it != fluent_names_.end() && it->second == arity;
}

bool Signature::is_action_name(const std::string& name, size_t arity) const {
  auto it = action_names_.find(name);
  return it != action_names_.end() && it->second == arity;
}

Term literal_term(const Signature& sig, Literal l) {
  const Term& f = sig.fluents().at(l.fluent);
  return l.positive ? f : Term::negated(f);
}

std::string literal_name(const Signature& sig, Literal l) { return literal_term(sig, l).str(); }

Literal resolve_literal(const Signature& sig, const Term& t) {
  bool pos = !t.is_negation();
  const Term& atom = pos ? t : t.args()[0];
  int idx = sig.fluent_index(atom);
  if (idx < 0) throw InputError("unknown fluent: " + atom.str());
  return {idx, pos};
}

bool LiteralSet::contains_all(const std::vector<Literal>& ls) const {
  for (const auto& l : ls)
    if (!contains(l)) return false;
  return true;
}

bool LiteralSet::consistent() const {
  for (auto b : bits_)
    if (b == 3) return false;
  return true;
}

bool LiteralSet::complete() const {
  for (auto b : bits_)
    if (b == 0) return false;
  return true;
}

size_t LiteralSet::size() const {
  size_t n = 0;
  for (auto b : bits_) n += (b & 1) + ((b >> 1) & 1);
  return n;
}

std::vector<Literal> LiteralSet::literals() const {
  std::vector<Literal> out;
  for (size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] & 2) out.push_back({static_cast<int>(i), false});
    if (bits_[i] & 1) out.push_back({static_cast<int>(i), true});
  }
  return out;
}

LiteralSet LiteralSet::intersect(const LiteralSet& o) const {
  LiteralSet r(bits_.size());
  for (size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = bits_[i] & o.bits_[i];
  return r;
}

void LiteralSet::insert_all(const LiteralSet& o) {
  for (size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
}

bool LiteralSet::subset_of(const LiteralSet& o) const {
  for (size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] & ~o.bits_[i]) return false;
  return true;
}

std::string format_literals(const Signature& sig, const LiteralSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& l : s.literals()) {
    if (!first) out += ", ";
    first = false;
    out += literal_name(sig, l);
  }
  return out + "}";
}

bool StaticLaw::operator<(const StaticLaw& o) const {
  return std::tie(head, body) < std::tie(o.head, o.body);
}

bool DynamicLaw::operator<(const DynamicLaw& o) const {
  return std::tie(action, effect, pre) < std::tie(o.action, o.effect, o.pre);
}

bool ExecutableLaw::operator<(const ExecutableLaw& o) const {
  return std::tie(action, cond) < std::tie(o.action, o.cond);
}

namespace {

template <class T>
void normalize(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void normalize_literals(std::vector<Literal>& v) { normalize(v); }

}  // namespace

DomainDescription::DomainDescription(Signature sig, std::vector<StaticLaw> statics,
                                     std::vector<DynamicLaw> dynamics,
                                     std::vector<ExecutableLaw> executables)
    : sig_(std::move(sig)),
      statics_(std::move(statics)),
      dynamics_(std::move(dynamics)),
      executables_(std::move(executables)) {
  int nf = static_cast<int>(sig_.num_fluents());
  int na = static_cast<int>(sig_.num_actions());
  auto check = [&](const std::vector<Literal>& ls) {
    for (const auto& l : ls)
      if (l.fluent < 0 || l.fluent >= nf) throw InputError("literal outside signature");
  };
  for (auto& s : statics_) {
    normalize_literals(s.body);
    check(s.body);
    check({s.head});
  }
  for (auto& d : dynamics_) {
    normalize_literals(d.pre);
    check(d.pre);
    check({d.effect});
    if (d.action < 0 || d.action >= na) throw InputError("action outside signature");
  }
  for (auto& e : executables_) {
    normalize_literals(e.cond);
    check(e.cond);
    if (e.action < 0 || e.action >= na) throw InputError("action outside signature");
  }
  normalize(statics_);
  normalize(dynamics_);
  normalize(executables_);
  dyn_by_action_.assign(na, {});
  exec_by_action_.assign(na, {});
  for (size_t i = 0; i < dynamics_.size(); ++i)
    dyn_by_action_[dynamics_[i].action].push_back(static_cast<int>(i));
  for (size_t i = 0; i < executables_.size(); ++i)
    exec_by_action_[executables_[i].action].push_back(static_cast<int>(i));
}

std::optional<LiteralSet> closure(const std::vector<StaticLaw>& k, const LiteralSet& y) {
  LiteralSet cur = y;
  bool changed = true;
  while (changed) {
    if (!cur.consistent()) return std::nullopt;
    changed = false;
    for (const auto& law : k) {
      if (!cur.contains(law.head) && cur.contains_all(law.body)) {
        cur.insert(law.head);
        changed = true;
      }
    }
  }
  if (!cur.consistent()) return std::nullopt;
  return cur;
}

LiteralSet direct_effects(const DomainDescription& d, int action, const State& s) {
  LiteralSet e(d.sig().num_fluents());
  for (int i : d.dynamics_of(action)) {
    const auto& law = d.dynamics()[i];
    if (s.contains_all(law.pre)) e.insert(law.effect);
  }
  return e;
}

bool is_executable(const DomainDescription& d, int action, const State& s) {
  for (int i : d.executables_of(action))
    if (s.contains_all(d.executables()[i].cond)) return true;
  return false;
}

bool is_state(const DomainDescription& d, const LiteralSet& s) {
  if (s.num_fluents() != d.sig().num_fluents() || !s.complete() || !s.consistent()) return false;
  auto c = closure(d.statics(), s);
  return c && *c == s;
}

std::vector<State> successors(const DomainDescription& d, int action, const State& s,
                              size_t max_fluents) {
  const size_t nf = d.sig().num_fluents();
  if (nf > max_fluents)
    throw CapExceeded("successor enumeration needs " + std::to_string(nf) +
                      " fluents, cap is " + std::to_string(max_fluents));
  std::vector<State> out;
  if (!is_executable(d, action, s)) return out;
  LiteralSet e = direct_effects(d, action, s);
  if (!e.consistent()) return out;
  std::vector<int> free;
  for (size_t f = 0; f < nf; ++f) {
    int fi = static_cast<int>(f);
    if (!e.contains({fi, true}) && !e.contains({fi, false})) free.push_back(fi);
  }
  if (d.statics().empty()) {
    // y must already be complete, so every free fluent keeps its value
    LiteralSet cand = e;
    for (int f : free) cand.insert({f, s.contains({f, true})});
    out.push_back(std::move(cand));
    return out;
  }
  const uint64_t total = uint64_t{1} << free.size();
  for (uint64_t mask = 0; mask < total; ++mask) {
    LiteralSet cand = e;
    for (size_t j = 0; j < free.size(); ++j) cand.insert({free[j], bool((mask >> j) & 1)});
    LiteralSet y = e;
    y.insert_all(s.intersect(cand));
    auto cl = closure(d.statics(), y);
    if (cl && *cl == cand) out.push_back(std::move(cand));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_trajectory(const DomainDescription& d, const Trajectory& t, size_t max_fluents) {
  if (t.states.size() != t.actions.size() + 1) return false;
  for (const auto& s : t.states)
    if (!is_state(d, s)) return false;
  for (size_t i = 0; i < t.actions.size(); ++i) {
    int a = t.actions[i];
    if (a < 0 || a >= static_cast<int>(d.sig().num_actions())) return false;
    auto next = successors(d, a, t.states[i], max_fluents);
    if (!std::binary_search(next.begin(), next.end(), t.states[i + 1])) return false;
  }
  return true;
}

std::optional<State> initial_state(const DomainDescription& d, const InitialState& gamma) {
  LiteralSet s(d.sig().num_fluents(), gamma.begin(), gamma.end());
  if (!s.complete() || !s.consistent()) return std::nullopt;
  return s;
}

ValidationReport validate_theory(const DomainDescription& d, const InitialState& gamma,
                                 const ValidateOptions& opt) {
  ValidationReport rep;
  const Signature& sig = d.sig();
  const size_t nf = sig.num_fluents();
  LiteralSet s0(nf);
  for (const auto& l : gamma) {
    if (l.fluent < 0 || static_cast<size_t>(l.fluent) >= nf) {
      rep.violations.push_back({"unknown-fluent", "initial literal outside the signature"});
      return rep;
    }
    s0.insert(l);
  }
  for (size_t f = 0; f < nf; ++f) {
    int fi = static_cast<int>(f);
    bool p = s0.contains({fi, true}), n = s0.contains({fi, false});
    if (p && n)
      rep.violations.push_back({"inconsistent-initial-state",
                                "both " + sig.fluents()[f].str() + " and -" +
                                    sig.fluents()[f].str() + " hold initially"});
    else if (!p && !n)
      rep.violations.push_back(
          {"incomplete-initial-state", "no initial value for " + sig.fluents()[f].str()});
  }
  if (!rep.ok()) return rep;
  auto cl = closure(d.statics(), s0);
  if (!cl || *cl != s0) {
    rep.violations.push_back({"initial-state-not-closed",
                              "the initial state violates a static causal law"});
    return rep;
  }

  if (opt.check_determinism) {
    std::set<State> seen{s0};
    std::deque<State> todo{s0};
    bool det = true, capped = false;
    while (!todo.empty() && det) {
      State s = todo.front();
      todo.pop_front();
      for (size_t a = 0; a < sig.num_actions(); ++a) {
        auto next = successors(d, static_cast<int>(a), s, opt.max_fluents);
        if (next.size() > 1) {
          det = false;
          rep.nondeterminism_witness = sig.actions()[a].str() + " in " + format_literals(sig, s) +
                                       " has " + std::to_string(next.size()) + " successors";
          break;
        }
        for (auto& n : next) {
          if (seen.size() >= opt.max_states) {
            capped = true;
            break;
          }
          if (seen.insert(n).second) todo.push_back(n);
        }
      }
    }
    if (!det || !capped) rep.deterministic = det;
  }

  if (opt.check_consistency) {
    if (nf < 63 && (uint64_t{1} << nf) <= opt.max_states) {
      bool cons = true;
      for (uint64_t mask = 0; mask < (uint64_t{1} << nf) && cons; ++mask) {
        LiteralSet s(nf);
        for (size_t f = 0; f < nf; ++f) s.insert({static_cast<int>(f), bool((mask >> f) & 1)});
        if (!is_state(d, s)) continue;
        for (size_t a = 0; a < sig.num_actions(); ++a) {
          int ai = static_cast<int>(a);
          if (is_executable(d, ai, s) && successors(d, ai, s, opt.max_fluents).empty()) {
            cons = false;
            rep.violations.push_back({"inconsistent-domain", sig.actions()[a].str() +
                                                                 " is executable in " +
                                                                 format_literals(sig, s) +
                                                                 " but has no successor"});
            break;
          }
        }
      }
      rep.consistent = cons;
    }
  }
  return rep;
}

}  // namespace bplan
