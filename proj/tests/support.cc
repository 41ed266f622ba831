#include "support.h"

#include "bplan/error.h"

#include <algorithm>
#include <functional>
#include <map>

namespace support {

std::string corpus_path(const std::string& name) { return std::string(BPLAN_CORPUS_DIR) + "/" + name; }

ProblemFile load_corpus(const std::string& name) { return load_problem(corpus_path(name)); }

namespace {

bool all_in(const std::vector<AtomId>& xs, const std::vector<char>& s) {
  for (AtomId a : xs)
    if (!s[a]) return false;
  return true;
}

bool none_in(const std::vector<AtomId>& xs, const std::vector<char>& s) {
  for (AtomId a : xs)
    if (s[a]) return false;
  return true;
}

bool stable(const GroundProgram& p, const std::vector<char>& s) {
  const size_t n = p.num_atoms();
  using K = GroundRule::Kind;
  // definite rules of the reduct as (head, positive body)
  std::vector<std::pair<AtomId, const std::vector<AtomId>*>> defs;
  for (const auto& r : p.rules()) {
    bool body = all_in(r.pos, s) && none_in(r.neg, s);
    switch (r.kind) {
      case K::kConstraint:
        if (body) return false;
        break;
      case K::kChoice: {
        int chosen = 0;
        for (AtomId h : r.head) chosen += s[h];
        if (body && (chosen < r.lower || chosen > r.upper)) return false;
        if (none_in(r.neg, s))
          for (AtomId h : r.head)
            if (s[h]) defs.push_back({h, &r.pos});
        break;
      }
      case K::kNormal:
        if (none_in(r.neg, s)) defs.push_back({r.head[0], &r.pos});
        break;
    }
  }
  std::vector<char> lm(n, 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [h, pos] : defs)
      if (!lm[h] && all_in(*pos, lm)) {
        lm[h] = 1;
        changed = true;
      }
  }
  return lm == s;
}

}  // namespace

std::set<NameSet> brute_answer_sets(const GroundProgram& p) {
  const size_t n = p.num_atoms();
  if (n > 22) throw std::runtime_error("brute force limited to 22 atoms");
  std::set<NameSet> out;
  std::vector<char> s(n);
  for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
    for (size_t i = 0; i < n; ++i) s[i] = (mask >> i) & 1;
    if (!stable(p, s)) continue;
    NameSet m;
    for (size_t i = 0; i < n; ++i)
      if (s[i]) m.insert(p.name(static_cast<AtomId>(i)));
    out.insert(m);
  }
  return out;
}

std::set<NameSet> solver_answer_sets(const GroundProgram& p, const SolveConfig& cfg) {
  std::set<NameSet> out;
  for (const auto& m : enumerate(p, cfg)) {
    auto names = atom_names(p, m);
    out.insert(NameSet(names.begin(), names.end()));
  }
  return out;
}

std::set<NameSet> project(const std::set<NameSet>& models, const NameSet& atoms) {
  std::set<NameSet> out;
  for (const auto& m : models) {
    NameSet r;
    for (const auto& a : m)
      if (atoms.count(a)) r.insert(a);
    out.insert(r);
  }
  return out;
}

GroundProgram random_program(std::mt19937& rng, int atoms, int rules, bool choices) {
  GroundProgram g;
  auto name = [](int i) { return "a" + std::to_string(i); };
  for (int i = 0; i < atoms; ++i) g.atom(name(i));
  std::uniform_int_distribution<int> small(0, 2), kind(0, 9);
  // Choice heads are taken from the top atoms and never reused as heads,
  // which is the restriction expand_choice relies on.
  int next_choice = atoms;
  const int floor = choices ? atoms / 2 : atoms;
  auto any = [&]() { return name(std::uniform_int_distribution<int>(0, atoms - 1)(rng)); };
  auto normal_head = [&]() { return name(std::uniform_int_distribution<int>(0, std::max(floor, 1) - 1)(rng)); };
  for (int r = 0; r < rules; ++r) {
    std::vector<std::string> pos, neg;
    int np = small(rng), nn = small(rng);
    for (int i = 0; i < np; ++i) pos.push_back(any());
    for (int i = 0; i < nn; ++i) neg.push_back(any());
    int k = kind(rng);
    if (choices && k < 3 && next_choice > floor) {
      std::vector<std::string> heads;
      int nh = 1 + small(rng);
      while (static_cast<int>(heads.size()) < nh && next_choice > floor) heads.push_back(name(--next_choice));
      g.add_choice(k == 0 ? 1 : 0, 1, heads, pos, neg, "input");
    } else if (k == 3) {
      if (pos.empty() && neg.empty()) pos.push_back(any());
      g.add_constraint(pos, neg, "input");
    } else {
      g.add_rule(normal_head(), pos, neg, "input");
    }
  }
  return g;
}

Signature plain_signature(int fluents) {
  std::vector<Term> fl;
  for (int i = 0; i < fluents; ++i) fl.push_back(Term::constant("f" + std::to_string(i)));
  return Signature({}, fl, {Term::constant("noop")});
}

Formula random_formula(std::mt19937& rng, const Signature& sig, int depth) {
  std::uniform_int_distribution<int> pick_fluent(0, static_cast<int>(sig.num_fluents()) - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  auto leaf = [&]() {
    Literal l{pick_fluent(rng), coin(rng) == 1};
    return Formula::literal(literal_term(sig, l));
  };
  if (depth <= 0) return leaf();
  using FK = Formula::Kind;
  switch (std::uniform_int_distribution<int>(0, 8)(rng)) {
    case 0: return leaf();
    case 1: return Formula::binary(FK::kAnd, random_formula(rng, sig, depth - 1), random_formula(rng, sig, depth - 1));
    case 2: return Formula::binary(FK::kOr, random_formula(rng, sig, depth - 1), random_formula(rng, sig, depth - 1));
    case 3: return Formula::unary(FK::kNegation, random_formula(rng, sig, depth - 1));
    case 4: return Formula::binary(FK::kUntil, random_formula(rng, sig, depth - 1), random_formula(rng, sig, depth - 1));
    case 5: return Formula::unary(FK::kAlways, random_formula(rng, sig, depth - 1));
    case 6: return Formula::unary(FK::kEventually, random_formula(rng, sig, depth - 1));
    case 7: return Formula::unary(FK::kNext, random_formula(rng, sig, depth - 1));
    default: return Formula::binary(FK::kUntil, leaf(), random_formula(rng, sig, depth - 1));
  }
}

std::vector<State> random_sequence(std::mt19937& rng, const Signature& sig, size_t n) {
  std::vector<State> out;
  std::uniform_int_distribution<int> coin(0, 1);
  for (size_t t = 0; t <= n; ++t) {
    State s(sig.num_fluents());
    for (size_t f = 0; f < sig.num_fluents(); ++f) s.insert({static_cast<int>(f), coin(rng) == 1});
    out.push_back(s);
  }
  return out;
}

std::string toy_text() {
  return R"(% bplan-problem v1
sort obj = {x, y}.
fluent p(obj), q.
action on(obj), off(obj), flip.
causes(on(X), p(X), {}).
causes(off(X), -p(X), {}).
causes(flip, q, {-q}).
causes(flip, -q, {q}).
executable(on(X), {-p(X)}).
executable(off(X), {q}).
executable(flip, {}).
caused({p(x), p(y)}, q).
initially(-p(x)).
initially(-p(y)).
initially(-q).
horizon(2).
)";
}

ProblemFile toy_problem() { return parse_problem(toy_text()); }

namespace {

Term obj_term(std::mt19937& rng, bool var) {
  if (var && std::uniform_int_distribution<int>(0, 2)(rng) == 0) return Term::variable("X");
  return Term::constant(std::uniform_int_distribution<int>(0, 1)(rng) ? "x" : "y");
}

Formula toy_literal(std::mt19937& rng, bool var) {
  std::uniform_int_distribution<int> coin(0, 1);
  Term a = coin(rng) ? Term::compound("p", {obj_term(rng, var)}) : Term::constant("q");
  return Formula::literal(coin(rng) ? a : Term::negated(a));
}

Formula toy_condition(std::mt19937& rng, bool var) {
  using FK = Formula::Kind;
  switch (std::uniform_int_distribution<int>(0, 4)(rng)) {
    case 0: return Formula::binary(FK::kAnd, toy_literal(rng, var), toy_literal(rng, var));
    case 1: return Formula::binary(FK::kOr, toy_literal(rng, var), toy_literal(rng, var));
    case 2: return Formula::unary(FK::kNegation, toy_literal(rng, var));
    default: return toy_literal(rng, var);
  }
}

ComplexAction toy_golog(std::mt19937& rng, int depth, bool var) {
  using CA = ComplexAction;
  auto leaf = [&]() -> CA {
    switch (std::uniform_int_distribution<int>(0, 7)(rng)) {
      case 0:
      case 1: return CA::action(Term::compound("on", {obj_term(rng, var)}));
      case 2: return CA::action(Term::compound("off", {obj_term(rng, var)}));
      case 3:
      case 4: return CA::action(Term::constant("flip"));
      case 5:
      case 6: return CA::test(toy_condition(rng, var));
      default: return CA::null();
    }
  };
  if (depth <= 0) return leaf();
  switch (std::uniform_int_distribution<int>(0, 7)(rng)) {
    case 0: return leaf();
    case 1:
    case 2: return CA::seq(toy_golog(rng, depth - 1, var), toy_golog(rng, depth - 1, var));
    case 3: return CA::choice({toy_golog(rng, depth - 1, var), toy_golog(rng, depth - 1, var)});
    case 4:
      return CA::if_then_else(toy_condition(rng, var), toy_golog(rng, depth - 1, var),
                              toy_golog(rng, depth - 1, var));
    case 5: return CA::while_do(toy_condition(rng, var), toy_golog(rng, depth - 1, var));
    default:
      if (var) return CA::seq(toy_golog(rng, depth - 1, var), leaf());
      return CA::pick("X", {Term::constant("x"), Term::constant("y")}, toy_golog(rng, depth - 1, true));
  }
}

}  // namespace

ComplexAction random_golog(std::mt19937& rng, const Signature&, int depth) {
  return toy_golog(rng, depth, false);
}

ComplexAction random_htn(std::mt19937& rng, const Signature& sig, int max_tasks) {
  HtnNode h;
  h.label = Term::constant("top");
  int k = std::uniform_int_distribution<int>(1, max_tasks)(rng);
  for (int i = 0; i < k; ++i) {
    HtnTask t;
    t.label = Term::constant("t" + std::to_string(i + 1));
    t.body = random_golog(rng, sig, std::uniform_int_distribution<int>(0, 1)(rng));
    h.tasks.push_back(t);
  }
  std::uniform_int_distribution<int> pct(0, 99);
  int label = 0;
  auto next_label = [&]() { return Term::constant("c" + std::to_string(++label)); };
  auto task = [&](int i) { return *h.tasks[i].label; };
  // edges follow a random permutation, so the order is acyclic
  std::vector<int> perm(k);
  for (int i = 0; i < k; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::set<std::pair<int, int>> ordered;
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (pct(rng) < 35) {
        ordered.insert({perm[i], perm[j]});
        h.constraints.push_back({HtnConstraint::Kind::kOrder, next_label(), task(perm[i]), task(perm[j]), {}});
      }
  for (int i = 0; i < k; ++i) {
    if (pct(rng) < 30)
      h.constraints.push_back({HtnConstraint::Kind::kPrecondition, next_label(), task(i), {}, toy_condition(rng, false)});
    if (pct(rng) < 30)
      h.constraints.push_back({HtnConstraint::Kind::kPostcondition, next_label(), task(i), {}, toy_condition(rng, false)});
  }
  for (auto [a, b] : std::vector<std::pair<int, int>>(ordered.begin(), ordered.end()))
    if (pct(rng) < 40)
      h.constraints.push_back({HtnConstraint::Kind::kMaintain, next_label(), task(a), task(b), toy_literal(rng, false)});
  return ComplexAction::htn(std::move(h));
}

GroundProgram coloring_program(int vertices, const std::vector<std::pair<int, int>>& edges) {
  GroundProgram g;
  const char* colors[] = {"r", "b", "g"};
  auto col = [&](int u, int c) { return "color(" + std::to_string(u) + "," + colors[c] + ")"; };
  for (auto [u, v] : edges) g.add_fact("edge(" + std::to_string(u) + "," + std::to_string(v) + ")", "input");
  for (int u = 0; u < vertices; ++u)
    for (int c = 0; c < 3; ++c) g.add_rule(col(u, c), {}, {col(u, (c + 1) % 3), col(u, (c + 2) % 3)}, "input");
  for (auto [u, v] : edges)
    for (int c = 0; c < 3; ++c)
      g.add_constraint({col(u, c), col(v, c), "edge(" + std::to_string(u) + "," + std::to_string(v) + ")"}, {}, "input");
  return g;
}

size_t count_colorings(int vertices, const std::vector<std::pair<int, int>>& edges) {
  size_t total = 1, count = 0;
  for (int i = 0; i < vertices; ++i) total *= 3;
  for (size_t code = 0; code < total; ++code) {
    std::vector<int> c(vertices);
    size_t x = code;
    for (int i = 0; i < vertices; ++i, x /= 3) c[i] = static_cast<int>(x % 3);
    bool ok = true;
    for (auto [u, v] : edges) ok = ok && c[u] != c[v];
    count += ok;
  }
  return count;
}

std::set<Trajectory> trajectories(const PlanResult& r) {
  std::set<Trajectory> out;
  for (const auto& p : r.plans) out.insert(p.traj);
  return out;
}

}  // namespace support

namespace support {

Trajectory run(const PlanningProblem& p, const std::vector<std::string>& actions) {
  const auto& d = p.domain;
  Trajectory t;
  t.states.push_back(*initial_state(d, p.gamma));
  for (const auto& name : actions) {
    int a = d.sig().action_index(parse_ground_term(name));
    if (a < 0) throw InputError("unknown action " + name);
    auto next = successors(d, a, t.states.back());
    if (next.empty()) throw InputError(name + " is not executable");
    t.actions.push_back(a);
    t.states.push_back(next[0]);
  }
  return t;
}

}  // namespace support
