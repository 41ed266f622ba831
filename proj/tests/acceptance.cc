// One line per acceptance criterion. Exit status is the number of failures.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "bplan/error.h"
#include "support.h"

using namespace bplan;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, double limit_s, const std::function<Outcome()>& body) {
  auto start = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  bool in_time = limit_s <= 0 || secs < limit_s;
  bool pass = o.ok && in_time;
  if (!pass) ++failures;
  std::printf("criterion %d: %s  %s  [%.2fs", id, pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
  if (limit_s > 0) std::printf(" / limit %.0fs", limit_s);
  std::printf("]\n");
  std::fflush(stdout);
}

Outcome fail(const std::string& why) { return {false, why}; }

State lits(const Signature& sig, std::initializer_list<const char*> names) {
  State s(sig.num_fluents());
  for (const char* n : names) s.insert(resolve_literal(sig, parse_ground_term(n)));
  return s;
}

// Every trajectory of the base semantics that reaches the goal, including a
// trajectory cut short at a state where nothing is executable.
std::set<Trajectory> semantic_plans(const DomainDescription& d, const State& s0, const std::vector<Literal>& goal,
                                    size_t n) {
  std::set<Trajectory> out;
  Trajectory cur;
  cur.states.push_back(s0);
  std::function<void()> go = [&]() {
    const State s = cur.states.back();
    bool any = false;
    if (cur.length() < n) {
      for (size_t a = 0; a < d.sig().num_actions(); ++a)
        for (const auto& next : successors(d, static_cast<int>(a), s)) {
          any = true;
          cur.actions.push_back(static_cast<int>(a));
          cur.states.push_back(next);
          go();
          cur.actions.pop_back();
          cur.states.pop_back();
        }
    }
    if ((cur.length() == n || !any) && s.contains_all(goal)) out.insert(cur);
  };
  go();
  return out;
}

// All trajectories of length exactly n.
std::vector<Trajectory> all_trajectories(const DomainDescription& d, const State& s0, size_t n) {
  std::vector<Trajectory> out;
  Trajectory cur;
  cur.states.push_back(s0);
  std::function<void()> go = [&]() {
    if (cur.length() == n) {
      out.push_back(cur);
      return;
    }
    for (size_t a = 0; a < d.sig().num_actions(); ++a)
      for (const auto& next : successors(d, static_cast<int>(a), cur.states.back())) {
        cur.actions.push_back(static_cast<int>(a));
        cur.states.push_back(next);
        go();
        cur.actions.pop_back();
        cur.states.pop_back();
      }
  };
  go();
  return out;
}

std::string str(size_t v) { return std::to_string(v); }

}  // namespace

int main() {
  criterion(1, 1.0, [] {
    auto p = support::load_corpus("suitcase.bp").problem;
    const auto& d = p.domain;
    const auto& sig = d.sig();
    auto s0 = initial_state(d, p.gamma);
    if (!s0) return fail("no initial state");
    if (*s0 != lits(sig, {"up(l1)", "-up(l2)", "locked(s)", "-holding(k1)", "holding(k2)"})) return fail("s0 differs");
    struct Case {
      const char* action;
      State want;
    };
    std::vector<Case> cases = {
        {"open(l2)", lits(sig, {"up(l1)", "up(l2)", "-locked(s)", "-holding(k1)", "holding(k2)"})},
        {"close(l2)", lits(sig, {"up(l1)", "-up(l2)", "locked(s)", "-holding(k1)", "holding(k2)"})},
        {"close(l1)", lits(sig, {"-up(l1)", "-up(l2)", "locked(s)", "-holding(k1)", "holding(k2)"})},
    };
    for (const auto& c : cases) {
      auto got = successors(d, sig.action_index(parse_ground_term(c.action)), *s0);
      if (got != std::vector<State>{c.want}) return fail(std::string("Phi(") + c.action + ", s0) differs");
    }
    return Outcome{true, "three transitions from s0 match exactly"};
  });

  criterion(2, 1.0, [] {
    Signature sig({}, {Term::constant("f"), Term::constant("g"), Term::constant("h")}, {});
    Literal f{sig.fluent_index(Term::constant("f")), true};
    Literal g{sig.fluent_index(Term::constant("g")), true};
    Literal h{sig.fluent_index(Term::constant("h")), true};
    std::vector<StaticLaw> k = {{{f}, h}, {{f, g}, h.complement()}};
    LiteralSet y(3);
    y.insert(f);
    y.insert(g);
    if (closure(k, y)) return fail("closure is defined");
    auto models = enumerate(closure_program(sig, k, y, 0));
    if (!models.empty()) return fail("closure program has " + str(models.size()) + " answer set(s)");
    return Outcome{true, "closure undefined, closure program has no answer set"};
  });

  criterion(3, 5.0, [] {
    auto count = [](int v, const std::vector<std::pair<int, int>>& e) {
      return enumerate(support::coloring_program(v, e)).size();
    };
    size_t tri = count(3, {{0, 1}, {1, 2}, {0, 2}});
    if (tri != 6) return fail("triangle: " + str(tri));
    size_t k4 = count(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    if (k4 != 0) return fail("K4: " + str(k4));
    std::vector<std::pair<int, int>> k22 = {{0, 2}, {0, 3}, {1, 2}, {1, 3}};
    if (count(4, k22) != support::count_colorings(4, k22)) return fail("K2,2 differs from brute force");
    std::mt19937 rng(101);
    std::uniform_int_distribution<int> pct(0, 99);
    int graphs = 0;
    for (int v = 2; v <= 6; ++v)
      for (int rep = 0; rep < 6; ++rep, ++graphs) {
        std::vector<std::pair<int, int>> e;
        for (int a = 0; a < v; ++a)
          for (int b = a + 1; b < v; ++b)
            if (pct(rng) < 50) e.push_back({a, b});
        size_t got = count(v, e), want = support::count_colorings(v, e);
        if (got != want) return fail("random graph on " + str(v) + " vertices: " + str(got) + " vs " + str(want));
      }
    return Outcome{true, "triangle 6, K4 0, K2,2 and " + str(graphs) + " random graphs match brute force"};
  });

  criterion(4, 60.0, [] {
    auto p = support::load_corpus("suitcase.bp").problem;
    const auto& sig = p.domain.sig();
    auto s0 = *initial_state(p.domain, p.gamma);
    // every conjunction of literals over at most two distinct fluents
    std::vector<std::vector<Literal>> goals(1);
    const int nf = static_cast<int>(sig.num_fluents());
    for (int a = 0; a < nf; ++a)
      for (bool pa : {true, false}) {
        goals.push_back(std::vector<Literal>{Literal{a, pa}});
        for (int b = a + 1; b < nf; ++b)
          for (bool pb : {true, false}) goals.push_back(std::vector<Literal>{Literal{a, pa}, Literal{b, pb}});
      }
    size_t checked = 0, nonempty = 0;
    for (size_t n : {1, 2})
      for (const auto& goal : goals)
        for (auto occ : {EncodeOptions::Occ::kRules, EncodeOptions::Occ::kChoice}) {
          auto q = p;
          q.goal = goal;
          q.horizon = n;
          PlanOptions opt;
          opt.encode.occ = occ;
          auto asp = support::trajectories(plan_asp(q, opt));
          auto sem = semantic_plans(q.domain, s0, goal, n);
          ++checked;
          if (!sem.empty()) ++nonempty;
          if (asp != sem)
            return fail("goal of " + str(goal.size()) + " literal(s), n=" + str(n) + ": " + str(asp.size()) +
                        " decoded vs " + str(sem.size()) + " semantic");
        }
    return Outcome{true, str(checked) + " (goal, n, occ encoding) cases equal, " + str(nonempty) + " with plans"};
  });

  criterion(5, 120.0, [] {
    std::mt19937 rng(202);
    size_t pairs = 0, checks = 0;
    for (int round = 0; round < 250; ++round, ++pairs) {
      auto sig = support::plain_signature(1 + round % 4);
      auto phi = support::random_formula(rng, sig, 1 + round % 4);
      auto seq = support::random_sequence(rng, sig, std::uniform_int_distribution<size_t>(0, 4)(rng));
      auto g = formula_program(sig, {phi}, seq);
      auto ms = enumerate(g);
      if (ms.size() != 1) return fail(phi.name() + ": " + str(ms.size()) + " answer sets");
      std::set<std::string> model;
      for (auto a : ms[0]) model.insert(g.name(a));
      std::vector<Formula> subs;
      std::function<void(const Formula&)> walk = [&](const Formula& f) {
        for (size_t i = 0; i < f.num_children(); ++i) walk(f.child(i));
        subs.push_back(f);
      };
      walk(phi);
      for (const auto& s : subs)
        for (size_t t = 0; t < seq.size(); ++t, ++checks) {
          bool in = model.count("hf(" + s.name() + "," + str(t) + ")");
          if (in != sat(sig, seq, s, std::nullopt, t)) return fail(s.name() + " at " + str(t));
        }
    }
    return Outcome{true, str(pairs) + " pairs, " + str(checks) + " (subformula, time) checks, zero mismatches"};
  });

  criterion(6, 120.0, [] {
    std::mt19937 rng(303);
    auto base = support::toy_problem().problem;
    auto s0 = *initial_state(base.domain, base.gamma);
    size_t programs = 0, traces = 0, cases = 0;
    for (int round = 0; round < 200; ++round, ++programs) {
      auto p = base;
      p.knowledge = PlanningProblem::Knowledge::kProgram;
      p.program = GeneralProgram{};
      p.program->main = support::random_golog(rng, p.domain.sig(), 1 + round % 3);
      p.goal.reset();
      for (size_t n = 0; n <= 4; ++n, ++cases) {
        p.horizon = n;
        std::set<Trajectory> asp;
        for (const auto& pl : plan_asp(p).plans)
          if (pl.k() == n) asp.insert(pl.traj);
        std::set<Trajectory> sem;
        for (const auto& t : all_trajectories(p.domain, s0, n))
          if (is_trace(p.domain, *p.program, t).ok) sem.insert(t);
        for (const auto& t : asp)
          if (!sem.count(t)) return fail(p.program->main.name() + ": decoded trajectory is not a trace");
        for (const auto& t : sem)
          if (!asp.count(t)) return fail(p.program->main.name() + ": trace missing from answer sets");
        traces += sem.size();
      }
    }
    return Outcome{true, str(programs) + " programs x horizons 0..4 (" + str(cases) + " cases), " + str(traces) +
                             " traces matched both ways"};
  });

  criterion(7, 120.0, [] {
    auto blocks = support::load_corpus("blocks.bp").problem;
    PlanOptions opt;
    auto rep = cross_check(blocks, opt);
    if (!rep.agree) return fail("blocks: routes disagree");
    auto blocks_plans = plan_direct(blocks, opt);
    const auto& sig = blocks.domain.sig();
    std::vector<int> want = {sig.action_index(parse_ground_term("move(b,c)")),
                             sig.action_index(parse_ground_term("move(a,b)"))};
    if (blocks_plans.plans.size() != 1 || blocks_plans.plans[0].traj.actions != want)
      return fail("blocks: expected only move(b,c); move(a,b)");
    std::mt19937 rng(404);
    auto base = support::toy_problem().problem;
    size_t instances = 0, with_plans = 0, plans = 0;
    for (int round = 0; round < 100; ++round, ++instances) {
      auto p = base;
      p.knowledge = PlanningProblem::Knowledge::kProgram;
      p.program = GeneralProgram{};
      p.program->main = support::random_htn(rng, p.domain.sig(), 3);
      p.goal.reset();
      size_t found = 0;
      for (size_t n = 0; n <= 5; ++n) {
        p.horizon = n;
        auto r = cross_check(p, opt);
        if (!r.agree) return fail("generated instance " + str(round) + " n=" + str(n) + ": routes disagree");
        found += r.direct_count;
      }
      if (found) ++with_plans;
      plans += found;
    }
    return Outcome{true, "blocks admits one plan; " + str(instances) + " generated instances x horizons 0..5 agree (" +
                             str(with_plans) + " instances with plans, " + str(plans) + " plans)"};
  });

  criterion(8, 60.0, [] {
    std::string text = read_file(support::corpus_path("elevator3.bp"));
    std::string kept;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
      if (line.rfind("initially(", 0) != 0 && line.rfind("horizon(", 0) != 0) kept += line + "\n";
    PlanOptions opt;
    opt.prune = true;
    size_t instances = 0, runs = 0, plans = 0;
    for (int start = 0; start < 3; ++start)
      for (int mask = 0; mask < 8; ++mask) {
        if (__builtin_popcount(mask) > 2) continue;
        std::string init;
        for (int f = 0; f < 3; ++f) {
          init += std::string("initially(") + ((mask >> f) & 1 ? "" : "-") + "on(" + str(f) + ")).\n";
          init += std::string("initially(") + (f == start ? "" : "-") + "currentFloor(" + str(f) + ")).\n";
        }
        init += "initially(-opened).\n";
        auto p = parse_problem(kept + init).problem;
        ++instances;
        size_t found = 0;
        for (size_t n = 0; n <= 10; ++n, ++runs) {
          p.horizon = n;
          auto direct = plan_direct(p, opt);
          auto asp = plan_asp(p, opt);
          if (support::trajectories(direct) != support::trajectories(asp))
            return fail("start " + str(start) + " requests " + str(mask) + " n=" + str(n) + ": routes disagree");
          for (const auto& pl : direct.plans)
            if (!is_trace(p.domain, *p.program, pl.traj).ok) return fail("returned trajectory is not a trace");
          found += direct.plans.size();
        }
        if (found == 0) return fail("start " + str(start) + " requests " + str(mask) + ": no plan at any horizon");
        plans += found;
      }
    return Outcome{true, str(instances) + " instances x 11 horizons agree, " + str(plans) + " traces of control"};
  });

  criterion(9, 30.0, [] {
    std::mt19937 rng(505);
    size_t models = 0;
    for (int round = 0; round < 100; ++round) {
      int atoms = 4 + round % 9;
      auto g = support::random_program(rng, atoms, 3 + round % 10, true);
      support::NameSet orig;
      for (size_t a = 0; a < g.num_atoms(); ++a) orig.insert(g.name(a));
      SolveConfig ex;
      ex.choice_mode = SolveConfig::ChoiceMode::kExpand;
      auto native = support::solver_answer_sets(g);
      auto expanded = support::project(support::solver_answer_sets(g, ex), orig);
      if (native != expanded) return fail("program " + str(round) + " differs:\n" + g.to_text());
      models += native.size();
    }
    return Outcome{true, "100 programs, " + str(models) + " models, projected sets equal"};
  });

  return failures;
}
