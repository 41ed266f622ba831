#include <doctest.h>

#include <random>

#include "bplan/error.h"
#include "support.h"

using namespace bplan;
using FK = Formula::Kind;

namespace {

void subformulas(const Formula& f, std::vector<Formula>& out) {
  for (size_t i = 0; i < f.num_children(); ++i) subformulas(f.child(i), out);
  out.push_back(f);
}

std::string hf(const Formula& f, size_t t) { return "hf(" + f.name() + "," + std::to_string(t) + ")"; }

std::set<std::string> tags(const GroundProgram& g) {
  std::set<std::string> out;
  for (const auto& r : g.rules()) out.insert(r.tag);
  return out;
}

PlanningProblem toy(const std::string& extra, size_t n) {
  auto p = parse_problem(support::toy_text() + extra + "\n").problem;
  p.horizon = n;
  return p;
}

}  // namespace

TEST_CASE("one step of the suitcase program yields every transition") {
  auto pf = support::load_corpus("suitcase.bp");
  const auto& d = pf.problem.domain;
  const auto& sig = d.sig();
  auto s0 = *initial_state(d, pf.problem.gamma);
  for (auto occ : {EncodeOptions::Occ::kRules, EncodeOptions::Occ::kChoice}) {
    auto g = encode_base(d, pf.problem.gamma, {}, 1, {occ, false});
    std::set<std::pair<int, State>> got, want;
    for (const auto& m : enumerate(g)) {
      std::set<std::string> names;
      for (auto a : m) names.insert(g.name(a));
      int act = -1;
      for (size_t a = 0; a < sig.num_actions(); ++a)
        if (names.count(occ_atom(sig, a, 0))) {
          CHECK(act == -1);
          act = static_cast<int>(a);
        }
      State s1(sig.num_fluents());
      for (size_t f = 0; f < sig.num_fluents(); ++f)
        for (bool pos : {true, false})
          if (names.count(holds_atom(sig, {static_cast<int>(f), pos}, 1))) s1.insert({static_cast<int>(f), pos});
      got.insert({act, s1});
    }
    for (size_t a = 0; a < sig.num_actions(); ++a)
      for (const auto& s1 : successors(d, a, s0)) want.insert({static_cast<int>(a), s1});
    CHECK(got == want);
  }
}

TEST_CASE("closure program has one answer set iff the closure is defined") {
  std::mt19937 rng(5);
  Signature sig({}, {Term::constant("f"), Term::constant("g"), Term::constant("h")}, {});
  Literal f{sig.fluent_index(Term::constant("f")), true};
  Literal g{sig.fluent_index(Term::constant("g")), true};
  Literal h{sig.fluent_index(Term::constant("h")), true};
  LiteralSet fg(3);
  fg.insert(f);
  fg.insert(g);
  CHECK(enumerate(closure_program(sig, {{{f}, h}, {{f, g}, h.complement()}}, fg, 0)).empty());

  std::uniform_int_distribution<int> fl(0, 2), coin(0, 1), cnt(0, 3);
  auto rl = [&]() { return Literal{fl(rng), coin(rng) == 1}; };
  for (int round = 0; round < 200; ++round) {
    std::vector<StaticLaw> k;
    for (int i = cnt(rng); i > 0; --i) {
      StaticLaw law;
      for (int j = coin(rng) + coin(rng); j > 0; --j) law.body.push_back(rl());
      law.head = rl();
      k.push_back(law);
    }
    LiteralSet y(3);
    for (int i = cnt(rng); i > 0; --i) y.insert(rl());
    auto cl = closure(k, y);
    auto prog = closure_program(sig, k, y, 2);
    auto ms = enumerate(prog);
    if (!cl) {
      CHECK(ms.empty());
      continue;
    }
    REQUIRE(ms.size() == 1);
    std::set<std::string> holds;
    for (auto a : ms[0])
      if (prog.name(a).rfind("holds(", 0) == 0) holds.insert(prog.name(a));
    std::set<std::string> want;
    for (auto l : cl->literals()) want.insert(holds_atom(sig, l, 2));
    CHECK(holds == want);
  }
}

TEST_CASE("formula program agrees with sat") {
  std::mt19937 rng(29);
  for (int round = 0; round < 120; ++round) {
    auto sig = support::plain_signature(1 + round % 4);
    auto phi = support::random_formula(rng, sig, 1 + round % 4);
    auto seq = support::random_sequence(rng, sig, round % 5);
    auto g = formula_program(sig, {phi}, seq);
    auto ms = enumerate(g);
    REQUIRE(ms.size() == 1);
    std::set<std::string> model;
    for (auto a : ms[0]) model.insert(g.name(a));
    std::vector<Formula> subs;
    subformulas(phi, subs);
    for (const auto& s : subs)
      for (size_t t = 0; t < seq.size(); ++t) {
        INFO(s.name(), " at ", t);
        CHECK(model.count(hf(s, t)) == sat(sig, seq, s, std::nullopt, t));
      }
  }
}

TEST_CASE("published until and next rules differ from the semantics") {
  Signature sig({}, {Term::constant("f"), Term::constant("g")}, {});
  State s0(2), s1(2);
  s0.insert({0, true});
  s0.insert({1, false});
  s1.insert({0, false});
  s1.insert({1, true});
  std::vector<State> seq = {s0, s1};
  auto until = Formula::binary(FK::kUntil, Formula::literal(Term::constant("f")), Formula::literal(Term::constant("g")));
  auto next = Formula::unary(FK::kNext, Formula::literal(Term::constant("g")));
  REQUIRE(sat(sig, seq, until));
  REQUIRE(sat(sig, seq, next, std::nullopt, 1));

  auto holds_in = [&](const GroundProgram& g, const std::string& atom) {
    auto ms = enumerate(g);
    REQUIRE(ms.size() == 1);
    for (auto a : ms[0])
      if (g.name(a) == atom) return true;
    return false;
  };
  auto fixed = formula_program(sig, {until, next}, seq);
  auto literal = formula_program(sig, {until, next}, seq, {EncodeOptions::Occ::kRules, true});
  CHECK(holds_in(fixed, hf(until, 0)));
  CHECK_FALSE(holds_in(literal, hf(until, 0)));
  CHECK(holds_in(fixed, hf(next, 1)));
  CHECK_FALSE(holds_in(literal, hf(next, 1)));
}

TEST_CASE("published htn rules admit gaps and skip the maintain endpoints") {
  PlanOptions lit;
  lit.encode.literal_rules = true;

  auto gap = toy("main htn top { task a: on(x). task b: on(y). }.", 3);
  auto direct = support::trajectories(plan_direct(gap));
  CHECK(support::trajectories(plan_asp(gap)) == direct);
  auto loose = support::trajectories(plan_asp(gap, lit));
  CHECK(loose.size() > direct.size());
  for (const auto& t : direct) CHECK(loose.count(t));

  auto maintain = toy("main htn top { task a: flip. task b: on(x). order o: a < b. maintain m: a, -q, b. }.", 2);
  CHECK(plan_direct(maintain).plans.empty());
  CHECK(plan_asp(maintain).plans.empty());
  CHECK(plan_asp(maintain, lit).plans.size() == 1);
}

TEST_CASE("blocks program facts") {
  auto pf = support::load_corpus("blocks.bp");
  auto facts = program_facts(*pf.problem.program);
  std::set<std::string> got(facts.begin(), facts.end());
  for (const char* f : {"htn(tower,tasks(tower),constraints(tower))", "set(tasks(tower))", "set(constraints(tower))",
                        "in(move(b,c),tasks(tower))", "in(move(a,b),tasks(tower))", "in(o,constraints(tower))",
                        "in(f1,constraints(tower))", "in(f4,constraints(tower))", "order(o,move(b,c),move(a,b))",
                        "precondition(f1,clear(b),move(b,c))", "precondition(f2,clear(c),move(b,c))",
                        "precondition(f3,clear(b),move(a,b))", "precondition(f4,clear(a),move(a,b))"})
    CHECK_MESSAGE(got.count(f), f);
  CHECK(got.size() == 15);
}

TEST_CASE("elevator program facts") {
  auto pf = support::load_corpus("elevator2.bp");
  auto facts = program_facts(*pf.problem.program);
  std::set<std::string> got(facts.begin(), facts.end());
  for (const char* f : {"choiceAction(go_floor(0))", "in(currentFloor(0),go_floor(0))", "in(up(0),go_floor(0))",
                        "in(down(0),go_floor(0))", "sequence(serve(1),go_floor(1),seq(turnoff(1),seq(open,close)))"})
    CHECK_MESSAGE(got.count(f), f);
}

TEST_CASE("every rule family is emitted and documented") {
  std::set<std::string> seen;
  auto add = [&](const GroundProgram& g) {
    auto t = tags(g);
    seen.insert(t.begin(), t.end());
  };
  for (const char* name : {"suitcase.bp", "toggle.bp", "elevator2.bp", "blocks.bp", "suitcase_htn.bp"}) {
    auto pf = support::load_corpus(name);
    add(encode_problem(pf.problem));
    add(encode_problem(pf.problem, {EncodeOptions::Occ::kChoice, false}));
  }
  add(encode_problem(toy("main null; flip.", 1)));
  add(encode_problem(toy("main htn top { task a: on(x). task b: flip. order o: a < b. "
                         "postcondition p: b, q. maintain m: a, p(x), b. }.", 2)));
  auto t = toy("", 2);
  t.knowledge = PlanningProblem::Knowledge::kTemporal;
  t.goal = std::vector<Literal>{resolve_literal(t.domain.sig(), parse_ground_term("q"))};
  t.temporal = parse_formula(t.domain.sig(),
                             "and(until(-q, q), and(eventually(goal(q)), and(next(q), always(or(q, negation(q))))))");
  add(encode_problem(t));

  const auto& fams = rule_families();
  std::set<std::string> documented(fams.begin(), fams.end());
  for (const auto& s : seen) CHECK_MESSAGE(documented.count(s), s);
  for (const auto& f : documented) CHECK_MESSAGE(seen.count(f), f);
}

TEST_CASE("goal constraint is only kept when a goal is given") {
  auto with_goal = support::load_corpus("suitcase_htn.bp").problem;
  CHECK(tags(encode_problem(with_goal)).count("goal_constraint"));
  auto without = with_goal;
  without.goal.reset();
  CHECK_FALSE(tags(encode_problem(without)).count("goal_constraint"));
}

TEST_CASE("htn programs keep their answer sets when choices are expanded") {
  for (const char* name : {"blocks.bp", "suitcase_htn.bp"}) {
    auto pf = support::load_corpus(name);
    auto g = encode_problem(pf.problem);
    support::NameSet orig;
    for (size_t a = 0; a < g.num_atoms(); ++a) orig.insert(g.name(a));
    SolveConfig ex;
    ex.choice_mode = SolveConfig::ChoiceMode::kExpand;
    CHECK(support::project(support::solver_answer_sets(g, ex), orig) == support::solver_answer_sets(g));
  }
}
