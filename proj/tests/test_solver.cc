#include <doctest.h>

#include <random>

#include "bplan/error.h"
#include "support.h"

using namespace bplan;
using support::NameSet;

namespace {

std::set<NameSet> models(std::initializer_list<NameSet> ms) { return {ms}; }

}  // namespace

TEST_CASE("small programs") {
  GroundProgram even;
  even.add_rule("p", {}, {"q"}, "t");
  even.add_rule("q", {}, {"p"}, "t");
  CHECK(support::solver_answer_sets(even) == models({{"p"}, {"q"}}));

  GroundProgram odd;
  odd.add_rule("p", {}, {"p"}, "t");
  CHECK(support::solver_answer_sets(odd).empty());

  // positive loop: not founded
  GroundProgram loop;
  loop.add_rule("p", {"q"}, {}, "t");
  loop.add_rule("q", {"p"}, {}, "t");
  loop.add_rule("r", {}, {"p"}, "t");
  SolveStats st;
  auto as = enumerate(loop, {}, &st);
  CHECK(support::solver_answer_sets(loop) == models({{"r"}}));
  CHECK_FALSE(st.tight);

  GroundProgram choice;
  choice.add_choice(1, 1, {"a", "b"}, {}, {}, "t");
  choice.add_rule("c", {"a"}, {}, "t");
  CHECK(support::solver_answer_sets(choice) == models({{"a", "c"}, {"b"}}));
}

TEST_CASE("reduct and least model") {
  GroundProgram p;
  p.add_rule("a", {}, {"b"}, "t");
  p.add_rule("b", {"c"}, {}, "t");
  p.add_rule("c", {}, {}, "t");
  AnswerSet s = {p.find("a"), p.find("c")};
  std::sort(s.begin(), s.end());
  auto r = reduct(p, s);
  auto lm = least_model(r);
  REQUIRE(lm);
  CHECK(atom_names(p, *lm) == std::vector<std::string>{"a", "b", "c"});
  CHECK_FALSE(is_answer_set(p, s));
  AnswerSet good = {p.find("b"), p.find("c")};
  std::sort(good.begin(), good.end());
  CHECK(is_answer_set(p, good));
}

TEST_CASE("solver matches brute force on random normal programs") {
  std::mt19937 rng(19);
  for (int round = 0; round < 400; ++round) {
    auto g = support::random_program(rng, 3 + round % 8, 2 + round % 12, false);
    auto brute = support::brute_answer_sets(g);
    INFO(g.to_text());
    CHECK(support::solver_answer_sets(g) == brute);
    SolveConfig ex;
    ex.strategy = SolveConfig::Strategy::kExhaustive;
    CHECK(support::solver_answer_sets(g, ex) == brute);
  }
}

TEST_CASE("solver matches brute force on random choice programs") {
  std::mt19937 rng(23);
  for (int round = 0; round < 300; ++round) {
    auto g = support::random_program(rng, 3 + round % 8, 2 + round % 10, true);
    auto brute = support::brute_answer_sets(g);
    INFO(g.to_text());
    CHECK(support::solver_answer_sets(g) == brute);
    for (const auto& m : enumerate(g)) CHECK(is_answer_set(g, m));

    NameSet orig;
    for (size_t a = 0; a < g.num_atoms(); ++a) orig.insert(g.name(a));
    SolveConfig cfg;
    cfg.choice_mode = SolveConfig::ChoiceMode::kExpand;
    CHECK(support::project(support::solver_answer_sets(g, cfg), orig) == brute);
    // expansion is a plain normal program
    auto expanded = expand_choices(g);
    for (const auto& r : expanded.rules()) CHECK(r.kind != GroundRule::Kind::kChoice);
    CHECK(support::project(support::brute_answer_sets(expanded), orig) == brute);
  }
}

TEST_CASE("3-coloring counts") {
  CHECK(support::solver_answer_sets(support::coloring_program(3, {{0, 1}, {1, 2}, {0, 2}})).size() == 6);
  CHECK(support::solver_answer_sets(support::coloring_program(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})).empty());
  std::vector<std::pair<int, int>> c5 = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}};
  CHECK(support::solver_answer_sets(support::coloring_program(5, c5)).size() == support::count_colorings(5, c5));
}

TEST_CASE("projection, limits and caps") {
  GroundProgram g;
  g.add_choice(0, 1, {"a"}, {}, {}, "t");
  g.add_choice(0, 1, {"b"}, {}, {}, "t");
  CHECK(enumerate(g).size() == 4);
  SolveConfig proj;
  proj.project = {g.find("a")};
  auto ms = enumerate(g, proj);
  CHECK(ms.size() == 2);
  SolveConfig lim;
  lim.limit = 3;
  CHECK(enumerate(g, lim).size() == 3);

  auto big = support::coloring_program(8, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}});
  SolveConfig cap;
  cap.max_decisions = 5;
  CHECK_THROWS_AS(enumerate(big, cap), CapExceeded);
}

TEST_CASE("priority changes order only") {
  auto g = support::coloring_program(3, {{0, 1}, {1, 2}});
  SolveConfig pr;
  pr.priority = [](const std::string& n) { return n.find(",g)") != std::string::npos ? 0L : 1L; };
  CHECK(support::solver_answer_sets(g, pr) == support::solver_answer_sets(g));
}
