#include <doctest.h>

#include "bplan/error.h"
#include "support.h"

using namespace bplan;

TEST_CASE("rule text") {
  GroundProgram g;
  g.add_fact("p", "t");
  g.add_rule("q", {"p"}, {"r"}, "t");
  g.add_constraint({"q"}, {"p"}, "t");
  g.add_choice(0, 1, {"a", "b"}, {"p"}, {}, "t");
  CHECK(g.rule_text(g.rules()[0]) == "p.");
  CHECK(g.rule_text(g.rules()[1]) == "q :- p, not r.");
  CHECK(g.rule_text(g.rules()[2]) == ":- q, not p.");
  CHECK(g.rule_text(g.rules()[3]) == "0 {a; b} 1 :- p.");
  CHECK(g.find("r") >= 0);
  CHECK(g.find("zz") == -1);
}

TEST_CASE("canonical text round trips") {
  auto pf = support::load_corpus("elevator2.bp");
  auto g = encode_problem(pf.problem);
  std::string text = g.to_text();
  CHECK(text.rfind(kGroundHeader, 0) == 0);
  auto back = GroundProgram::parse(text);
  CHECK(back.to_text() == text);
  CHECK(support::solver_answer_sets(back) == support::solver_answer_sets(g));

  auto ch = encode_problem(pf.problem, {EncodeOptions::Occ::kChoice, false});
  CHECK(GroundProgram::parse(ch.to_text()).to_text() == ch.to_text());
}

TEST_CASE("duplicates collapse and tags are kept") {
  GroundProgram g;
  g.add_fact("p", "one");
  g.add_fact("p", "one");
  g.add_rule("q", {"p"}, {}, "two");
  auto text = g.to_text();
  CHECK(text == std::string(kGroundHeader) + "\np.  % [one]\nq :- p.  % [two]\n");
  CHECK(g.remove_tag("one") == 2);
  CHECK(g.rules().size() == 1);
}

TEST_CASE("malformed ground text is rejected") {
  CHECK_THROWS_AS(GroundProgram::parse("% bplan-ground v9\np.\n"), InputError);
  CHECK_THROWS_AS(GroundProgram::parse(std::string(kGroundHeader) + "\np :- q\n"), InputError);
  CHECK_THROWS_AS(GroundProgram::parse(std::string(kGroundHeader) + "\n2 {a; b} 3.\n"), InputError);
  GroundProgram g;
  CHECK_THROWS_AS(g.add_choice(0, 2, {"a"}, {}, {}, "t"), InputError);
}
