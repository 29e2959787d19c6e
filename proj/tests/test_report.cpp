#include <catch_amalgamated.hpp>

#include "wpo/parse.hpp"
#include "wpo/report.hpp"

using namespace wpo;

TEST_CASE("poset JSON round-trip") {
  const FinPoset p = finposet_new(4, {{0, 1}, {1, 2}, {0, 3}});
  const FinPoset back = fin_poset_from_json(fin_poset_to_json(p));
  REQUIRE(back == p);
}

TEST_CASE("law verdicts survive JSON and replay") {
  Budget b;
  b.poset_size = 2;
  SECTION("a unarity failure replays from its serialized witness") {
    const Dilator t2 = make_tree2_dilator();
    const auto vs = check_dilator_laws(t2, {DilatorLaw::Unary}, b);
    REQUIRE_FALSE(vs.at(0).pass);
    const Json j = law_verdict_to_json(vs.at(0));
    REQUIRE(j.contains("law"));
    const LawVerdict parsed = law_verdict_from_json(j);
    REQUIRE(parsed.law == DilatorLaw::Unary);
    REQUIRE_FALSE(parsed.pass);
    REQUIRE(replay_law_violation(t2, parsed));
  }
  SECTION("the run-report check form replays too") {
    const Dilator t2 = make_tree2_dilator();
    const auto vs = check_dilator_laws(t2, {DilatorLaw::Unary}, b);
    const Json check{{"name", "unary"},
                     {"status", "fail"},
                     {"witness", law_witness_to_json(*vs.at(0).witness)}};
    REQUIRE(replay_law_violation(t2, law_verdict_from_json(check)));
  }
  SECTION("pass verdicts carry no witness") {
    const Dilator v = make_v_dilator(finite_order(2));
    const auto vs = check_dilator_laws(v, {DilatorLaw::Normal}, b);
    REQUIRE(vs.at(0).pass);
    const Json j = law_verdict_to_json(vs.at(0));
    REQUIRE_FALSE(j.contains("witness"));
    REQUIRE_FALSE(replay_law_violation(v, law_verdict_from_json(j)));
  }
}

TEST_CASE("run reports serialize deterministically") {
  RunReport r;
  r.command = "laws --dilator tree2";
  r.seed = 7;
  r.budgets = Json{{"poset_size", 3}};
  r.checks.push_back({"zeta", true, {}});
  r.checks.push_back({"alpha", false, Json("boom")});
  const Json j = run_report_to_json(r);
  // Checks come out sorted by name.
  REQUIRE(j["checks"][0]["name"] == "alpha");
  REQUIRE(j["checks"][1]["name"] == "zeta");
  // No timing field unless requested.
  REQUIRE_FALSE(j.contains("elapsed_ms"));
  REQUIRE(run_report_to_json(r).dump(2) == j.dump(2));
  r.elapsed_ms = 12;
  REQUIRE(run_report_to_json(r).contains("elapsed_ms"));
}

TEST_CASE("order spec parsing") {
  REQUIRE(parse_order_spec("finite:5").size == 5);
  REQUIRE(parse_order_spec("omega").linear);
  REQUIRE(parse_order_spec("omega_rev").compare(2, 1) == Cmp::Less);
  const CodedOrder s = parse_order_spec("sum(finite:2, prod(omega, finite:3))");
  REQUIRE_FALSE(s.linear);
  REQUIRE(s.compare(sum_left(0), sum_left(1)) == Cmp::Less);
  const CodedOrder l = parse_order_spec("lex(finite:2,finite:2)");
  REQUIRE(l.linear);
  REQUIRE_THROWS_AS(parse_order_spec("weird:3"), OrderError);
  REQUIRE_THROWS_AS(parse_order_spec("sum(omega)"), OrderError);
}

TEST_CASE("literals reject trailing garbage") {
  REQUIRE_THROWS_AS(parse_order_spec("finite:3x"), OrderError);
  REQUIRE_THROWS_AS(parse_injective_spec("affine:2,0junk"), OrderError);
  REQUIRE_THROWS_AS(parse_seq("0.0.1x"), OrderError);
  REQUIRE_THROWS_AS(parse_seq("0."), OrderError);
  REQUIRE_THROWS_AS(parse_exp2_term("2^x", omega_order()), OrderError);
  REQUIRE_THROWS_AS(parse_exp2_term("2^", omega_order()), OrderError);
  REQUIRE_THROWS_AS(parse_poset_spec("chain:abc", 0), OrderError);
}

TEST_CASE("dilator and injective map spec parsing") {
  REQUIRE(parse_dilator_spec("tree2").name == "tree2");
  REQUIRE(parse_dilator_spec("V:omega").name == "V:omega");
  REQUIRE(parse_dilator_spec("cons:sum(finite:1,finite:1)").name.substr(0, 4) ==
          "cons");
  REQUIRE_THROWS_AS(parse_dilator_spec("Q:omega"), OrderError);
  REQUIRE(parse_injective_spec("affine:2,0").apply(3) == 6);
  REQUIRE(parse_injective_spec("table:1:0,2:1").apply(2) == 1);
  REQUIRE_THROWS_AS(parse_injective_spec("affine:0,1"), NotInjective);
  REQUIRE_THROWS_AS(parse_injective_spec("nope"), OrderError);
}

TEST_CASE("poset text format") {
  const std::string text = "n=3\n0<1\n1<2\n";
  const FinPoset p = parse_fin_poset_text(text);
  REQUIRE(p.size() == 3);
  REQUIRE(p.leq(0, 2));  // closure applied
  const FinPoset back = parse_fin_poset_text(format_fin_poset_text(p));
  REQUIRE(back == p);
  REQUIRE_THROWS_AS(parse_fin_poset_text(std::string("m=3\n")), OrderError);
  REQUIRE_THROWS_AS(parse_fin_poset_text(std::string("n=2\n0-1\n")), OrderError);
}

TEST_CASE("poset spec strings") {
  const FinPoset chain = parse_poset_spec("chain:4", 0);
  REQUIRE(chain.leq(0, 3));
  const FinPoset anti = parse_poset_spec("antichain:3", 0);
  REQUIRE(anti.compare(0, 2) == Cmp::Incomparable);
  const FinPoset r1 = parse_poset_spec("random:5", 42);
  const FinPoset r2 = parse_poset_spec("random:5", 42);
  REQUIRE(r1 == r2);  // same seed, same poset
  REQUIRE(r1.size() == 5);
}
