#include <catch_amalgamated.hpp>

#include "wpo/dilators.hpp"
#include "wpo/parse.hpp"

using namespace wpo;

namespace {

const std::set<DilatorLaw> kAllLaws{
    DilatorLaw::Functor,   DilatorLaw::Naturality, DilatorLaw::SupportCondition,
    DilatorLaw::Normal,    DilatorLaw::Unary,      DilatorLaw::Monotone};

/// Wraps a dilator with a support function that lies about one element,
/// breaking naturality on purpose.
Dilator broken_naturality(Dilator d) {
  auto orig = d.supp;
  d.name += "+broken-supp";
  d.supp = [orig](const CodedOrder& x, Code e) {
    auto s = orig(x, e);
    if (e == sum_right(0) && !s.empty()) s.clear();
    return s;
  };
  return d;
}

}  // namespace

TEST_CASE("poset enumeration counts") {
  REQUIRE(enumerate_fin_posets(0).size() == 1);
  REQUIRE(enumerate_fin_posets(1).size() == 1);
  REQUIRE(enumerate_fin_posets(2).size() == 3);
  REQUIRE(enumerate_fin_posets(3).size() == 19);
}

TEST_CASE("builtin element enumerations") {
  SECTION("the sum dilator over the empty poset only has parameter elements") {
    const Dilator v = make_v_dilator(omega_order());
    const CodedOrder empty = poset_order(finposet_new(0, {}));
    const auto elems = v.elements(empty, 8);
    REQUIRE(elems.size() == 8);
    for (Code e : elems) {
      REQUIRE(e % 2 == 0);  // all in the parameter summand
      REQUIRE(v.supp(empty, e).empty());
    }
  }
  SECTION("the labelled product dilator over a point has two elements") {
    const Dilator w = make_w_dilator(finite_order(1));
    const CodedOrder point = poset_order(finposet_new(1, {}));
    const auto elems = w.elements(point, 16);
    REQUIRE(elems.size() == 2);
    REQUIRE(elems[0] == 0);
    REQUIRE(w.supp(point, elems[0]).empty());
    REQUIRE(w.supp(point, elems[1]) == std::vector<Code>{0});
  }
  SECTION("pair elements support both components") {
    const Dilator t2 = make_tree2_dilator();
    const CodedOrder anti = poset_order(finposet_new(2, {}));
    bool found = false;
    for (Code e : t2.elements(anti, 16))
      if (t2.supp(anti, e).size() == 2) {
        REQUIRE(t2.supp(anti, e) == std::vector<Code>{0, 1});
        found = true;
      }
    REQUIRE(found);
  }
}

TEST_CASE("law suite on the builtin family") {
  Budget b;
  b.poset_size = 2;  // keep the unit suite quick; acceptance runs size 3
  for (const std::string spec :
       {"V:finite:2", "W:finite:2", "cons:sum(finite:1,finite:1)"}) {
    const auto vs = check_dilator_laws(parse_dilator_spec(spec), kAllLaws, b);
    for (const auto& v : vs) {
      INFO(spec << " law " << law_name(v.law));
      REQUIRE(v.pass);
    }
  }
  SECTION("infinite parameter orders do not produce spurious failures") {
    for (const std::string spec : {"V:omega", "W:omega"}) {
      const auto vs = check_dilator_laws(parse_dilator_spec(spec), kAllLaws, b);
      for (const auto& v : vs) {
        INFO(spec << " law " << law_name(v.law));
        REQUIRE(v.pass);
      }
    }
  }
  SECTION("the pairing dilator fails exactly unarity") {
    const auto vs = check_dilator_laws(make_tree2_dilator(), kAllLaws, b);
    for (const auto& v : vs) {
      INFO(law_name(v.law));
      if (v.law == DilatorLaw::Unary) {
        REQUIRE_FALSE(v.pass);
        REQUIRE(v.witness.has_value());
        const CodedOrder x = poset_order(v.witness->posets.at(0));
        REQUIRE(make_tree2_dilator().supp(x, v.witness->elements.at(0)).size() ==
                2);
      } else {
        REQUIRE(v.pass);
      }
    }
  }
}

TEST_CASE("fail witnesses replay as violations") {
  Budget b;
  b.poset_size = 2;
  SECTION("unarity witness") {
    const Dilator t2 = make_tree2_dilator();
    const auto vs = check_dilator_laws(t2, {DilatorLaw::Unary}, b);
    REQUIRE_FALSE(vs.at(0).pass);
    REQUIRE(replay_law_violation(t2, vs.at(0)));
  }
  SECTION("injected naturality fault is caught and replays") {
    const Dilator bad = broken_naturality(make_v_dilator(finite_order(2)));
    const auto vs = check_dilator_laws(bad, {DilatorLaw::Naturality}, b);
    REQUIRE_FALSE(vs.at(0).pass);
    REQUIRE(replay_law_violation(bad, vs.at(0)));
    // The witness does not replay against the healthy dilator.
    REQUIRE_FALSE(replay_law_violation(make_v_dilator(finite_order(2)), vs.at(0)));
  }
}

TEST_CASE("application orders satisfy the poset axioms") {
  const std::vector<Dilator> family = {
      make_v_dilator(finite_order(2)), make_w_dilator(finite_order(2)),
      make_cons_dilator(sum_order(finite_order(1), finite_order(1))),
      make_tree2_dilator()};
  for (const auto& d : family)
    for (std::size_t n = 0; n <= 3; ++n)
      for (const FinPoset& p : enumerate_fin_posets(n)) {
        const CodedOrder x = poset_order(p);
        const auto elems = d.elements(x, 32);
        for (Code a : elems) {
          REQUIRE(d.compare(x, a, a) == Cmp::Equal);
          for (Code bb : elems) {
            const Cmp ab = d.compare(x, a, bb);
            REQUIRE(cmp_flip(ab) == d.compare(x, bb, a));
            if (a != bb) REQUIRE(ab != Cmp::Equal);
            for (Code cc : elems)
              if (cmp_leq(ab) && cmp_leq(d.compare(x, bb, cc)))
                REQUIRE(cmp_leq(d.compare(x, a, cc)));
          }
        }
      }
}

TEST_CASE("good pairs inside applications") {
  SECTION("repetition is good") {
    const Dilator t2 = make_tree2_dilator();
    const CodedOrder point = poset_order(finposet_new(1, {}));
    const std::vector<Code> seq{0, sum_right(cantor_pair(0, 0)), 0};
    const auto p = find_good_pair_in_application(t2, point, seq);
    REQUIRE(p.has_value());
  }
  SECTION("labels against the reversed order stay bad for 100 steps") {
    const Dilator w = make_w_dilator(omega_order());
    const CodedOrder rev = omega_rev_order();
    std::vector<Code> seq;
    for (Code n = 0; n < 100; ++n)
      seq.push_back(sum_right(cantor_pair(n, n)));
    REQUIRE_FALSE(find_good_pair_in_application(w, rev, seq).has_value());
  }
  SECTION("pigeonhole forces a good pair in a three-element application") {
    const Dilator v = make_v_dilator(finite_order(2));
    const CodedOrder point = poset_order(finposet_new(1, {}));
    const auto elems = v.elements(point, 16);
    REQUIRE(elems.size() == 3);
    // Any four-term sequence repeats one of the three elements.
    const std::vector<Code> seq{elems[2], elems[1], elems[0], elems[2]};
    REQUIRE(find_good_pair_in_application(v, point, seq).has_value());
  }
}

TEST_CASE("actions of quasi embeddings reflect within budget") {
  const Dilator family[] = {make_v_dilator(finite_order(2)),
                            make_w_dilator(finite_order(2)),
                            make_tree2_dilator()};
  for (const auto& d : family)
    for (std::size_t nx = 0; nx <= 2; ++nx)
      for (const FinPoset& px : enumerate_fin_posets(nx))
        for (std::size_t ny = 0; ny <= 2; ++ny)
          for (const FinPoset& py : enumerate_fin_posets(ny)) {
            const CodedOrder x = poset_order(px), y = poset_order(py);
            for (const auto& f : enumerate_quasi_embeddings(px, py)) {
              const auto elems = d.elements(x, 24);
              for (Code a : elems)
                for (Code b : elems)
                  if (cmp_leq(d.compare(y, d.act(f, a), d.act(f, b))))
                    REQUIRE(cmp_leq(d.compare(x, a, b)));
            }
          }
}
