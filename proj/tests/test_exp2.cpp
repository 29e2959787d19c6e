#include <catch_amalgamated.hpp>

#include <random>

#include "wpo/exp2.hpp"

using namespace wpo;

namespace {

// Oracle: exponential comparison via sentinel padding; a missing exponent
// acts as minus infinity, making proper extensions bigger.
Cmp exp2_oracle(const Exp2Term& a, const Exp2Term& b, const CodedOrder& base) {
  const std::size_t n = std::max(a.exponents.size(), b.exponents.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= a.exponents.size()) return Cmp::Less;
    if (i >= b.exponents.size()) return Cmp::Greater;
    const Cmp c = base.compare(a.exponents[i], b.exponents[i]);
    if (c != Cmp::Equal) return c;
  }
  return Cmp::Equal;
}

Exp2Term random_term(std::mt19937_64& rng, const CodedOrder& base,
                     unsigned bits) {
  return exp2_term_from_mask(rng() % (Code{1} << bits), base);
}

}  // namespace

TEST_CASE("term construction validates descent") {
  const CodedOrder om = omega_order();
  SECTION("the zero term") {
    REQUIRE(exp2_make(std::vector<Code>{}, om).is_zero());
  }
  SECTION("descending lists are accepted") {
    const auto t = exp2_make(std::vector<Code>{1, 0}, om);
    REQUIRE(t.exponents == std::vector<Code>{1, 0});
  }
  SECTION("ascending lists are rejected") {
    REQUIRE_THROWS_AS(exp2_make(std::vector<Code>{0, 1}, om), NotDescending);
  }
  SECTION("incomparable exponents are rejected at comparison time") {
    const CodedOrder anti = poset_order(finposet_new(2, {}));
    REQUIRE_THROWS_AS(exp2_make(std::vector<Code>{0, 1}, anti),
                      IncomparableExponents);
  }
}

TEST_CASE("comparison clauses") {
  const CodedOrder om = omega_order();
  const Exp2Term zero{};
  const auto p1 = exp2_make(std::vector<Code>{1}, om);
  const auto p0 = exp2_make(std::vector<Code>{0}, om);
  SECTION("proper extensions are bigger") {
    REQUIRE(exp2_compare(zero, p1, om) == Cmp::Less);
  }
  SECTION("first difference decides") {
    REQUIRE(exp2_compare(p0, p1, om) == Cmp::Less);
  }
  SECTION("identical terms are equal") {
    REQUIRE(exp2_compare(p1, p1, om) == Cmp::Equal);
  }
}

TEST_CASE("the order over finite(n) is the 2^n chain") {
  for (std::uint64_t n = 0; n <= 4; ++n) {
    const CodedOrder base = finite_order(n);
    const CodedOrder ex = exp2_order(base);
    REQUIRE(ex.size == (Code{1} << n));
    // Masks over an ascending enumeration order exactly like binary numbers.
    for (Code a = 0; a < *ex.size; ++a)
      for (Code b = 0; b < *ex.size; ++b) {
        const Cmp want = a == b ? Cmp::Equal : (a < b ? Cmp::Less : Cmp::Greater);
        REQUIRE(ex.compare(a, b) == want);
      }
  }
}

TEST_CASE("comparison matches the sentinel oracle and is linear") {
  std::mt19937_64 rng(5);
  const CodedOrder om = omega_order();
  std::vector<Exp2Term> pool;
  for (int k = 0; k < 50; ++k) pool.push_back(random_term(rng, om, 10));
  for (const auto& a : pool)
    for (const auto& b : pool) {
      const Cmp c = exp2_compare(a, b, om);
      REQUIRE(c == exp2_oracle(a, b, om));
      REQUIRE(c != Cmp::Incomparable);
      REQUIRE(cmp_flip(c) == exp2_compare(b, a, om));
    }
  // Transitivity on sampled triples.
  for (int k = 0; k < 4000; ++k) {
    const auto& a = pool[rng() % pool.size()];
    const auto& b = pool[rng() % pool.size()];
    const auto& c = pool[rng() % pool.size()];
    if (cmp_leq(exp2_compare(a, b, om)) && cmp_leq(exp2_compare(b, c, om)))
      REQUIRE(cmp_leq(exp2_compare(a, c, om)));
  }
}

TEST_CASE("appending a smaller exponent grows the term") {
  std::mt19937_64 rng(17);
  const CodedOrder om = omega_order();
  for (int k = 0; k < 200; ++k) {
    Exp2Term t = random_term(rng, om, 8);
    Code below = t.exponents.empty() ? rng() % 100 : 0;
    if (!t.exponents.empty() && t.exponents.back() == 0) continue;
    if (!t.exponents.empty()) below = rng() % t.exponents.back();
    Exp2Term u = t;
    u.exponents.push_back(below);
    REQUIRE(exp2_compare(t, u, om) == Cmp::Less);
  }
}

TEST_CASE("betweenness over the reversed naturals") {
  const CodedOrder rev = omega_rev_order();
  SECTION("a witness exists next to the zero term") {
    const Exp2Term zero{};
    const auto b = exp2_make(std::vector<Code>{1}, rev);
    const auto c = exp2_between(zero, b, rev, 128);
    REQUIRE(exp2_compare(zero, c, rev) == Cmp::Less);
    REQUIRE(exp2_compare(c, b, rev) == Cmp::Less);
  }
  SECTION("equal endpoints violate the precondition") {
    const auto a = exp2_make(std::vector<Code>{2}, rev);
    REQUIRE_THROWS_AS(exp2_between(a, a, rev, 64), OrderError);
  }
  SECTION("500 random pairs all admit a strict middle") {
    std::mt19937_64 rng(0);
    int done = 0;
    while (done < 500) {
      Exp2Term a = random_term(rng, rev, 12);
      Exp2Term b = random_term(rng, rev, 12);
      const Cmp c = exp2_compare(a, b, rev);
      if (c == Cmp::Equal) continue;
      if (c == Cmp::Greater) std::swap(a, b);
      const auto mid = exp2_between(a, b, rev, 256);
      REQUIRE(exp2_compare(a, mid, rev) == Cmp::Less);
      REQUIRE(exp2_compare(mid, b, rev) == Cmp::Less);
      ++done;
    }
  }
}

TEST_CASE("betweenness can fail over a discrete base") {
  const CodedOrder om = omega_order();
  const auto a = exp2_make(std::vector<Code>{0}, om);
  const auto b = exp2_make(std::vector<Code>{1}, om);
  REQUIRE_THROWS_AS(exp2_between(a, b, om, 512), NoWitnessWithinBudget);
}

TEST_CASE("betweenness falls back to lowering a prefix of the upper term") {
  // No extension of 2^0 exists, so the witness must come from lowering
  // the first exponent of 2^2.
  const CodedOrder base = finite_order(3);
  const auto a = exp2_make(std::vector<Code>{0}, base);
  const auto b = exp2_make(std::vector<Code>{2}, base);
  const auto mid = exp2_between(a, b, base, 64);
  REQUIRE(exp2_compare(a, mid, base) == Cmp::Less);
  REQUIRE(exp2_compare(mid, b, base) == Cmp::Less);
}

TEST_CASE("iterated exponentials") {
  SECTION("height zero is the base") {
    const CodedOrder it = exp2_iterate(finite_order(5), 0);
    REQUIRE(it.size == 5);
    REQUIRE(it.compare(2, 3) == Cmp::Less);
  }
  SECTION("height one over finite(2) is the four-element chain") {
    const CodedOrder it = exp2_iterate(finite_order(2), 1);
    REQUIRE(it.size == 4);
    for (Code a = 0; a < 4; ++a)
      for (Code b = a + 1; b < 4; ++b) REQUIRE(it.compare(a, b) == Cmp::Less);
  }
  SECTION("height two over finite(1) has four elements") {
    const CodedOrder it = exp2_iterate(finite_order(1), 2);
    REQUIRE(it.size == 4);
    std::size_t count = 0;
    for (std::uint64_t i = 0;; ++i) {
      if (!it.at(i)) break;
      ++count;
    }
    REQUIRE(count == 4);
  }
}

TEST_CASE("term literals round-trip") {
  const CodedOrder om = omega_order();
  std::mt19937_64 rng(29);
  for (int k = 0; k < 100; ++k) {
    const Exp2Term t = random_term(rng, om, 10);
    const Exp2Term back = parse_exp2_term(format_exp2_term(t), om);
    REQUIRE(back == t);
  }
  REQUIRE(format_exp2_term(Exp2Term{}) == "0");
  REQUIRE(format_exp2_term(exp2_make(std::vector<Code>{1, 0}, om)) == "2^1+2^0");
}

TEST_CASE("mask codes round-trip through terms") {
  std::mt19937_64 rng(41);
  for (const CodedOrder& base : {omega_order(), omega_rev_order(), finite_order(7)}) {
    for (int k = 0; k < 64; ++k) {
      const Code mask = rng() % (base.size ? (Code{1} << *base.size) : 4096);
      REQUIRE(exp2_mask_from_term(exp2_term_from_mask(mask, base), base) == mask);
    }
  }
}
