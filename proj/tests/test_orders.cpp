#include <catch_amalgamated.hpp>

#include <random>

#include "wpo/orders.hpp"

using namespace wpo;

namespace {

// Oracle: reflexive-transitive closure by exhaustive relational composition,
// iterated to a fixed point.
std::vector<std::uint8_t> closure_oracle(
    std::size_t n, const std::vector<std::pair<Code, Code>>& pairs) {
  std::vector<std::uint8_t> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1;
  for (const auto& [a, b] : pairs) m[a * n + b] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (m[i * n + j] && m[j * n + k] && !m[i * n + k]) {
            m[i * n + k] = 1;
            changed = true;
          }
  }
  return m;
}

// Oracle: one Kleene-Brouwer clause evaluation via sentinel padding; a
// missing entry acts as plus infinity, making proper extensions smaller.
Cmp kb_oracle(const FinSeq& s, const FinSeq& t) {
  const std::uint64_t inf = UINT64_MAX;
  const std::size_t n = std::max(s.size(), t.size());
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t a = i < s.size() ? s[i] : inf;
    const std::uint64_t b = i < t.size() ? t[i] : inf;
    if (a < b) return Cmp::Less;
    if (a > b) return Cmp::Greater;
  }
  return Cmp::Equal;
}

// Oracle: brute force over all strictly increasing index maps.
bool higman_oracle(const std::vector<Code>& s, const std::vector<Code>& t,
                   const CodedOrder& labels, std::size_t si = 0,
                   std::size_t from = 0) {
  if (si == s.size()) return true;
  for (std::size_t j = from; j < t.size(); ++j)
    if (labels.leq(s[si], t[j]) && higman_oracle(s, t, labels, si + 1, j + 1))
      return true;
  return false;
}

FinSeq random_seq(std::mt19937_64& rng, std::size_t max_len, std::uint64_t bound) {
  FinSeq s(rng() % (max_len + 1));
  for (auto& v : s) v = rng() % bound;
  return s;
}

}  // namespace

TEST_CASE("closure construction") {
  SECTION("single point has only the reflexive pair") {
    const FinPoset p = finposet_new(1, {});
    REQUIRE(p.leq(0, 0));
  }
  SECTION("two-cycle is rejected with its cycle") {
    try {
      finposet_new(2, {{0, 1}, {1, 0}});
      FAIL("expected AntisymmetryViolation");
    } catch (const AntisymmetryViolation& e) {
      REQUIRE(e.cycle.size() >= 2);
    }
  }
  SECTION("transitive pair appears in the closure") {
    const FinPoset p = finposet_new(3, {{0, 1}, {1, 2}});
    REQUIRE(p.leq(0, 2));
  }
  SECTION("matches the composition oracle on random relations") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 200; ++round) {
      const std::size_t n = 1 + rng() % 5;
      std::vector<std::pair<Code, Code>> pairs;
      for (std::size_t k = 0; k < rng() % (n * 2); ++k)
        pairs.emplace_back(rng() % n, rng() % n);
      const auto oracle = closure_oracle(n, pairs);
      bool cyclic = false;
      for (std::size_t i = 0; i < n && !cyclic; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (i != j && oracle[i * n + j] && oracle[j * n + i]) {
            cyclic = true;
            break;
          }
      if (cyclic) {
        REQUIRE_THROWS_AS(finposet_new(n, pairs), AntisymmetryViolation);
      } else {
        const FinPoset p = finposet_new(n, pairs);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            REQUIRE(p.leq(i, j) == (oracle[i * n + j] != 0));
      }
    }
  }
}

TEST_CASE("sum and product against the definitional oracle") {
  const std::vector<FinPoset> posets = {
      finposet_new(1, {}), finposet_new(2, {}), finposet_new(2, {{0, 1}}),
      finposet_new(3, {{0, 1}, {1, 2}}), finposet_new(3, {{0, 2}})};
  for (const auto& px : posets)
    for (const auto& py : posets) {
      const CodedOrder x = poset_order(px), y = poset_order(py);
      const CodedOrder s = sum_order(x, y);
      const CodedOrder pr = product_order(x, y);
      for (std::size_t a = 0; a < px.size(); ++a)
        for (std::size_t b = 0; b < px.size(); ++b) {
          REQUIRE(s.compare(sum_left(a), sum_left(b)) == px.compare(a, b));
          for (std::size_t c = 0; c < py.size(); ++c) {
            REQUIRE(s.compare(sum_left(a), sum_right(c)) == Cmp::Incomparable);
            REQUIRE(s.compare(sum_right(c), sum_left(a)) == Cmp::Incomparable);
            for (std::size_t d = 0; d < py.size(); ++d) {
              // Definitional product: both components must relate.
              const bool leq_def = px.leq(a, b) && py.leq(c, d);
              const bool geq_def = px.leq(b, a) && py.leq(d, c);
              Cmp want = Cmp::Incomparable;
              if (leq_def && geq_def)
                want = Cmp::Equal;
              else if (leq_def)
                want = Cmp::Less;
              else if (geq_def)
                want = Cmp::Greater;
              REQUIRE(pr.compare(cantor_pair(a, c), cantor_pair(b, d)) == want);
            }
          }
        }
      for (std::size_t c = 0; c < py.size(); ++c)
        for (std::size_t d = 0; d < py.size(); ++d)
          REQUIRE(s.compare(sum_right(c), sum_right(d)) == py.compare(c, d));
    }
}

TEST_CASE("1 + 1 is the two-element antichain") {
  const CodedOrder s = sum_order(finite_order(1), finite_order(1));
  REQUIRE(s.size == 2);
  REQUIRE(s.compare(sum_left(0), sum_left(0)) == Cmp::Equal);
  REQUIRE(s.compare(sum_right(0), sum_right(0)) == Cmp::Equal);
  REQUIRE(s.compare(sum_left(0), sum_right(0)) == Cmp::Incomparable);
  REQUIRE(s.compare(sum_right(0), sum_left(0)) == Cmp::Incomparable);
}

TEST_CASE("combinator enumerations are gapless and consistent") {
  const CodedOrder cases[] = {
      sum_order(finite_order(3), omega_order()),
      sum_order(omega_order(), finite_order(2)),
      product_order(finite_order(3), finite_order(4)),
      product_order(omega_order(), finite_order(3)),
      lex_order(finite_order(2), finite_order(3)),
  };
  for (const auto& o : cases) {
    std::vector<Code> seen;
    for (std::uint64_t i = 0; i < 24; ++i) {
      const auto c = o.at(i);
      if (!c) {
        REQUIRE(o.size.has_value());
        REQUIRE(i >= *o.size);
        break;
      }
      REQUIRE(o.has(*c));
      for (Code prev : seen) REQUIRE(prev != *c);
      seen.push_back(*c);
    }
    // Poset axioms on the enumerated sample.
    for (Code a : seen) {
      REQUIRE(o.compare(a, a) == Cmp::Equal);
      for (Code b : seen) {
        const Cmp ab = o.compare(a, b);
        REQUIRE(cmp_flip(ab) == o.compare(b, a));
        for (Code c : seen)
          if (cmp_leq(ab) && cmp_leq(o.compare(b, c)))
            REQUIRE(cmp_leq(o.compare(a, c)));
      }
    }
  }
}

TEST_CASE("finite-set domination") {
  const CodedOrder chain = poset_order(finposet_new(3, {{0, 1}, {1, 2}}));
  SECTION("empty left side holds vacuously") {
    REQUIRE(leq_fin(std::vector<Code>{}, std::vector<Code>{}, chain));
  }
  SECTION("singletons reduce to the element comparison") {
    REQUIRE(leq_fin(std::vector<Code>{0}, std::vector<Code>{1}, chain));
    REQUIRE_FALSE(leq_fin(std::vector<Code>{2}, std::vector<Code>{1}, chain));
  }
  SECTION("chain dominates both lower elements") {
    REQUIRE(leq_fin(std::vector<Code>{0, 1}, std::vector<Code>{2}, chain));
  }
}

TEST_CASE("morphism checks") {
  SECTION("identity is a full embedding") {
    const FinPoset p = finposet_new(3, {{0, 1}});
    Morphism id{p, poset_order(p), {0, 1, 2}};
    REQUIRE(check_morphism(id, MorphismMode::Full).pass);
  }
  SECTION("constant map from the antichain fails reflection") {
    const FinPoset anti = finposet_new(2, {});
    Morphism f{anti, poset_order(finposet_new(1, {})), {0, 0}};
    const auto v = check_morphism(f, MorphismMode::Quasi);
    REQUIRE_FALSE(v.pass);
    REQUIRE(v.witness.has_value());
    const auto [a, b] = *v.witness;
    REQUIRE(a != b);
  }
  SECTION("chain inclusion into a longer chain is a full embedding") {
    const FinPoset c2 = finposet_new(2, {{0, 1}});
    const FinPoset c4 = finposet_new(4, {{0, 1}, {1, 2}, {2, 3}});
    Morphism inc{c2, poset_order(c4), {1, 2}};
    REQUIRE(check_morphism(inc, MorphismMode::Full).pass);
  }
  SECTION("short map is rejected") {
    const FinPoset p = finposet_new(2, {});
    Morphism f{p, poset_order(p), {0}};
    REQUIRE_THROWS_AS(check_morphism(f, MorphismMode::Quasi), NonTotalMorphism);
  }
}

TEST_CASE("good-pair search") {
  const CodedOrder om = omega_order();
  SECTION("repetition is good by reflexivity") {
    const std::vector<Code> seq{5, 3, 5};
    const auto p = find_good_pair(seq, om);
    REQUIRE(p.has_value());
    REQUIRE(p->first < p->second);
    REQUIRE(om.leq(seq[p->first], seq[p->second]));
  }
  SECTION("strictly descending prefix is bad") {
    REQUIRE_FALSE(find_good_pair(std::vector<Code>{9, 7, 4, 2, 0}, om).has_value());
  }
  SECTION("least-lexicographic pair is returned") {
    const auto p = find_good_pair(std::vector<Code>{2, 0, 1, 3}, om);
    REQUIRE(p.has_value());
    REQUIRE(p->first == 0);
    REQUIRE(p->second == 3);
  }
  SECTION("agrees with a full scan on random sequences") {
    std::mt19937_64 rng(11);
    const CodedOrder pr = product_order(omega_order(), finite_order(3));
    for (int round = 0; round < 100; ++round) {
      std::vector<Code> seq;
      for (int k = 0; k < 12; ++k)
        seq.push_back(cantor_pair(rng() % 20, rng() % 3));
      const auto fast = find_good_pair(seq, pr);
      bool any = false;
      for (std::size_t i = 0; i < seq.size() && !any; ++i)
        for (std::size_t j = i + 1; j < seq.size(); ++j)
          if (pr.leq(seq[i], seq[j])) {
            any = true;
            break;
          }
      REQUIRE(fast.has_value() == any);
    }
  }
}

TEST_CASE("Kleene-Brouwer comparison") {
  SECTION("longer sequences are smaller") {
    REQUIRE(kb_compare({0}, {}) == Cmp::Less);
  }
  SECTION("identical sequences are equal") {
    REQUIRE(kb_compare({1, 2, 3}, {1, 2, 3}) == Cmp::Equal);
  }
  SECTION("first difference decides") {
    REQUIRE(kb_compare({0, 5}, {1}) == Cmp::Less);
  }
  SECTION("matches the sentinel-padding oracle and is a linear order") {
    std::mt19937_64 rng(23);
    std::vector<FinSeq> pool;
    for (int k = 0; k < 60; ++k) pool.push_back(random_seq(rng, 6, 4));
    for (const auto& s : pool)
      for (const auto& t : pool) {
        const Cmp c = kb_compare(s, t);
        REQUIRE(c == kb_oracle(s, t));
        REQUIRE(c != Cmp::Incomparable);
        REQUIRE(cmp_flip(c) == kb_compare(t, s));
        for (const auto& u : pool)
          if (cmp_leq(c) && cmp_leq(kb_compare(t, u)))
            REQUIRE(cmp_leq(kb_compare(s, u)));
      }
  }
}

TEST_CASE("Higman sequence embedding") {
  const CodedOrder chain2 = finite_order(2);
  SECTION("empty sequence embeds everywhere") {
    REQUIRE(higman_leq(std::vector<Code>{}, std::vector<Code>{1, 0}, chain2));
  }
  SECTION("singletons reduce to the label comparison") {
    REQUIRE(higman_leq(std::vector<Code>{0}, std::vector<Code>{1}, chain2));
    REQUIRE_FALSE(higman_leq(std::vector<Code>{1}, std::vector<Code>{0}, chain2));
  }
  SECTION("frozen example over the two-chain") {
    REQUIRE(higman_leq(std::vector<Code>{1, 0}, std::vector<Code>{0, 1, 0},
                       chain2));
  }
  SECTION("agrees with the brute-force oracle") {
    std::mt19937_64 rng(31);
    const CodedOrder labels = poset_order(finposet_new(3, {{0, 1}}));
    for (int round = 0; round < 400; ++round) {
      std::vector<Code> s, t;
      const std::size_t ls = rng() % 5, lt = rng() % 9;
      for (std::size_t k = 0; k < ls; ++k) s.push_back(rng() % 3);
      for (std::size_t k = 0; k < lt; ++k) t.push_back(rng() % 3);
      REQUIRE(higman_leq(s, t, labels) == higman_oracle(s, t, labels));
    }
  }
}
