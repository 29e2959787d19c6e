#ifndef WPO_ORDERS_HPP
#define WPO_ORDERS_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wpo/core.hpp"

namespace wpo {

// ---------------------------------------------------------------------------
// FinPoset: explicit finite partial order on {0..n-1} with full relation matrix
// ---------------------------------------------------------------------------

class FinPoset {
 public:
  FinPoset() = default;

  /// Builds from a full relation matrix; validates all three poset axioms.
  static FinPoset from_matrix(std::size_t n, std::vector<std::uint8_t> matrix) {
    FinPoset p;
    p.size_ = n;
    p.leq_ = std::move(matrix);
    if (p.leq_.size() != n * n) throw OrderError("relation matrix has wrong size");
    p.validate();
    return p;
  }

  std::size_t size() const { return size_; }

  bool leq(std::size_t i, std::size_t j) const { return leq_[i * size_ + j] != 0; }

  Cmp compare(std::size_t i, std::size_t j) const {
    const bool ij = leq(i, j), ji = leq(j, i);
    if (ij && ji) return Cmp::Equal;
    if (ij) return Cmp::Less;
    if (ji) return Cmp::Greater;
    return Cmp::Incomparable;
  }

  /// Covering-style pair list (all non-reflexive related pairs).
  std::vector<std::pair<std::size_t, std::size_t>> strict_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size_; ++i)
      for (std::size_t j = 0; j < size_; ++j)
        if (i != j && leq(i, j)) out.emplace_back(i, j);
    return out;
  }

  bool operator==(const FinPoset& other) const {
    return size_ == other.size_ && leq_ == other.leq_;
  }

 private:
  void validate() const {
    for (std::size_t i = 0; i < size_; ++i)
      if (!leq(i, i)) throw OrderError("relation not reflexive");
    for (std::size_t i = 0; i < size_; ++i)
      for (std::size_t j = 0; j < size_; ++j)
        if (i != j && leq(i, j) && leq(j, i))
          throw AntisymmetryViolation({i, j}, "antisymmetry violated");
    for (std::size_t i = 0; i < size_; ++i)
      for (std::size_t j = 0; j < size_; ++j)
        for (std::size_t k = 0; k < size_; ++k)
          if (leq(i, j) && leq(j, k) && !leq(i, k))
            throw OrderError("relation not transitive");
  }

  std::size_t size_ = 0;
  std::vector<std::uint8_t> leq_;
};

/// Builds a FinPoset as the reflexive-transitive closure of the given pairs.
/// Throws AntisymmetryViolation (with the offending cycle) if the closure
/// relates two distinct elements in both directions.
inline FinPoset finposet_new(std::size_t n,
                             const std::vector<std::pair<Code, Code>>& pairs) {
  std::vector<std::uint8_t> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1;
  for (const auto& [a, b] : pairs) {
    if (a >= n || b >= n) throw OrderError("pair references element out of range");
    m[a * n + b] = 1;
  }
  // Warshall closure.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (m[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (m[k * n + j]) m[i * n + j] = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (m[i * n + j] && m[j * n + i])
        throw AntisymmetryViolation(
            {i, j, i}, "closure relates " + std::to_string(i) + " <= " +
                           std::to_string(j) + " <= " + std::to_string(i));
  return FinPoset::from_matrix(n, std::move(m));
}

// ---------------------------------------------------------------------------
// CodedOrder: countable order given by a total comparison on codes
// ---------------------------------------------------------------------------

/// A countable order presented by a comparison function on natural-number
/// codes. `enumerate(i)` yields the i-th code of a fixed deterministic
/// enumeration (nullopt once exhausted); `size` is set when the order is
/// finite with known cardinality; `contains` tells which codes are valid.
struct CodedOrder {
  std::function<Cmp(Code, Code)> compare;
  bool linear = false;
  std::optional<std::uint64_t> size;
  std::function<std::optional<Code>(std::uint64_t)> enumerate;
  std::function<bool(Code)> contains;
  std::string name;

  bool has(Code c) const { return !contains || contains(c); }
  std::optional<Code> at(std::uint64_t i) const {
    if (!enumerate) return std::nullopt;
    if (size && i >= *size) return std::nullopt;
    return enumerate(i);
  }
  bool leq(Code a, Code b) const { return cmp_leq(compare(a, b)); }
};

inline CodedOrder finite_order(std::uint64_t n) {
  CodedOrder o;
  o.compare = [](Code a, Code b) {
    return a == b ? Cmp::Equal : (a < b ? Cmp::Less : Cmp::Greater);
  };
  o.linear = true;
  o.size = n;
  o.enumerate = [n](std::uint64_t i) -> std::optional<Code> {
    if (i >= n) return std::nullopt;
    return i;
  };
  o.contains = [n](Code c) { return c < n; };
  o.name = "finite:" + std::to_string(n);
  return o;
}

inline CodedOrder omega_order() {
  CodedOrder o;
  o.compare = [](Code a, Code b) {
    return a == b ? Cmp::Equal : (a < b ? Cmp::Less : Cmp::Greater);
  };
  o.linear = true;
  o.enumerate = [](std::uint64_t i) -> std::optional<Code> { return i; };
  o.name = "omega";
  return o;
}

/// The non-positive integers: code k stands for -k, so larger codes are
/// smaller elements.
inline CodedOrder omega_rev_order() {
  CodedOrder o;
  o.compare = [](Code a, Code b) {
    return a == b ? Cmp::Equal : (a > b ? Cmp::Less : Cmp::Greater);
  };
  o.linear = true;
  o.enumerate = [](std::uint64_t i) -> std::optional<Code> { return i; };
  o.name = "omega_rev";
  return o;
}

inline constexpr Code sum_left(Code c) { return 2 * c; }
inline constexpr Code sum_right(Code c) { return 2 * c + 1; }

/// Sum X + Y: tagged disjoint union, cross pairs incomparable.
/// Left elements use even codes 2x, right elements odd codes 2y+1.
inline CodedOrder sum_order(CodedOrder x, CodedOrder y) {
  CodedOrder o;
  o.name = "sum(" + x.name + "," + y.name + ")";
  o.linear = false;
  if (x.size && y.size) o.size = *x.size + *y.size;
  o.compare = [x, y](Code a, Code b) {
    const bool la = (a % 2 == 0), lb = (b % 2 == 0);
    if (la != lb) return Cmp::Incomparable;
    return la ? x.compare(a / 2, b / 2) : y.compare(a / 2, b / 2);
  };
  o.contains = [x, y](Code c) {
    return (c % 2 == 0) ? x.has(c / 2) : y.has(c / 2);
  };
  if (x.enumerate && y.enumerate) {
    o.enumerate = [x, y](std::uint64_t i) -> std::optional<Code> {
      // Interleave until the smaller side runs out, then take the rest.
      const std::uint64_t sx = x.size.value_or(UINT64_MAX);
      const std::uint64_t sy = y.size.value_or(UINT64_MAX);
      const std::uint64_t m = std::min(sx, sy);
      if (i < 2 * m) {
        const std::uint64_t k = i / 2;
        if (i % 2 == 0) {
          auto c = x.at(k);
          if (c) return sum_left(*c);
        } else {
          auto c = y.at(k);
          if (c) return sum_right(*c);
        }
        return std::nullopt;
      }
      const std::uint64_t rest = m + (i - 2 * m);
      if (sx > sy) {
        auto c = x.at(rest);
        return c ? std::optional<Code>(sum_left(*c)) : std::nullopt;
      }
      auto c = y.at(rest);
      return c ? std::optional<Code>(sum_right(*c)) : std::nullopt;
    };
  }
  return o;
}

namespace detail {
/// Enumerates valid Cantor-pair codes (k-th pair with both halves in range).
inline std::optional<Code> pair_enumerate(const CodedOrder& x, const CodedOrder& y,
                                          std::uint64_t i) {
  if (x.size && y.size && i >= *x.size * *y.size) return std::nullopt;
  std::uint64_t found = 0;
  for (std::uint64_t k = 0; k < 50'000'000ULL; ++k) {
    const auto [a, b] = cantor_unpair(k);
    const auto ca = x.at(a);
    const auto cb = y.at(b);
    if (!ca || !cb) continue;
    if (found == i) return cantor_pair(*ca, *cb);
    ++found;
  }
  return std::nullopt;
}
}  // namespace detail

/// Product X x Y: componentwise order on Cantor-paired codes.
inline CodedOrder product_order(CodedOrder x, CodedOrder y) {
  CodedOrder o;
  o.name = "prod(" + x.name + "," + y.name + ")";
  o.linear = false;
  if (x.size && y.size) o.size = *x.size * *y.size;
  o.compare = [x, y](Code a, Code b) {
    const auto [a1, a2] = cantor_unpair(a);
    const auto [b1, b2] = cantor_unpair(b);
    const Cmp c1 = x.compare(a1, b1);
    const Cmp c2 = y.compare(a2, b2);
    if (c1 == Cmp::Equal) return c2;
    if (c2 == Cmp::Equal) return c1;
    if (c1 == c2) return c1;
    return Cmp::Incomparable;
  };
  o.contains = [x, y](Code c) {
    const auto [a, b] = cantor_unpair(c);
    return x.has(a) && y.has(b);
  };
  if (x.enumerate && y.enumerate) {
    o.enumerate = [x, y](std::uint64_t i) { return detail::pair_enumerate(x, y, i); };
  }
  return o;
}

/// Lexicographic product: first component decides, ties fall to the second.
inline CodedOrder lex_order(CodedOrder x, CodedOrder y) {
  CodedOrder o = product_order(x, y);
  o.name = "lex(" + x.name + "," + y.name + ")";
  o.linear = x.linear && y.linear;
  o.compare = [x, y](Code a, Code b) {
    const auto [a1, a2] = cantor_unpair(a);
    const auto [b1, b2] = cantor_unpair(b);
    const Cmp c1 = x.compare(a1, b1);
    if (c1 != Cmp::Equal) return c1;
    return y.compare(a2, b2);
  };
  return o;
}

/// Views a FinPoset as a CodedOrder on codes 0..n-1.
inline CodedOrder poset_order(FinPoset p) {
  CodedOrder o;
  const std::size_t n = p.size();
  o.name = "poset:" + std::to_string(n);
  o.size = n;
  o.linear = true;
  for (std::size_t i = 0; i < n && o.linear; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (p.compare(i, j) == Cmp::Incomparable) {
        o.linear = false;
        break;
      }
  o.compare = [p](Code a, Code b) {
    return p.compare(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
  };
  o.enumerate = [n](std::uint64_t i) -> std::optional<Code> {
    if (i >= n) return std::nullopt;
    return i;
  };
  o.contains = [n](Code c) { return c < n; };
  return o;
}

// ---------------------------------------------------------------------------
// Finite-set domination, morphisms, good-pair search
// ---------------------------------------------------------------------------

/// F <=_fin G: every x in F has some y in G with x <= y.
inline bool leq_fin(std::span<const Code> f, std::span<const Code> g,
                    const CodedOrder& ord) {
  for (Code x : f) {
    bool dominated = false;
    for (Code y : g)
      if (ord.leq(x, y)) {
        dominated = true;
        break;
      }
    if (!dominated) return false;
  }
  return true;
}

inline bool leq_fin(const std::vector<Code>& f, const std::vector<Code>& g,
                    const CodedOrder& ord) {
  return leq_fin(std::span<const Code>(f), std::span<const Code>(g), ord);
}

/// A finite map from a FinPoset into a coded order.
struct Morphism {
  FinPoset domain;
  CodedOrder codomain;
  std::vector<Code> map;

  Code apply(std::size_t i) const {
    if (i >= map.size()) throw NonTotalMorphism("morphism undefined on element");
    return map[i];
  }
};

enum class MorphismMode { Quasi, Full };

struct MorphismVerdict {
  bool pass = false;
  std::optional<std::pair<std::size_t, std::size_t>> witness;
  std::string reason;
};

/// Quasi mode checks order reflection; Full additionally checks preservation.
inline MorphismVerdict check_morphism(const Morphism& f, MorphismMode mode) {
  const std::size_t n = f.domain.size();
  if (f.map.size() != n) throw NonTotalMorphism("morphism map incomplete");
  for (std::size_t i = 0; i < n; ++i)
    if (!f.codomain.has(f.map[i]))
      throw NonTotalMorphism("morphism image outside codomain");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && f.codomain.leq(f.map[i], f.map[j]) && !f.domain.leq(i, j))
        return {false, std::make_pair(i, j), "reflection fails"};
      if (mode == MorphismMode::Full && f.domain.leq(i, j) &&
          !f.codomain.leq(f.map[i], f.map[j]))
        return {false, std::make_pair(i, j), "preservation fails"};
    }
  return {true, std::nullopt, ""};
}

/// Least-lexicographic (i, j) with i < j and seq[i] <= seq[j], if any.
inline std::optional<std::pair<std::size_t, std::size_t>> find_good_pair(
    std::span<const Code> seq, const CodedOrder& ord) {
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (ord.leq(seq[i], seq[j])) return std::make_pair(i, j);
  return std::nullopt;
}

inline std::optional<std::pair<std::size_t, std::size_t>> find_good_pair(
    const std::vector<Code>& seq, const CodedOrder& ord) {
  return find_good_pair(std::span<const Code>(seq), ord);
}

// ---------------------------------------------------------------------------
// Kleene-Brouwer order and Higman sequence embedding
// ---------------------------------------------------------------------------

/// Kleene-Brouwer comparison on finite sequences of naturals: proper
/// extensions are smaller, otherwise the first difference decides.
inline Cmp kb_compare(const FinSeq& s, const FinSeq& t) {
  const std::size_t m = std::min(s.size(), t.size());
  for (std::size_t i = 0; i < m; ++i) {
    if (s[i] < t[i]) return Cmp::Less;
    if (s[i] > t[i]) return Cmp::Greater;
  }
  if (s.size() == t.size()) return Cmp::Equal;
  return s.size() > t.size() ? Cmp::Less : Cmp::Greater;
}

/// Higman embedding: is there a strictly increasing index map h with
/// s[i] <= t[h(i)] for all i?  Computed by the minimal-end-position
/// dynamic program.
inline bool higman_leq(std::span<const Code> s, std::span<const Code> t,
                       const CodedOrder& labels) {
  std::size_t pos = 0;  // first unused position of t
  for (Code a : s) {
    while (pos < t.size() && !labels.leq(a, t[pos])) ++pos;
    if (pos == t.size()) return false;
    ++pos;
  }
  return true;
}

inline bool higman_leq(const std::vector<Code>& s, const std::vector<Code>& t,
                       const CodedOrder& labels) {
  return higman_leq(std::span<const Code>(s), std::span<const Code>(t), labels);
}

}  // namespace wpo

#endif  // WPO_ORDERS_HPP
