#ifndef WPO_CORE_HPP
#define WPO_CORE_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wpo {

/// Natural-number code for an element of a coded order.
using Code = std::uint64_t;

/// Finite sequence of naturals (tree addresses, exponent lists, ...).
using FinSeq = std::vector<std::uint64_t>;

/// Four-valued comparison outcome. Linear orders never produce Incomparable.
enum class Cmp { Less, Equal, Greater, Incomparable };

constexpr bool cmp_leq(Cmp c) { return c == Cmp::Less || c == Cmp::Equal; }
constexpr bool cmp_geq(Cmp c) { return c == Cmp::Greater || c == Cmp::Equal; }

constexpr Cmp cmp_flip(Cmp c) {
  switch (c) {
    case Cmp::Less: return Cmp::Greater;
    case Cmp::Greater: return Cmp::Less;
    default: return c;
  }
}

inline const char* cmp_name(Cmp c) {
  switch (c) {
    case Cmp::Less: return "less";
    case Cmp::Equal: return "equal";
    case Cmp::Greater: return "greater";
    default: return "incomparable";
  }
}

/// Base class for all structured errors thrown by the library.
struct OrderError : std::runtime_error {
  explicit OrderError(const std::string& what) : std::runtime_error(what) {}
};

/// Reflexive-transitive closure related i <= j <= i for distinct i, j.
struct AntisymmetryViolation : OrderError {
  std::vector<std::size_t> cycle;
  AntisymmetryViolation(std::vector<std::size_t> cyc, const std::string& what)
      : OrderError(what), cycle(std::move(cyc)) {}
};

/// A morphism is undefined (or lands outside the codomain) on a domain element.
struct NonTotalMorphism : OrderError {
  using OrderError::OrderError;
};

/// Bounded search gave up before finding the requested witness.
struct NoWitnessWithinBudget : OrderError {
  using OrderError::OrderError;
};

/// Strict numeric token parser: the whole string must be digits.
inline Code parse_code(const std::string& s) {
  if (s.empty()) throw OrderError("expected a number, got an empty token");
  for (char c : s)
    if (c < '0' || c > '9')
      throw OrderError("expected a number, got: " + s);
  return std::stoull(s);
}

// -- Cantor pairing --------------------------------------------------------

constexpr Code cantor_pair(Code x, Code y) {
  const Code s = x + y;
  return s * (s + 1) / 2 + y;
}

constexpr Code isqrt64(Code n) {
  if (n == 0) return 0;
  Code lo = 0, hi = UINT32_MAX;
  while (lo < hi) {
    const Code mid = lo + (hi - lo + 1) / 2;
    if (mid <= n / mid)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

constexpr std::pair<Code, Code> cantor_unpair(Code z) {
  const Code w = (isqrt64(8 * z + 1) - 1) / 2;
  const Code t = w * (w + 1) / 2;
  const Code y = z - t;
  return {w - y, y};
}

}  // namespace wpo

#endif  // WPO_CORE_HPP
