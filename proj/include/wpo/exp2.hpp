#ifndef WPO_EXP2_HPP
#define WPO_EXP2_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "wpo/core.hpp"
#include "wpo/orders.hpp"

namespace wpo {

struct NotDescending : OrderError {
  std::size_t position;  // index of the first offending adjacent pair
  NotDescending(std::size_t pos, const std::string& what)
      : OrderError(what), position(pos) {}
};

struct IncomparableExponents : OrderError {
  using OrderError::OrderError;
};

// ---------------------------------------------------------------------------
// Exponential-order terms: formal sums of strictly descending powers of two
// ---------------------------------------------------------------------------

/// A term of the exponential order over a base with elements of type E:
/// a strictly descending list of exponents. The empty list is the zero term.
template <typename E>
struct Exp2TermT {
  std::vector<E> exponents;

  bool is_zero() const { return exponents.empty(); }
  bool operator==(const Exp2TermT& other) const {
    return exponents == other.exponents;
  }
};

using Exp2Term = Exp2TermT<Code>;

/// Validates strict descent of the exponent list under `cmp` and returns the
/// term. Throws NotDescending / IncomparableExponents on bad input.
template <typename E, typename CompareFn>
  requires std::is_invocable_r_v<Cmp, CompareFn&, const E&, const E&>
Exp2TermT<E> exp2_make(std::vector<E> exponents, CompareFn&& cmp) {
  for (std::size_t i = 0; i + 1 < exponents.size(); ++i) {
    const Cmp c = cmp(exponents[i], exponents[i + 1]);
    if (c == Cmp::Incomparable)
      throw IncomparableExponents("adjacent exponents incomparable at index " +
                                  std::to_string(i));
    if (c != Cmp::Greater)
      throw NotDescending(i, "exponent list not strictly descending at index " +
                                 std::to_string(i));
  }
  return Exp2TermT<E>{std::move(exponents)};
}

/// Exponential-order comparison: a < b iff b properly extends a's exponent
/// list (longer is bigger) or the first differing exponent is smaller.
template <typename E, typename CompareFn>
  requires std::is_invocable_r_v<Cmp, CompareFn&, const E&, const E&>
Cmp exp2_compare(const Exp2TermT<E>& a, const Exp2TermT<E>& b, CompareFn&& cmp) {
  const std::size_t m = std::min(a.exponents.size(), b.exponents.size());
  for (std::size_t i = 0; i < m; ++i) {
    const Cmp c = cmp(a.exponents[i], b.exponents[i]);
    if (c == Cmp::Incomparable)
      throw IncomparableExponents("exponents incomparable at index " +
                                  std::to_string(i));
    if (c != Cmp::Equal) return c;
  }
  if (a.exponents.size() == b.exponents.size()) return Cmp::Equal;
  return a.exponents.size() < b.exponents.size() ? Cmp::Less : Cmp::Greater;
}

// Code-world wrappers over a CodedOrder base.

inline Exp2Term exp2_make(std::vector<Code> exponents, const CodedOrder& base) {
  return exp2_make(std::move(exponents),
                   [&base](Code a, Code b) { return base.compare(a, b); });
}

inline Cmp exp2_compare(const Exp2Term& a, const Exp2Term& b,
                        const CodedOrder& base) {
  return exp2_compare(a, b,
                      [&base](Code x, Code y) { return base.compare(x, y); });
}

/// Bounded search for a term strictly between a and b. Tries proper
/// extensions of a first (these are above a for free), then prefixes of b
/// and single-exponent perturbations below b's entries.
inline Exp2Term exp2_between(const Exp2Term& a, const Exp2Term& b,
                             const CodedOrder& base, std::size_t budget) {
  if (exp2_compare(a, b, base) != Cmp::Less)
    throw OrderError("exp2_between requires a < b");
  if (!base.enumerate)
    throw OrderError("exp2_between requires an enumerable base");
  std::size_t tried = 0;
  const auto admissible = [&](const Exp2Term& c) {
    return exp2_compare(a, c, base) == Cmp::Less &&
           exp2_compare(c, b, base) == Cmp::Less;
  };
  // Phase 1: extensions of a by one exponent. Every enumeration probe
  // counts against the budget so a fruitless infinite base terminates.
  for (std::uint64_t idx = 0; tried < budget; ++idx) {
    const auto beta = base.at(idx);
    if (!beta) break;
    ++tried;
    if (!a.exponents.empty() &&
        base.compare(a.exponents.back(), *beta) != Cmp::Greater)
      continue;
    Exp2Term c = a;
    c.exponents.push_back(*beta);
    if (admissible(c)) return c;
  }
  // Phase 2: prefixes of b, optionally lowered at the cut position.
  for (std::size_t cut = 0; cut < b.exponents.size() && tried < budget; ++cut) {
    Exp2Term prefix;
    prefix.exponents.assign(b.exponents.begin(), b.exponents.begin() + cut);
    ++tried;
    if (admissible(prefix)) return prefix;
    for (std::uint64_t idx = 0; tried < budget; ++idx) {
      const auto beta = base.at(idx);
      if (!beta) break;
      ++tried;
      if (base.compare(*beta, b.exponents[cut]) != Cmp::Less) continue;
      if (cut > 0 &&
          base.compare(b.exponents[cut - 1], *beta) != Cmp::Greater)
        continue;
      Exp2Term c = prefix;
      c.exponents.push_back(*beta);
      if (admissible(c)) return c;
    }
  }
  throw NoWitnessWithinBudget("no term found strictly between the given pair");
}

// ---------------------------------------------------------------------------
// Iterated exponentials as coded orders
// ---------------------------------------------------------------------------

/// Decodes a bitmask code of the exponential order: bit k selects the k-th
/// element of the base enumeration; exponents are sorted strictly descending.
inline Exp2Term exp2_term_from_mask(Code mask, const CodedOrder& base) {
  std::vector<Code> exps;
  for (unsigned bit = 0; bit < 64; ++bit)
    if (mask & (Code{1} << bit)) {
      const auto c = base.at(bit);
      if (!c) throw OrderError("mask selects element beyond base enumeration");
      exps.push_back(*c);
    }
  std::sort(exps.begin(), exps.end(), [&base](Code x, Code y) {
    return base.compare(x, y) == Cmp::Greater;
  });
  return exp2_make(std::move(exps), base);
}

/// Inverse of exp2_term_from_mask (exponent codes looked up in the base
/// enumeration, which must reach them within 64 entries).
inline Code exp2_mask_from_term(const Exp2Term& t, const CodedOrder& base) {
  Code mask = 0;
  for (Code e : t.exponents) {
    bool found = false;
    for (unsigned bit = 0; bit < 64; ++bit) {
      const auto c = base.at(bit);
      if (!c) break;
      if (*c == e) {
        mask |= Code{1} << bit;
        found = true;
        break;
      }
    }
    if (!found) throw OrderError("exponent not reachable in base enumeration");
  }
  return mask;
}

/// One application of the exponential construction, as a coded order whose
/// codes are exponent bitmasks over the base enumeration.
inline CodedOrder exp2_order(CodedOrder base) {
  if (!base.enumerate) throw OrderError("exp2_order requires an enumerable base");
  CodedOrder o;
  o.name = "2^(" + base.name + ")";
  o.linear = base.linear;
  if (base.size && *base.size < 64) o.size = Code{1} << *base.size;
  o.compare = [base](Code a, Code b) {
    return exp2_compare(exp2_term_from_mask(a, base),
                        exp2_term_from_mask(b, base), base);
  };
  o.enumerate = [o_size = o.size](std::uint64_t i) -> std::optional<Code> {
    if (o_size && i >= *o_size) return std::nullopt;
    return i;
  };
  o.contains = [base_size = base.size](Code c) {
    if (base_size && *base_size < 64) return c < (Code{1} << *base_size);
    return true;
  };
  return o;
}

/// Height-fold iteration of the exponential construction; height 0 is the
/// base itself.
inline CodedOrder exp2_iterate(CodedOrder base, std::size_t height) {
  for (std::size_t i = 0; i < height; ++i) base = exp2_order(std::move(base));
  return base;
}

// ---------------------------------------------------------------------------
// Term literals: "0" for zero, "2^b0+2^b1+..." with base codes
// ---------------------------------------------------------------------------

inline std::string format_exp2_term(const Exp2Term& t) {
  if (t.is_zero()) return "0";
  std::ostringstream out;
  for (std::size_t i = 0; i < t.exponents.size(); ++i) {
    if (i) out << '+';
    out << "2^" << t.exponents[i];
  }
  return out.str();
}

inline Exp2Term parse_exp2_term(const std::string& text, const CodedOrder& base) {
  if (text == "0") return Exp2Term{};
  std::vector<Code> exps;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text.compare(pos, 2, "2^") != 0)
      throw OrderError("bad term literal: " + text);
    pos += 2;
    std::size_t end = text.find('+', pos);
    if (end == std::string::npos) end = text.size();
    exps.push_back(parse_code(text.substr(pos, end - pos)));
    pos = end + (end < text.size() ? 1 : 0);
  }
  return exp2_make(std::move(exps), base);
}

}  // namespace wpo

#endif  // WPO_EXP2_HPP
