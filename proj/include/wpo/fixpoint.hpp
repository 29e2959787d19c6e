#ifndef WPO_FIXPOINT_HPP
#define WPO_FIXPOINT_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wpo/core.hpp"
#include "wpo/dilators.hpp"
#include "wpo/exp2.hpp"
#include "wpo/orders.hpp"

namespace wpo {

struct SupportNotFull : OrderError {
  std::size_t child_index;
  SupportNotFull(std::size_t idx, const std::string& what)
      : OrderError(what), child_index(idx) {}
};

struct NotAnElement : OrderError {
  using OrderError::OrderError;
};

/// Two structurally distinct children compared below each other; the
/// amalgamated child order would not be a poset (non-normal dilator).
struct AntisymmetryBreak : OrderError {
  using OrderError::OrderError;
};

struct ReflectionFailure : OrderError {
  using OrderError::OrderError;
};

// ---------------------------------------------------------------------------
// Terms of the fixed-point order
// ---------------------------------------------------------------------------

/// A node of the fixed-point term order: a trace element over the induced
/// order of its children. Children are structurally distinct and kept in
/// canonical (structural) order; the trace's support covers all of them.
struct Term {
  Code trace = 0;
  std::vector<Term> children;
};

inline std::strong_ordering structural_compare(const Term& a, const Term& b) {
  if (auto c = a.trace <=> b.trace; c != 0) return c;
  if (auto c = a.children.size() <=> b.children.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (auto c = structural_compare(a.children[i], b.children[i]); c != 0)
      return c;
  return std::strong_ordering::equal;
}

inline bool structural_equal(const Term& a, const Term& b) {
  return structural_compare(a, b) == std::strong_ordering::equal;
}

inline std::size_t term_size(const Term& t) {
  std::size_t n = 1;
  for (const Term& c : t.children) n += term_size(c);
  return n;
}

inline bool term_leq(const Dilator& w, const Term& t, const Term& u);

/// The finite order induced by term_leq on a canonical child list.
inline FinPoset induced_child_poset(const Dilator& w,
                                    const std::vector<Term>& children) {
  const std::size_t n = children.size();
  std::vector<std::uint8_t> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m[i * n + j] = (i == j) || term_leq(w, children[i], children[j]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (m[i * n + j] && m[j * n + i])
        throw AntisymmetryBreak("distinct children compare below each other");
  return FinPoset::from_matrix(n, std::move(m));
}

namespace detail {

struct Amalgam {
  std::vector<Term> nodes;          // sorted structurally, deduplicated
  std::vector<Code> left, right;    // child index -> node index
  FinPoset poset;
};

inline Amalgam amalgamate_children(const Dilator& w, const Term& t,
                                   const Term& u) {
  Amalgam r;
  r.nodes.reserve(t.children.size() + u.children.size());
  // Merge two canonically sorted child lists, identifying structural equals.
  std::size_t i = 0, j = 0;
  while (i < t.children.size() || j < u.children.size()) {
    if (j == u.children.size() ||
        (i < t.children.size() &&
         structural_compare(t.children[i], u.children[j]) ==
             std::strong_ordering::less)) {
      r.left.push_back(r.nodes.size());
      r.nodes.push_back(t.children[i++]);
    } else if (i == t.children.size() ||
               structural_compare(t.children[i], u.children[j]) ==
                   std::strong_ordering::greater) {
      r.right.push_back(r.nodes.size());
      r.nodes.push_back(u.children[j++]);
    } else {
      r.left.push_back(r.nodes.size());
      r.right.push_back(r.nodes.size());
      r.nodes.push_back(t.children[i++]);
      ++j;
    }
  }
  r.poset = induced_child_poset(w, r.nodes);
  return r;
}

}  // namespace detail

/// Recursive fixed-point comparison: t <= u iff t is below some child of u,
/// or the traces compare after transport into the amalgamated child order.
inline bool term_leq(const Dilator& w, const Term& t, const Term& u) {
  if (structural_equal(t, u)) return true;
  for (const Term& c : u.children)
    if (term_leq(w, t, c)) return true;
  const auto amalgam = detail::amalgamate_children(w, t, u);
  const CodedOrder rc = poset_order(amalgam.poset);
  const Code st = w.act(amalgam.left, t.trace);
  const Code su = w.act(amalgam.right, u.trace);
  return cmp_leq(w.compare(rc, st, su));
}

/// Canonical term construction. Children must already be canonical (sorted
/// structurally, no duplicates); the trace must be an element of the
/// application to the induced child order and must support every child.
inline Term make_term(const Dilator& w, Code trace, std::vector<Term> children) {
  for (std::size_t i = 0; i + 1 < children.size(); ++i)
    if (structural_compare(children[i], children[i + 1]) !=
        std::strong_ordering::less)
      throw OrderError("children not in canonical order or not distinct");
  const FinPoset p = induced_child_poset(w, children);
  const CodedOrder pc = poset_order(p);
  if (w.contains && !w.contains(pc, trace))
    throw NotAnElement("trace is not an element over the child order");
  auto supp = w.supp(pc, trace);
  std::sort(supp.begin(), supp.end());
  for (std::size_t i = 0; i < children.size(); ++i)
    if (std::find(supp.begin(), supp.end(), Code{i}) == supp.end())
      throw SupportNotFull(i, "child " + std::to_string(i) +
                                  " unused by the trace support");
  if (!supp.empty() && supp.back() >= children.size())
    throw NotAnElement("trace support references a missing child");
  return Term{trace, std::move(children)};
}

// ---------------------------------------------------------------------------
// Fixed-point axiom verification
// ---------------------------------------------------------------------------

struct AxiomMismatch {
  std::size_t i = 0, j = 0;
  bool via_term_leq = false;
  bool via_trace = false;
  bool via_children = false;
};

struct FixedPointAxiomReport {
  bool pass = true;
  std::vector<AxiomMismatch> mismatches;
  bool poset_ok = true;
  std::string poset_detail;
  std::uint64_t pairs = 0;
};

namespace detail {

/// Clause evaluation independent of term_leq's own shortcuts: transports
/// both traces into the amalgamated child order and compares there.
inline bool axiom_trace_clause(const Dilator& w, const Term& t, const Term& u) {
  std::vector<Term> nodes;
  std::vector<Code> lmap, rmap;
  for (const Term& c : t.children) {
    std::size_t pos = nodes.size();
    for (std::size_t k = 0; k < nodes.size(); ++k)
      if (structural_equal(nodes[k], c)) {
        pos = k;
        break;
      }
    if (pos == nodes.size()) nodes.push_back(c);
    lmap.push_back(pos);
  }
  for (const Term& c : u.children) {
    std::size_t pos = nodes.size();
    for (std::size_t k = 0; k < nodes.size(); ++k)
      if (structural_equal(nodes[k], c)) {
        pos = k;
        break;
      }
    if (pos == nodes.size()) nodes.push_back(c);
    rmap.push_back(pos);
  }
  // Note: node order differs from term_leq's sorted merge on purpose; the
  // outcome must not depend on it.
  const std::size_t n = nodes.size();
  std::vector<std::uint8_t> m(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      m[a * n + b] = (a == b) || term_leq(w, nodes[a], nodes[b]);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (m[a * n + b] && m[b * n + a])
        throw AntisymmetryBreak("distinct children compare below each other");
  const CodedOrder rc = poset_order(FinPoset::from_matrix(n, std::move(m)));
  return cmp_leq(w.compare(rc, w.act(lmap, t.trace), w.act(rmap, u.trace)));
}

inline bool axiom_children_clause(const Dilator& w, const Term& t,
                                  const Term& u) {
  for (const Term& c : u.children)
    if (term_leq(w, t, c)) return true;
  return false;
}

}  // namespace detail

/// For every ordered pair, evaluates term_leq against the independently
/// computed disjunction (trace clause or child-domination clause) and
/// verifies the poset axioms of the term order.
inline FixedPointAxiomReport check_fixed_point_axiom(
    const Dilator& w, const std::vector<Term>& terms) {
  FixedPointAxiomReport report;
  const std::size_t n = terms.size();
  std::vector<std::uint8_t> rel(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      ++report.pairs;
      const bool lhs = term_leq(w, terms[i], terms[j]);
      const bool c2 = detail::axiom_children_clause(w, terms[i], terms[j]);
      const bool c1 = detail::axiom_trace_clause(w, terms[i], terms[j]);
      rel[i * n + j] = lhs;
      if (lhs != (c1 || c2)) {
        report.pass = false;
        report.mismatches.push_back({i, j, lhs, c1, c2});
      }
    }
  for (std::size_t i = 0; i < n && report.poset_ok; ++i)
    if (!rel[i * n + i]) {
      report.poset_ok = false;
      report.poset_detail = "not reflexive at " + std::to_string(i);
    }
  for (std::size_t i = 0; i < n && report.poset_ok; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && rel[i * n + j] && rel[j * n + i] &&
          !structural_equal(terms[i], terms[j])) {
        report.poset_ok = false;
        report.poset_detail = "antisymmetry fails on (" + std::to_string(i) +
                              "," + std::to_string(j) + ")";
        break;
      }
  for (std::size_t i = 0; i < n && report.poset_ok; ++i)
    for (std::size_t j = 0; j < n && report.poset_ok; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (rel[i * n + j] && rel[j * n + k] && !rel[i * n + k]) {
          report.poset_ok = false;
          report.poset_detail = "transitivity fails on (" + std::to_string(i) +
                                "," + std::to_string(j) + "," +
                                std::to_string(k) + ")";
          break;
        }
  if (!report.poset_ok) report.pass = false;
  return report;
}

// ---------------------------------------------------------------------------
// Term enumeration
// ---------------------------------------------------------------------------

/// All normal-form terms with node count at most `max_size`, traces drawn
/// from the first `elem_budget` enumerated elements per application.
/// Deterministic: ascending size, structural order within each size.
inline std::vector<Term> enumerate_terms(const Dilator& w, std::size_t max_size,
                                         std::size_t elem_budget) {
  std::vector<Term> all;  // kept sorted structurally
  std::vector<Term> fresh;
  for (std::size_t s = 1; s <= max_size; ++s) {
    fresh.clear();
    // Choose a structurally ascending subset of known terms with sizes
    // summing to s-1, then every full-support trace over it.
    std::vector<Term> chosen;
    std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t from,
                                                               std::size_t left) {
      if (left == 0) {
        const FinPoset p = induced_child_poset(w, chosen);
        for (Code trace : w.elements(poset_order(p), elem_budget)) {
          auto supp = w.supp(poset_order(p), trace);
          if (supp.size() != chosen.size()) continue;
          std::sort(supp.begin(), supp.end());
          bool full = true;
          for (std::size_t k = 0; k < chosen.size(); ++k)
            if (supp[k] != k) {
              full = false;
              break;
            }
          if (full) fresh.push_back(Term{trace, chosen});
        }
        return;
      }
      for (std::size_t idx = from; idx < all.size(); ++idx) {
        const std::size_t sz = term_size(all[idx]);
        if (sz > left) continue;
        chosen.push_back(all[idx]);
        choose(idx + 1, left - sz);
        chosen.pop_back();
      }
    };
    choose(0, s - 1);
    std::sort(fresh.begin(), fresh.end(), [](const Term& a, const Term& b) {
      return structural_compare(a, b) == std::strong_ordering::less;
    });
    // Merge into the sorted pool.
    std::vector<Term> merged;
    merged.reserve(all.size() + fresh.size());
    std::merge(all.begin(), all.end(), fresh.begin(), fresh.end(),
               std::back_inserter(merged), [](const Term& a, const Term& b) {
                 return structural_compare(a, b) == std::strong_ordering::less;
               });
    all = std::move(merged);
  }
  // Report in deterministic (size, structural) order.
  std::stable_sort(all.begin(), all.end(), [](const Term& a, const Term& b) {
    const std::size_t sa = term_size(a), sb = term_size(b);
    if (sa != sb) return sa < sb;
    return structural_compare(a, b) == std::strong_ordering::less;
  });
  return all;
}

// ---------------------------------------------------------------------------
// Quasi embeddings into fixed points
// ---------------------------------------------------------------------------

/// Image of (beta, i) under the product-into-fixpoint embedding for the
/// alpha + X dilator: i-fold successor chain on top of the base element.
inline Term product_chain_term(const Dilator& v, Code beta, std::size_t i) {
  Term t = make_term(v, sum_left(beta), {});
  for (std::size_t k = 0; k < i; ++k)
    t = make_term(v, sum_right(0), {std::move(t)});
  return t;
}

struct ReflectionReport {
  bool pass = true;
  std::uint64_t pairs = 0;
  std::optional<std::pair<std::string, std::string>> witness;
};

/// Exhaustive reflection check of the product embedding: image comparison
/// in the fixed-point order must imply comparison in alpha x n.
inline ReflectionReport check_product_embedding(const CodedOrder& alpha,
                                                std::size_t n, Code code_bound) {
  const Dilator v = make_v_dilator(alpha);
  const CodedOrder product = product_order(alpha, finite_order(n));
  struct Entry {
    Code beta;
    std::size_t i;
    Term image;
  };
  std::vector<Entry> entries;
  for (Code beta = 0; beta < code_bound; ++beta) {
    if (!alpha.has(beta)) continue;
    for (std::size_t i = 0; i < n; ++i)
      entries.push_back({beta, i, product_chain_term(v, beta, i)});
  }
  ReflectionReport report;
  for (const auto& a : entries)
    for (const auto& b : entries) {
      ++report.pairs;
      if (term_leq(v, a.image, b.image) &&
          !product.leq(cantor_pair(a.beta, a.i), cantor_pair(b.beta, b.i))) {
        report.pass = false;
        report.witness = {{"(" + std::to_string(a.beta) + "," +
                              std::to_string(a.i) + ")",
                           "(" + std::to_string(b.beta) + "," +
                              std::to_string(b.i) + ")"}};
        return report;
      }
    }
  return report;
}

/// Image of an exponential-order term in the fixed point of the
/// 1 + (alpha x X) dilator: right-nested chain over the exponent list.
inline Term exp2_chain_term(const Dilator& w, const Exp2Term& sigma) {
  Term t = make_term(w, 0, {});
  for (std::size_t k = sigma.exponents.size(); k-- > 0;)
    t = make_term(w, sum_right(cantor_pair(sigma.exponents[k], 0)),
                  {std::move(t)});
  return t;
}

struct Exp2Embedding {
  Dilator w;
  std::vector<Exp2Term> sources;
  std::vector<Term> images;
};

/// Maps every enumerable term of the exponential order over alpha into the
/// fixed point, then verifies reflection exhaustively on that domain.
/// Throws ReflectionFailure if the post-check finds a violating pair.
inline Exp2Embedding exp2_fixpoint_embedding(const CodedOrder& alpha,
                                             std::size_t elem_budget) {
  Exp2Embedding e{make_w_dilator(alpha), {}, {}};
  const CodedOrder ex = exp2_order(alpha);
  for (std::uint64_t i = 0; i < elem_budget; ++i) {
    const auto mask = ex.at(i);
    if (!mask) break;
    e.sources.push_back(exp2_term_from_mask(*mask, alpha));
    e.images.push_back(exp2_chain_term(e.w, e.sources.back()));
  }
  for (std::size_t i = 0; i < e.sources.size(); ++i)
    for (std::size_t j = 0; j < e.sources.size(); ++j)
      if (term_leq(e.w, e.images[i], e.images[j]) &&
          !cmp_leq(exp2_compare(e.sources[i], e.sources[j], alpha)))
        throw ReflectionFailure("image comparison fails to reflect on (" +
                                format_exp2_term(e.sources[i]) + ", " +
                                format_exp2_term(e.sources[j]) + ")");
  return e;
}

// ---------------------------------------------------------------------------
// Display syntax: k(<trace>; <child>, <child>, ...)
// ---------------------------------------------------------------------------

inline std::string format_term(const Term& t) {
  std::ostringstream out;
  out << "k(" << t.trace;
  if (!t.children.empty()) {
    out << "; ";
    for (std::size_t i = 0; i < t.children.size(); ++i) {
      if (i) out << ", ";
      out << format_term(t.children[i]);
    }
  }
  out << ")";
  return out.str();
}

namespace detail {

inline Term parse_term_at(const std::string& s, std::size_t& pos) {
  const auto expect = [&](char c) {
    if (pos >= s.size() || s[pos] != c)
      throw OrderError("bad term literal near position " + std::to_string(pos));
    ++pos;
  };
  const auto skip_ws = [&] {
    while (pos < s.size() && s[pos] == ' ') ++pos;
  };
  expect('k');
  expect('(');
  std::size_t start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == start) throw OrderError("bad term literal: missing trace");
  Term t;
  t.trace = parse_code(s.substr(start, pos - start));
  skip_ws();
  if (pos < s.size() && s[pos] == ';') {
    ++pos;
    while (true) {
      skip_ws();
      t.children.push_back(parse_term_at(s, pos));
      skip_ws();
      if (pos < s.size() && s[pos] == ',') {
        ++pos;
        continue;
      }
      break;
    }
  }
  expect(')');
  return t;
}

}  // namespace detail

inline Term parse_term(const std::string& s) {
  std::size_t pos = 0;
  Term t = detail::parse_term_at(s, pos);
  if (pos != s.size()) throw OrderError("trailing characters in term literal");
  return t;
}

}  // namespace wpo

#endif  // WPO_FIXPOINT_HPP
