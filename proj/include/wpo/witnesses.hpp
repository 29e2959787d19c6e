#ifndef WPO_WITNESSES_HPP
#define WPO_WITNESSES_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wpo/core.hpp"
#include "wpo/dilators.hpp"
#include "wpo/orders.hpp"

namespace wpo {

struct NotUnary : OrderError {
  Code element;
  std::size_t support_size;
  NotUnary(Code e, std::size_t s, const std::string& what)
      : OrderError(what), element(e), support_size(s) {}
};

struct DecompositionFailure : OrderError {
  using OrderError::OrderError;
};

// ---------------------------------------------------------------------------
// Coloring-induced linear order and its bad sequence
// ---------------------------------------------------------------------------

/// A total coloring of the naturals with finitely many colors.
struct ColoringOrder {
  std::function<std::uint64_t(std::uint64_t)> color;
  std::uint64_t colors = 1;
};

/// The linear order on codes induced by a coloring: i is below j when its
/// color is bigger, ties broken by the reversed natural order.
inline CodedOrder coloring_base_order(const ColoringOrder& c) {
  CodedOrder o;
  o.name = "coloring:" + std::to_string(c.colors);
  o.linear = true;
  const auto color = c.color;
  o.compare = [color](Code i, Code j) {
    if (i == j) return Cmp::Equal;
    const auto ci = color(i), cj = color(j);
    if (ci != cj) return ci > cj ? Cmp::Less : Cmp::Greater;
    return i > j ? Cmp::Less : Cmp::Greater;
  };
  o.enumerate = [](std::uint64_t i) -> std::optional<Code> { return i; };
  return o;
}

/// The product order the bad sequence lives in.
inline CodedOrder coloring_product_order(const ColoringOrder& c) {
  return product_order(coloring_base_order(c),
                       finite_order(c.colors));
}

/// k-th member of the sequence (k, color(k)) as a product code.
inline Code coloring_bad_element(const ColoringOrder& c, std::uint64_t k) {
  return cantor_pair(k, c.color(k));
}

/// Adjoins a smallest element: code 0 is new and below everything, code k+1
/// stands for the original code k.
inline CodedOrder adjoin_bottom(CodedOrder base) {
  CodedOrder o;
  o.name = "bot+" + base.name;
  o.linear = base.linear;
  if (base.size) o.size = *base.size + 1;
  o.compare = [base](Code a, Code b) {
    if (a == 0 && b == 0) return Cmp::Equal;
    if (a == 0) return Cmp::Less;
    if (b == 0) return Cmp::Greater;
    return base.compare(a - 1, b - 1);
  };
  o.contains = [base](Code c) { return c == 0 || base.has(c - 1); };
  if (base.enumerate) {
    o.enumerate = [base](std::uint64_t i) -> std::optional<Code> {
      if (i == 0) return Code{0};
      const auto c = base.at(i - 1);
      return c ? std::optional<Code>(*c + 1) : std::nullopt;
    };
  }
  return o;
}

inline CodedOrder antichain_order(std::uint64_t n) {
  CodedOrder o = finite_order(n);
  o.name = "antichain:" + std::to_string(n);
  o.linear = false;
  o.compare = [](Code a, Code b) {
    return a == b ? Cmp::Equal : Cmp::Incomparable;
  };
  return o;
}

// ---------------------------------------------------------------------------
// Non-unarity witness and the amalgamation gadget
// ---------------------------------------------------------------------------

/// Extension of a support poset by two fresh elements sitting above the
/// down-sets of two marked points, with the point-swapping injections.
struct AmalgamationGadget {
  FinPoset base;            // the support poset
  std::size_t x = 0, y = 0; // marked distinct elements
  FinPoset extended;        // base plus fresh x', y'
  std::size_t x_prime = 0, y_prime = 0;
  Morphism inject_x, inject_y;
};

struct NonUnaryWitness {
  FinPoset support_poset;  // the witness poset restricted to the support
  Code sigma = 0;          // element over support_poset with |supp| >= 2
  AmalgamationGadget gadget;
  Code sigma_x = 0, sigma_y = 0;  // images under the injections, sigma_x !<= sigma_y
};

namespace detail {

inline FinPoset restrict_poset(const FinPoset& p, const std::vector<Code>& keep) {
  const std::size_t n = keep.size();
  std::vector<std::uint8_t> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m[i * n + j] = p.leq(static_cast<std::size_t>(keep[i]),
                           static_cast<std::size_t>(keep[j]));
  return FinPoset::from_matrix(n, std::move(m));
}

inline AmalgamationGadget build_gadget(const FinPoset& base, std::size_t x,
                                       std::size_t y) {
  const std::size_t n = base.size();
  std::vector<std::uint8_t> m((n + 2) * (n + 2), 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i * (n + 2) + j] = base.leq(i, j);
  const std::size_t xp = n, yp = n + 1;
  m[xp * (n + 2) + xp] = 1;
  m[yp * (n + 2) + yp] = 1;
  for (std::size_t z = 0; z < n; ++z) {
    if (base.leq(z, x)) m[z * (n + 2) + xp] = 1;
    if (base.leq(z, y)) m[z * (n + 2) + yp] = 1;
  }
  AmalgamationGadget g;
  g.base = base;
  g.x = x;
  g.y = y;
  g.extended = FinPoset::from_matrix(n + 2, std::move(m));
  g.x_prime = xp;
  g.y_prime = yp;
  const CodedOrder ext = poset_order(g.extended);
  std::vector<Code> fx(n), fy(n);
  for (std::size_t z = 0; z < n; ++z) {
    fx[z] = (z == x) ? xp : z;
    fy[z] = (z == y) ? yp : z;
  }
  g.inject_x = Morphism{base, ext, std::move(fx)};
  g.inject_y = Morphism{base, ext, std::move(fy)};
  return g;
}

}  // namespace detail

/// Searches budgeted posets for an element with at least two support points,
/// restricts to the support, and builds the two-fresh-point gadget oriented
/// so that sigma_x is not below sigma_y. None when the dilator looks unary.
inline std::optional<NonUnaryWitness> nonunary_witness(const Dilator& w,
                                                       const Budget& budget) {
  for (std::size_t n = 1; n <= budget.poset_size; ++n)
    for (const FinPoset& x : enumerate_fin_posets(n)) {
      const CodedOrder xc = poset_order(x);
      for (Code sigma : w.elements(xc, budget.elements)) {
        auto supp = w.supp(xc, sigma);
        if (supp.size() < 2) continue;
        std::sort(supp.begin(), supp.end());
        // Restrict to the support; find the preimage under the inclusion.
        const FinPoset x0 = detail::restrict_poset(x, supp);
        const CodedOrder x0c = poset_order(x0);
        std::optional<Code> sigma0;
        for (Code e : w.elements(x0c, budget.elements))
          if (w.act(supp, e) == sigma) {
            sigma0 = e;
            break;
          }
        if (!sigma0)
          throw DecompositionFailure(
              "support-restricted preimage not found; support condition broken");
        const auto orient = [&](std::size_t a, std::size_t b)
            -> std::optional<NonUnaryWitness> {
          AmalgamationGadget g = detail::build_gadget(x0, a, b);
          const CodedOrder extc = poset_order(g.extended);
          const Code sx = w.act(g.inject_x.map, *sigma0);
          const Code sy = w.act(g.inject_y.map, *sigma0);
          if (cmp_leq(w.compare(extc, sx, sy))) return std::nullopt;
          NonUnaryWitness wit;
          wit.support_poset = x0;
          wit.sigma = *sigma0;
          wit.gadget = std::move(g);
          wit.sigma_x = sx;
          wit.sigma_y = sy;
          return wit;
        };
        if (auto wit = orient(0, 1)) return wit;
        if (auto wit = orient(1, 0)) return wit;
        throw OrderError("could not orient the gadget images");
      }
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Extended report: the coloring-driven maps around the gadget
// ---------------------------------------------------------------------------

/// Materialization of the three auxiliary maps into N + alpha + (X minus the
/// marked pair), on one index pair of the coloring's bad sequence, together
/// with the composition identities they must satisfy.
struct NonUnaryReport {
  NonUnaryWitness witness;
  CodedOrder target;               // N + (bottom + alpha) + rest
  std::vector<Code> g_i, g_i_prime, g_j, h;
  bool identities_ok = false;      // g_i' = h o f_x and g_j = h o f_y
  bool quasi_ok = false;           // all four maps reflect
};

inline NonUnaryReport nonunary_report(const Dilator& w, const ColoringOrder& c,
                                      std::uint64_t i, std::uint64_t j,
                                      const Budget& budget) {
  if (i >= j) throw OrderError("report needs indices i < j");
  if (c.color(i) == c.color(j))
    throw OrderError("report case needs distinct colors at i and j");
  auto wit = nonunary_witness(w, budget);
  if (!wit) throw OrderError("dilator is unary within budget; no report");
  NonUnaryReport rep;
  rep.witness = std::move(*wit);
  const FinPoset& x0 = rep.witness.support_poset;
  const std::size_t n0 = x0.size();
  const std::size_t mx = rep.witness.gadget.x, my = rep.witness.gadget.y;

  // Remaining elements keep their relative order.
  std::vector<Code> rest;
  for (std::size_t z = 0; z < n0; ++z)
    if (z != mx && z != my) rest.push_back(z);
  const CodedOrder rest_order = poset_order(detail::restrict_poset(x0, rest));
  const CodedOrder alpha_bot = adjoin_bottom(coloring_base_order(c));
  rep.target = sum_order(sum_order(antichain_order(c.colors), alpha_bot),
                         rest_order);

  const auto enc_n = [](Code v) { return sum_left(sum_left(v)); };
  const auto enc_a = [](Code v) { return sum_left(sum_right(v)); };
  const auto enc_r = [](Code v) { return sum_right(v); };
  const auto rest_index = [&](std::size_t z) -> Code {
    const auto it = std::find(rest.begin(), rest.end(), Code{z});
    return static_cast<Code>(it - rest.begin());
  };
  const Code beta_i = i + 1, beta_j = j + 1, bottom = 0;  // bottom-shifted

  rep.g_i.resize(n0);
  rep.g_i_prime.resize(n0);
  rep.g_j.resize(n0);
  for (std::size_t z = 0; z < n0; ++z) {
    if (z == mx) {
      rep.g_i[z] = enc_n(c.color(i));
      rep.g_i_prime[z] = enc_n(c.color(i));
      rep.g_j[z] = enc_n(c.color(j));
    } else if (z == my) {
      rep.g_i[z] = enc_a(beta_i);
      rep.g_i_prime[z] = enc_a(bottom);
      rep.g_j[z] = enc_a(beta_j);
    } else {
      rep.g_i[z] = rep.g_i_prime[z] = rep.g_j[z] = enc_r(rest_index(z));
    }
  }
  rep.h.resize(n0 + 2);
  for (std::size_t z = 0; z < n0; ++z) {
    if (z == mx)
      rep.h[z] = enc_n(c.color(j));
    else if (z == my)
      rep.h[z] = enc_a(bottom);
    else
      rep.h[z] = enc_r(rest_index(z));
  }
  rep.h[rep.witness.gadget.x_prime] = enc_n(c.color(i));
  rep.h[rep.witness.gadget.y_prime] = enc_a(beta_j);

  // Composition identities.
  rep.identities_ok = true;
  for (std::size_t z = 0; z < n0; ++z) {
    if (rep.g_i_prime[z] != rep.h[rep.witness.gadget.inject_x.map[z]])
      rep.identities_ok = false;
    if (rep.g_j[z] != rep.h[rep.witness.gadget.inject_y.map[z]])
      rep.identities_ok = false;
  }
  // Quasi-embedding checks on the finite window.
  rep.quasi_ok = true;
  for (const auto& m : {rep.g_i, rep.g_i_prime, rep.g_j})
    if (!check_morphism(Morphism{x0, rep.target, m}, MorphismMode::Quasi).pass)
      rep.quasi_ok = false;
  if (!check_morphism(
           Morphism{rep.witness.gadget.extended, rep.target, rep.h},
           MorphismMode::Quasi)
           .pass)
    rep.quasi_ok = false;
  return rep;
}

// ---------------------------------------------------------------------------
// Unary decomposition: W(X) into (W(0) + W(1)) x X
// ---------------------------------------------------------------------------

struct UnaryEmbedding {
  CodedOrder source;  // W(X)
  CodedOrder target;  // (W(0) + W(1)) x X
  std::vector<std::pair<Code, Code>> mapping;  // element -> product code
};

/// Decomposes every element of W(X) through its support: empty-support
/// elements factor through W(0) and are anchored at z, singleton-support
/// elements factor through W(1) anchored at their support point.
inline UnaryEmbedding unary_quasi_embedding(const Dilator& w, const FinPoset& x,
                                            std::size_t z, const Budget& budget) {
  if (x.size() == 0) throw OrderError("decomposition needs a nonempty poset");
  if (z >= x.size()) throw OrderError("anchor element outside the poset");
  {
    const LawVerdict u = check_unary_law(w, budget);
    if (!u.pass)
      throw NotUnary(u.witness->elements.at(0),
                     2, "dilator is not unary within budget");
    const LawVerdict m = check_monotone_law(w, budget);
    if (!m.pass) throw OrderError("dilator is not monotone within budget");
  }
  const FinPoset empty_poset = finposet_new(0, {});
  const FinPoset point_poset = finposet_new(1, {});
  const CodedOrder xc = poset_order(x);
  const CodedOrder w0 = application_order(w, poset_order(empty_poset));
  const CodedOrder w1 = application_order(w, poset_order(point_poset));

  const auto w0_elems = w.elements(poset_order(empty_poset), budget.elements);
  const auto w1_elems = w.elements(poset_order(point_poset), budget.elements);

  UnaryEmbedding e;
  e.source = application_order(w, xc);
  e.target = product_order(sum_order(w0, w1), xc);
  for (Code sigma : w.elements(xc, budget.elements)) {
    const auto supp = w.supp(xc, sigma);
    if (supp.empty()) {
      std::optional<Code> sigma0;
      for (Code cand : w0_elems)
        if (w.act({}, cand) == sigma) {
          sigma0 = cand;
          break;
        }
      if (!sigma0)
        throw DecompositionFailure("no preimage through the empty application");
      e.mapping.emplace_back(sigma, cantor_pair(sum_left(*sigma0), z));
    } else if (supp.size() == 1) {
      std::optional<Code> sigma0;
      for (Code cand : w1_elems)
        if (w.act({supp[0]}, cand) == sigma) {
          sigma0 = cand;
          break;
        }
      if (!sigma0)
        throw DecompositionFailure("no preimage through the point application");
      e.mapping.emplace_back(sigma, cantor_pair(sum_right(*sigma0), supp[0]));
    } else {
      throw NotUnary(sigma, supp.size(), "element with large support");
    }
  }
  return e;
}

struct EmbeddingReflection {
  bool pass = true;
  std::uint64_t pairs = 0;
  std::optional<std::pair<Code, Code>> witness;
};

/// Exhaustive reflection of the decomposition on its materialized domain.
inline EmbeddingReflection check_unary_embedding(const Dilator& w,
                                                 const FinPoset& x,
                                                 const UnaryEmbedding& e) {
  const CodedOrder xc = poset_order(x);
  EmbeddingReflection r;
  for (const auto& [a, fa] : e.mapping)
    for (const auto& [b, fb] : e.mapping) {
      ++r.pairs;
      if (e.target.leq(fa, fb) && !cmp_leq(w.compare(xc, a, b))) {
        r.pass = false;
        r.witness = {{a, b}};
        return r;
      }
    }
  return r;
}

}  // namespace wpo

#endif  // WPO_WITNESSES_HPP
