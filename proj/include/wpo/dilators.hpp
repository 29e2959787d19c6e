#ifndef WPO_DILATORS_HPP
#define WPO_DILATORS_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wpo/core.hpp"
#include "wpo/orders.hpp"

namespace wpo {

/// Bounds for exhaustive law checking: posets up to `poset_size` elements,
/// at most `elements` enumerated elements per application, morphism-based
/// laws over all posets up to `morphism_poset_size` elements.
struct Budget {
  std::size_t poset_size = 3;
  std::size_t elements = 64;
  std::size_t morphism_poset_size = 2;
};

/// A coded PO-dilator: element enumeration, comparison, morphism action and
/// finite support, each parameterized by the argument order. Element codes
/// are canonical; the morphism action receives only the underlying map
/// (domain element index -> codomain code).
struct Dilator {
  std::string name;
  std::function<std::vector<Code>(const CodedOrder&, std::size_t)> elements;
  std::function<Cmp(const CodedOrder&, Code, Code)> compare;
  std::function<Code(const std::vector<Code>&, Code)> act;
  std::function<std::vector<Code>(const CodedOrder&, Code)> supp;
  std::function<bool(const CodedOrder&, Code)> contains;
};

// ---------------------------------------------------------------------------
// Builtin dilators
// ---------------------------------------------------------------------------

namespace detail {

inline Cmp product_cmp(Cmp c1, Cmp c2) {
  if (c1 == Cmp::Equal) return c2;
  if (c2 == Cmp::Equal) return c1;
  if (c1 == c2) return c1;
  return Cmp::Incomparable;
}

/// Single-pass walk of the valid Cantor pair codes over two enumerations.
template <typename Push>
void walk_pairs(const CodedOrder& a, const CodedOrder& b, std::size_t max,
                Push&& push) {
  if (max == 0 || !a.at(0) || !b.at(0)) return;
  std::size_t pushed = 0;
  for (std::uint64_t k = 0; pushed < max; ++k) {
    const auto [i, j] = cantor_unpair(k);
    // Every diagonal meets (0, j) and (i, 0); with both sides nonempty the
    // walk keeps finding valid pairs, and finite-by-finite walks stop at
    // the last diagonal that can carry one.
    if (a.size && b.size && k > cantor_pair(*a.size, *b.size)) break;
    const auto ca = a.at(i);
    const auto cb = b.at(j);
    if (!ca || !cb) continue;
    push(cantor_pair(*ca, *cb));
    ++pushed;
  }
}

}  // namespace detail

/// alpha + X: left summand carries the parameter order with empty supports,
/// right summand carries X with singleton supports. Element codes are the
/// sum codes (even: parameter, odd: X).
inline Dilator make_v_dilator(CodedOrder alpha) {
  Dilator d;
  d.name = "V:" + alpha.name;
  d.elements = [alpha](const CodedOrder& x, std::size_t max) {
    std::vector<Code> out;
    bool more = true;
    for (std::uint64_t k = 0; more && out.size() < max; ++k) {
      more = false;
      if (const auto c = alpha.at(k)) {
        out.push_back(sum_left(*c));
        more = true;
      }
      if (out.size() < max)
        if (const auto c = x.at(k)) {
          out.push_back(sum_right(*c));
          more = true;
        }
    }
    return out;
  };
  d.compare = [alpha](const CodedOrder& x, Code a, Code b) {
    if (a % 2 != b % 2) return Cmp::Incomparable;
    return a % 2 == 0 ? alpha.compare(a / 2, b / 2) : x.compare(a / 2, b / 2);
  };
  d.act = [](const std::vector<Code>& map, Code e) -> Code {
    if (e % 2 == 0) return e;
    const Code x = e / 2;
    if (x >= map.size()) throw OrderError("element outside morphism domain");
    return sum_right(map[x]);
  };
  d.supp = [](const CodedOrder&, Code e) -> std::vector<Code> {
    if (e % 2 == 0) return {};
    return {e / 2};
  };
  d.contains = [alpha](const CodedOrder& x, Code e) {
    return e % 2 == 0 ? alpha.has(e / 2) : x.has(e / 2);
  };
  return d;
}

/// 1 + (alpha x X): the unit plus parameter-labelled copies of X; the unit
/// has empty support, pairs support their X component. Codes: 0 is the
/// unit, a pair (beta, x) is the odd code of its Cantor pairing.
inline Dilator make_w_dilator(CodedOrder alpha, std::string kind = "W") {
  Dilator d;
  d.name = kind + ":" + alpha.name;
  d.elements = [alpha](const CodedOrder& x, std::size_t max) {
    std::vector<Code> out;
    if (max == 0) return out;
    out.push_back(0);
    detail::walk_pairs(alpha, x, max - 1,
                       [&](Code p) { out.push_back(sum_right(p)); });
    return out;
  };
  d.compare = [alpha](const CodedOrder& x, Code a, Code b) {
    if (a == 0 || b == 0) return a == b ? Cmp::Equal : Cmp::Incomparable;
    const auto [a1, a2] = cantor_unpair(a / 2);
    const auto [b1, b2] = cantor_unpair(b / 2);
    return detail::product_cmp(alpha.compare(a1, b1), x.compare(a2, b2));
  };
  d.act = [](const std::vector<Code>& map, Code e) -> Code {
    if (e == 0) return 0;
    if (e % 2 == 0) throw OrderError("invalid element code");
    const auto [beta, x] = cantor_unpair(e / 2);
    if (x >= map.size()) throw OrderError("element outside morphism domain");
    return sum_right(cantor_pair(beta, map[x]));
  };
  d.supp = [](const CodedOrder&, Code e) -> std::vector<Code> {
    if (e == 0) return {};
    return {cantor_unpair(e / 2).second};
  };
  d.contains = [alpha](const CodedOrder& x, Code e) {
    if (e == 0) return true;
    if (e % 2 == 0) return false;
    const auto [beta, xc] = cantor_unpair(e / 2);
    return alpha.has(beta) && x.has(xc);
  };
  return d;
}

/// Sequence-constructor dilator: identical shape to the labelled product
/// form, but the label order may be an arbitrary partial order.
inline Dilator make_cons_dilator(CodedOrder labels) {
  return make_w_dilator(std::move(labels), "cons");
}

/// 1 + (X x X): binary pairing with componentwise order; a pair supports
/// both components, which makes this the canonical non-unary example.
inline Dilator make_tree2_dilator() {
  Dilator d;
  d.name = "tree2";
  d.elements = [](const CodedOrder& x, std::size_t max) {
    std::vector<Code> out;
    if (max == 0) return out;
    out.push_back(0);
    detail::walk_pairs(x, x, max - 1,
                       [&](Code p) { out.push_back(sum_right(p)); });
    return out;
  };
  d.compare = [](const CodedOrder& x, Code a, Code b) {
    if (a == 0 || b == 0) return a == b ? Cmp::Equal : Cmp::Incomparable;
    const auto [a1, a2] = cantor_unpair(a / 2);
    const auto [b1, b2] = cantor_unpair(b / 2);
    return detail::product_cmp(x.compare(a1, b1), x.compare(a2, b2));
  };
  d.act = [](const std::vector<Code>& map, Code e) -> Code {
    if (e == 0) return 0;
    if (e % 2 == 0) throw OrderError("invalid element code");
    const auto [x, y] = cantor_unpair(e / 2);
    if (x >= map.size() || y >= map.size())
      throw OrderError("element outside morphism domain");
    return sum_right(cantor_pair(map[x], map[y]));
  };
  d.supp = [](const CodedOrder&, Code e) -> std::vector<Code> {
    if (e == 0) return {};
    const auto [x, y] = cantor_unpair(e / 2);
    if (x == y) return {x};
    std::vector<Code> s{x, y};
    std::sort(s.begin(), s.end());
    return s;
  };
  d.contains = [](const CodedOrder& x, Code e) {
    if (e == 0) return true;
    if (e % 2 == 0) return false;
    const auto [a, b] = cantor_unpair(e / 2);
    return x.has(a) && x.has(b);
  };
  return d;
}

enum class DilatorKind { V, W, Cons, Tree2 };

inline Dilator make_builtin_dilator(DilatorKind kind,
                                    std::optional<CodedOrder> param) {
  switch (kind) {
    case DilatorKind::V:
      if (!param) throw OrderError("V requires a parameter order");
      return make_v_dilator(*param);
    case DilatorKind::W:
      if (!param) throw OrderError("W requires a parameter order");
      return make_w_dilator(*param);
    case DilatorKind::Cons:
      if (!param) throw OrderError("cons requires a parameter order");
      return make_cons_dilator(*param);
    case DilatorKind::Tree2: return make_tree2_dilator();
  }
  throw OrderError("unknown dilator kind");
}

/// W(X) viewed as a coded order (enumeration is the dilator's, assumed
/// prefix-stable in the element budget).
inline CodedOrder application_order(const Dilator& w, CodedOrder x) {
  CodedOrder o;
  o.name = w.name + "(" + x.name + ")";
  o.compare = [w, x](Code a, Code b) { return w.compare(x, a, b); };
  o.enumerate = [w, x](std::uint64_t i) -> std::optional<Code> {
    auto elems = w.elements(x, static_cast<std::size_t>(i) + 1);
    if (i >= elems.size()) return std::nullopt;
    return elems[i];
  };
  o.contains = [w, x](Code c) { return !w.contains || w.contains(x, c); };
  return o;
}

/// Good-pair search inside an application W(X).
inline std::optional<std::pair<std::size_t, std::size_t>>
find_good_pair_in_application(const Dilator& w, const CodedOrder& x,
                              const std::vector<Code>& seq) {
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (cmp_leq(w.compare(x, seq[i], seq[j]))) return std::make_pair(i, j);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Poset and morphism enumeration
// ---------------------------------------------------------------------------

/// All labelled partial orders on {0..n-1}, in ascending bitmask order over
/// the off-diagonal relation entries.
inline std::vector<FinPoset> enumerate_fin_posets(std::size_t n) {
  if (n > 5)
    throw OrderError("exhaustive poset enumeration is limited to 5 elements");
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) slots.emplace_back(i, j);
  std::vector<FinPoset> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    std::vector<std::uint8_t> m(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1;
    for (std::size_t s = 0; s < slots.size(); ++s)
      if (mask & (std::uint64_t{1} << s))
        m[slots[s].first * n + slots[s].second] = 1;
    try {
      out.push_back(FinPoset::from_matrix(n, std::move(m)));
    } catch (const OrderError&) {
      // not a poset; skip
    }
  }
  return out;
}

/// All quasi embeddings (order-reflecting injections) from X into Y, as maps.
inline std::vector<std::vector<Code>> enumerate_quasi_embeddings(
    const FinPoset& x, const FinPoset& y) {
  std::vector<std::vector<Code>> out;
  const std::size_t n = x.size(), m = y.size();
  if (n > m && n > 0) return out;
  std::vector<Code> map(n, 0);
  std::vector<bool> used(m, false);
  const CodedOrder yc = poset_order(y);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      Morphism f{x, yc, map};
      if (check_morphism(f, MorphismMode::Quasi).pass) out.push_back(map);
      return;
    }
    for (std::size_t t = 0; t < m; ++t) {
      if (used[t]) continue;
      used[t] = true;
      map[i] = t;
      rec(i + 1);
      used[t] = false;
    }
  };
  if (n == 0)
    out.push_back({});
  else
    rec(0);
  return out;
}

inline bool is_full_embedding(const FinPoset& x, const FinPoset& y,
                              const std::vector<Code>& map) {
  Morphism f{x, poset_order(y), map};
  return check_morphism(f, MorphismMode::Full).pass;
}

/// Random poset: forward edges among shuffled labels, then closure.
inline FinPoset random_fin_poset(std::mt19937_64& rng, std::size_t n,
                                 double edge_prob = 0.4) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::bernoulli_distribution flip(edge_prob);
  std::vector<std::pair<Code, Code>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (flip(rng)) pairs.emplace_back(perm[i], perm[j]);
  return finposet_new(n, pairs);
}

// ---------------------------------------------------------------------------
// Law checking
// ---------------------------------------------------------------------------

enum class DilatorLaw { Functor, Naturality, SupportCondition, Normal, Unary, Monotone };

inline const char* law_name(DilatorLaw law) {
  switch (law) {
    case DilatorLaw::Functor: return "functor";
    case DilatorLaw::Naturality: return "naturality";
    case DilatorLaw::SupportCondition: return "support_condition";
    case DilatorLaw::Normal: return "normal";
    case DilatorLaw::Unary: return "unary";
    case DilatorLaw::Monotone: return "monotone";
  }
  return "?";
}

inline std::optional<DilatorLaw> law_from_name(const std::string& s) {
  for (DilatorLaw l : {DilatorLaw::Functor, DilatorLaw::Naturality,
                       DilatorLaw::SupportCondition, DilatorLaw::Normal,
                       DilatorLaw::Unary, DilatorLaw::Monotone})
    if (s == law_name(l)) return l;
  if (s == "support") return DilatorLaw::SupportCondition;
  return std::nullopt;
}

/// Concrete instance on which a law failed; enough to replay the check.
struct LawWitness {
  std::vector<FinPoset> posets;
  std::vector<std::vector<Code>> maps;
  std::vector<Code> elements;
  std::string detail;
};

struct LawVerdict {
  DilatorLaw law = DilatorLaw::Functor;
  bool pass = true;
  std::optional<LawWitness> witness;
  std::uint64_t instances = 0;
};

namespace detail {

inline std::vector<Code> image_sorted(const std::vector<Code>& map,
                                      const std::vector<Code>& supp) {
  std::vector<Code> out;
  out.reserve(supp.size());
  for (Code s : supp) {
    if (s >= map.size()) throw OrderError("support outside morphism domain");
    out.push_back(map[s]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<FinPoset> posets_up_to(std::size_t n) {
  std::vector<FinPoset> out;
  for (std::size_t k = 0; k <= n; ++k) {
    auto batch = enumerate_fin_posets(k);
    out.insert(out.end(), batch.begin(), batch.end());
  }
  return out;
}

}  // namespace detail

inline LawVerdict check_functor_law(const Dilator& w, const Budget& budget) {
  LawVerdict v{DilatorLaw::Functor, true, std::nullopt, 0};
  // Identity action on every poset within the poset budget.
  for (const auto& x : detail::posets_up_to(budget.poset_size)) {
    const CodedOrder xc = poset_order(x);
    std::vector<Code> id(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) id[i] = i;
    for (Code e : w.elements(xc, budget.elements)) {
      ++v.instances;
      if (w.act(id, e) != e) {
        v.pass = false;
        v.witness = LawWitness{{x}, {id}, {e}, "identity action moved element"};
        return v;
      }
    }
  }
  // Composition and embedding preservation over small posets.
  const auto small = detail::posets_up_to(budget.morphism_poset_size);
  for (const auto& x : small)
    for (const auto& y : small) {
      const CodedOrder xc = poset_order(x), yc = poset_order(y);
      for (const auto& f : enumerate_quasi_embeddings(x, y)) {
        const bool f_full = is_full_embedding(x, y, f);
        const auto ex = w.elements(xc, budget.elements);
        // Lifted map must reflect; preserve too when f is an embedding.
        for (Code a : ex)
          for (Code b : ex) {
            ++v.instances;
            const Cmp lifted = w.compare(yc, w.act(f, a), w.act(f, b));
            if (cmp_leq(lifted) && !cmp_leq(w.compare(xc, a, b))) {
              v.pass = false;
              v.witness = LawWitness{{x, y}, {f}, {a, b},
                                     "lifted map does not reflect"};
              return v;
            }
            if (f_full && cmp_leq(w.compare(xc, a, b)) && !cmp_leq(lifted)) {
              v.pass = false;
              v.witness = LawWitness{{x, y}, {f}, {a, b},
                                     "lifted map does not preserve"};
              return v;
            }
          }
        for (const auto& z : small)
          for (const auto& g : enumerate_quasi_embeddings(y, z)) {
            std::vector<Code> gf(f.size());
            for (std::size_t i = 0; i < f.size(); ++i) gf[i] = g[f[i]];
            for (Code e : ex) {
              ++v.instances;
              if (w.act(gf, e) != w.act(g, w.act(f, e))) {
                v.pass = false;
                v.witness = LawWitness{{x, y, z}, {f, g}, {e},
                                       "composition action mismatch"};
                return v;
              }
            }
          }
      }
    }
  return v;
}

inline LawVerdict check_naturality_law(const Dilator& w, const Budget& budget) {
  LawVerdict v{DilatorLaw::Naturality, true, std::nullopt, 0};
  const auto small = detail::posets_up_to(budget.morphism_poset_size);
  for (const auto& x : small)
    for (const auto& y : small) {
      const CodedOrder xc = poset_order(x), yc = poset_order(y);
      for (const auto& f : enumerate_quasi_embeddings(x, y))
        for (Code e : w.elements(xc, budget.elements)) {
          ++v.instances;
          auto lhs = w.supp(yc, w.act(f, e));
          std::sort(lhs.begin(), lhs.end());
          const auto rhs = detail::image_sorted(f, w.supp(xc, e));
          if (lhs != rhs) {
            v.pass = false;
            v.witness = LawWitness{{x, y}, {f}, {e},
                                   "support image differs from acted support"};
            return v;
          }
        }
    }
  return v;
}

inline LawVerdict check_support_condition_law(const Dilator& w,
                                              const Budget& budget) {
  LawVerdict v{DilatorLaw::SupportCondition, true, std::nullopt, 0};
  const auto small = detail::posets_up_to(budget.morphism_poset_size);
  for (const auto& x : small)
    for (const auto& y : small) {
      const CodedOrder xc = poset_order(x), yc = poset_order(y);
      for (const auto& f : enumerate_quasi_embeddings(x, y)) {
        if (!is_full_embedding(x, y, f)) continue;
        const auto domain_elems = w.elements(xc, budget.elements);
        // When the domain enumeration is cut off by the budget, a missing
        // preimage proves nothing; only the converse direction stays exact.
        const bool truncated = domain_elems.size() == budget.elements;
        std::set<Code> range;
        for (Code e : domain_elems) range.insert(w.act(f, e));
        std::set<Code> fr(f.begin(), f.end());
        for (Code t : w.elements(yc, budget.elements)) {
          ++v.instances;
          const auto supp = w.supp(yc, t);
          const bool supported = std::all_of(
              supp.begin(), supp.end(), [&](Code s) { return fr.count(s) > 0; });
          const bool in_range = range.count(t) > 0;
          if (in_range && !supported) {
            v.pass = false;
            v.witness = LawWitness{{x, y}, {f}, {t},
                                   "range element with support outside the image"};
            return v;
          }
          if (supported && !in_range && !truncated) {
            v.pass = false;
            v.witness = LawWitness{{x, y}, {f}, {t},
                                   "supported element missing from range"};
            return v;
          }
        }
      }
    }
  return v;
}

inline LawVerdict check_normal_law(const Dilator& w, const Budget& budget) {
  LawVerdict v{DilatorLaw::Normal, true, std::nullopt, 0};
  for (const auto& x : detail::posets_up_to(budget.poset_size)) {
    const CodedOrder xc = poset_order(x);
    const auto ex = w.elements(xc, budget.elements);
    for (Code a : ex)
      for (Code b : ex) {
        ++v.instances;
        if (cmp_leq(w.compare(xc, a, b)) &&
            !leq_fin(w.supp(xc, a), w.supp(xc, b), xc)) {
          v.pass = false;
          v.witness = LawWitness{{x}, {}, {a, b},
                                 "comparable elements with undominated support"};
          return v;
        }
      }
  }
  return v;
}

inline LawVerdict check_unary_law(const Dilator& w, const Budget& budget) {
  LawVerdict v{DilatorLaw::Unary, true, std::nullopt, 0};
  for (const auto& x : detail::posets_up_to(budget.poset_size)) {
    const CodedOrder xc = poset_order(x);
    for (Code e : w.elements(xc, budget.elements)) {
      ++v.instances;
      if (w.supp(xc, e).size() > 1) {
        v.pass = false;
        v.witness = LawWitness{{x}, {}, {e}, "support has more than one point"};
        return v;
      }
    }
  }
  return v;
}

inline LawVerdict check_monotone_law(const Dilator& w, const Budget& budget) {
  LawVerdict v{DilatorLaw::Monotone, true, std::nullopt, 0};
  const auto small = detail::posets_up_to(budget.morphism_poset_size);
  for (const auto& x : small)
    for (const auto& y : small) {
      const CodedOrder xc = poset_order(x), yc = poset_order(y);
      const auto maps = enumerate_quasi_embeddings(x, y);
      for (const auto& f : maps)
        for (const auto& g : maps) {
          bool pointwise = true;
          for (std::size_t i = 0; i < f.size() && pointwise; ++i)
            pointwise = yc.leq(f[i], g[i]);
          if (!pointwise) continue;
          for (Code e : w.elements(xc, budget.elements)) {
            ++v.instances;
            if (!cmp_leq(w.compare(yc, w.act(f, e), w.act(g, e)))) {
              v.pass = false;
              v.witness = LawWitness{{x, y}, {f, g}, {e},
                                     "pointwise larger map lifted non-larger"};
              return v;
            }
          }
        }
    }
  return v;
}

inline std::vector<LawVerdict> check_dilator_laws(const Dilator& w,
                                                  const std::set<DilatorLaw>& laws,
                                                  const Budget& budget) {
  std::vector<LawVerdict> out;
  for (DilatorLaw law : laws) {
    switch (law) {
      case DilatorLaw::Functor: out.push_back(check_functor_law(w, budget)); break;
      case DilatorLaw::Naturality:
        out.push_back(check_naturality_law(w, budget));
        break;
      case DilatorLaw::SupportCondition:
        out.push_back(check_support_condition_law(w, budget));
        break;
      case DilatorLaw::Normal: out.push_back(check_normal_law(w, budget)); break;
      case DilatorLaw::Unary: out.push_back(check_unary_law(w, budget)); break;
      case DilatorLaw::Monotone:
        out.push_back(check_monotone_law(w, budget));
        break;
    }
  }
  std::sort(out.begin(), out.end(), [](const LawVerdict& a, const LawVerdict& b) {
    return std::string(law_name(a.law)) < law_name(b.law);
  });
  return out;
}

/// Re-evaluates a Fail verdict on its recorded instance. Returns true when
/// the violation reproduces.
inline bool replay_law_violation(const Dilator& w, const LawVerdict& v) {
  if (v.pass || !v.witness) return false;
  const LawWitness& wit = *v.witness;
  const auto poset = [&](std::size_t i) { return poset_order(wit.posets.at(i)); };
  switch (v.law) {
    case DilatorLaw::Unary:
      return w.supp(poset(0), wit.elements.at(0)).size() > 1;
    case DilatorLaw::Normal: {
      const CodedOrder xc = poset(0);
      return cmp_leq(w.compare(xc, wit.elements.at(0), wit.elements.at(1))) &&
             !leq_fin(w.supp(xc, wit.elements.at(0)),
                      w.supp(xc, wit.elements.at(1)), xc);
    }
    case DilatorLaw::Naturality: {
      auto lhs = w.supp(poset(1), w.act(wit.maps.at(0), wit.elements.at(0)));
      std::sort(lhs.begin(), lhs.end());
      return lhs != detail::image_sorted(wit.maps.at(0),
                                         w.supp(poset(0), wit.elements.at(0)));
    }
    case DilatorLaw::SupportCondition: {
      const CodedOrder xc = poset(0), yc = poset(1);
      const auto& f = wit.maps.at(0);
      const Code t = wit.elements.at(0);
      std::set<Code> range;
      for (Code e : w.elements(xc, 4096)) range.insert(w.act(f, e));
      std::set<Code> fr(f.begin(), f.end());
      const auto supp = w.supp(yc, t);
      const bool supported = std::all_of(supp.begin(), supp.end(),
                                         [&](Code s) { return fr.count(s) > 0; });
      return supported != (range.count(t) > 0);
    }
    case DilatorLaw::Monotone: {
      const CodedOrder yc = poset(1);
      return !cmp_leq(w.compare(yc, w.act(wit.maps.at(0), wit.elements.at(0)),
                                w.act(wit.maps.at(1), wit.elements.at(0))));
    }
    case DilatorLaw::Functor: {
      if (wit.detail == "identity action moved element")
        return w.act(wit.maps.at(0), wit.elements.at(0)) != wit.elements.at(0);
      if (wit.detail == "composition action mismatch") {
        const auto& f = wit.maps.at(0);
        const auto& g = wit.maps.at(1);
        std::vector<Code> gf(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) gf[i] = g[f[i]];
        return w.act(gf, wit.elements.at(0)) !=
               w.act(g, w.act(f, wit.elements.at(0)));
      }
      const CodedOrder xc = poset(0), yc = poset(1);
      const auto& f = wit.maps.at(0);
      const Code a = wit.elements.at(0), b = wit.elements.at(1);
      const Cmp lifted = w.compare(yc, w.act(f, a), w.act(f, b));
      if (wit.detail == "lifted map does not reflect")
        return cmp_leq(lifted) && !cmp_leq(w.compare(xc, a, b));
      return cmp_leq(w.compare(xc, a, b)) && !cmp_leq(lifted);
    }
  }
  return false;
}

}  // namespace wpo

#endif  // WPO_DILATORS_HPP
