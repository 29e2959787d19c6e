#ifndef WPO_TFTREE_HPP
#define WPO_TFTREE_HPP

#include <algorithm>
#include <cstddef>
#include <deque>
#include <functional>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wpo/core.hpp"
#include "wpo/exp2.hpp"
#include "wpo/orders.hpp"

namespace wpo {

struct NotAMember : OrderError {
  std::string sequence;
  NotAMember(std::string seq, const std::string& what)
      : OrderError(what), sequence(std::move(seq)) {}
};

struct NotInjective : OrderError {
  using OrderError::OrderError;
};

// ---------------------------------------------------------------------------
// Injective maps on the positive naturals
// ---------------------------------------------------------------------------

/// An injective function on N \ {0}, either affine (f(n) = a*n + b, total)
/// or table-backed (finite domain). Injectivity is validated on construction.
class InjectiveMap {
 public:
  static InjectiveMap affine(std::uint64_t a, std::uint64_t b) {
    if (a == 0) throw NotInjective("affine map needs slope >= 1");
    InjectiveMap m;
    m.affine_ = std::make_pair(a, b);
    return m;
  }

  static InjectiveMap table(std::vector<std::pair<std::uint64_t, std::uint64_t>> entries) {
    InjectiveMap m;
    std::sort(entries.begin(), entries.end());
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].first == 0)
        throw NotInjective("table domain must exclude 0");
      if (i && entries[i].first == entries[i - 1].first)
        throw NotInjective("table defines an argument twice");
      for (std::size_t j = i + 1; j < entries.size(); ++j)
        if (entries[i].second == entries[j].second)
          throw NotInjective("table repeats a value");
    }
    m.table_ = std::move(entries);
    return m;
  }

  /// outer after inner, defined where the intermediate value stays positive
  /// and inside outer's domain.
  static InjectiveMap composed(InjectiveMap outer, InjectiveMap inner) {
    InjectiveMap m;
    m.composed_ = std::make_shared<std::pair<InjectiveMap, InjectiveMap>>(
        std::move(outer), std::move(inner));
    return m;
  }

  std::optional<std::uint64_t> apply(std::uint64_t j) const {
    if (j == 0) return std::nullopt;
    if (affine_) return affine_->first * j + affine_->second;
    if (composed_) {
      const auto mid = composed_->second.apply(j);
      if (!mid) return std::nullopt;
      return composed_->first.apply(*mid);
    }
    for (const auto& [arg, val] : table_)
      if (arg == j) return val;
    return std::nullopt;
  }

  /// Unique j with f(j) = value, if any.
  std::optional<std::uint64_t> preimage(std::uint64_t value) const {
    if (affine_) {
      const auto [a, b] = *affine_;
      if (value < b) return std::nullopt;
      if ((value - b) % a != 0) return std::nullopt;
      const std::uint64_t j = (value - b) / a;
      if (j == 0) return std::nullopt;
      return j;
    }
    if (composed_) {
      const auto mid = composed_->first.preimage(value);
      if (!mid) return std::nullopt;
      const auto j = composed_->second.preimage(*mid);
      // The chained preimage must actually evaluate back to the value.
      if (j && apply(*j) == value) return j;
      return std::nullopt;
    }
    for (const auto& [arg, val] : table_)
      if (val == value) return arg;
    return std::nullopt;
  }

  /// Unique j with 1 <= j < bound and f(j) = value, if any.
  std::optional<std::uint64_t> witness_below(std::uint64_t value,
                                             std::uint64_t bound) const {
    // The select keeps the comparison on initialized data; preimages are
    // never zero, so bound works as the absent sentinel.
    const std::uint64_t j = preimage(value).value_or(bound);
    if (j < bound) return j;
    return std::nullopt;
  }

  std::string to_string() const {
    if (affine_)
      return "affine:" + std::to_string(affine_->first) + "," +
             std::to_string(affine_->second);
    if (composed_)
      return "composed(" + composed_->first.to_string() + "," +
             composed_->second.to_string() + ")";
    std::ostringstream out;
    out << "table:";
    for (std::size_t i = 0; i < table_.size(); ++i) {
      if (i) out << ',';
      out << table_[i].first << ':' << table_[i].second;
    }
    return out.str();
  }

 private:
  InjectiveMap() = default;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> affine_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> table_;
  std::shared_ptr<const std::pair<InjectiveMap, InjectiveMap>> composed_;
};

// ---------------------------------------------------------------------------
// Sequence literals ("e" for the empty sequence, dot-separated otherwise)
// ---------------------------------------------------------------------------

inline std::string format_seq(const FinSeq& s) {
  if (s.empty()) return "e";
  std::ostringstream out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out << '.';
    out << s[i];
  }
  return out.str();
}

inline FinSeq parse_seq(const std::string& text) {
  if (text == "e" || text.empty()) return {};
  FinSeq s;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t dot = text.find('.', pos);
    if (dot == std::string::npos) dot = text.size();
    s.push_back(parse_code(text.substr(pos, dot - pos)));
    pos = dot + 1;
    if (dot == text.size()) break;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Tree membership, comparison, canonical members
// ---------------------------------------------------------------------------

/// Membership: positive entries must be witnesses (f(s_i) = i), and an entry
/// is forced positive when a witness below the sequence length exists.
inline bool tf_member(const InjectiveMap& f, const FinSeq& s) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] > 0) {
      const auto v = f.apply(s[i]);
      if (!v || *v != i) return false;
    }
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] == 0 && f.witness_below(i, s.size())) return false;
  return true;
}

/// Kleene-Brouwer comparison restricted to members; total by construction.
inline Cmp tf_compare(const InjectiveMap& f, const FinSeq& s, const FinSeq& t) {
  if (!tf_member(f, s))
    throw NotAMember(format_seq(s), "left sequence is not a member");
  if (!tf_member(f, t))
    throw NotAMember(format_seq(t), "right sequence is not a member");
  return kb_compare(s, t);
}

/// The length-n member whose entries are the bounded-search witnesses:
/// s_i = j if some j < n has f(j) = i, otherwise 0.
inline FinSeq tf_canonical(const InjectiveMap& f, std::size_t n) {
  FinSeq s(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    if (const auto j = f.witness_below(i, n)) s[i] = *j;
  return s;
}

/// t weakly extends s: it is at least as long and agrees on every positive
/// entry of s.
inline bool weak_extension(const FinSeq& s, const FinSeq& t) {
  if (s.size() > t.size()) return false;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] > 0 && s[i] != t[i]) return false;
  return true;
}

inline bool proper_extension(const FinSeq& s, const FinSeq& t) {
  if (t.size() <= s.size()) return false;
  return std::equal(s.begin(), s.end(), t.begin());
}

// ---------------------------------------------------------------------------
// Member enumeration: ascending length, lexicographic within a length
// ---------------------------------------------------------------------------

class TfEnumerator {
 public:
  explicit TfEnumerator(InjectiveMap f) : f_(std::move(f)) {}

  FinSeq next() {
    while (pending_.empty()) fill_length(len_++);
    FinSeq s = std::move(pending_.front());
    pending_.pop_front();
    return s;
  }

 private:
  void fill_length(std::size_t n) {
    // Per position: a forced witness value, a free {0, late-witness} choice,
    // or a forced zero.
    std::vector<std::vector<std::uint64_t>> choices(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (const auto j = f_.witness_below(i, n)) {
        choices[i] = {*j};
      } else if (const auto j0 = f_.preimage(i)) {
        choices[i] = {0, *j0};
      } else {
        choices[i] = {0};
      }
    }
    FinSeq cur(n, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == n) {
        pending_.push_back(cur);
        return;
      }
      for (std::uint64_t v : choices[i]) {
        cur[i] = v;
        rec(i + 1);
      }
    };
    rec(0);
  }

  InjectiveMap f_;
  std::size_t len_ = 0;
  std::deque<FinSeq> pending_;
};

using MemberStream = std::function<std::optional<FinSeq>()>;

inline MemberStream tf_member_stream(const InjectiveMap& f) {
  auto en = std::make_shared<TfEnumerator>(f);
  return [en]() -> std::optional<FinSeq> { return en->next(); };
}

// ---------------------------------------------------------------------------
// Staged perfect-sequence extraction
// ---------------------------------------------------------------------------

struct ExtractBudget {
  std::size_t max_members = 4096;           // stream pulls
  std::size_t ascent_target = 32;           // ascending members wanted
  std::size_t extension_run_threshold = 16; // consecutive extensions -> range
  std::uint64_t window = 128;               // range candidate window
};

struct RangeCandidate {
  std::vector<std::uint64_t> values;  // sorted
  std::uint64_t window = 0;

  bool contains(std::uint64_t v) const {
    return std::binary_search(values.begin(), values.end(), v);
  }
};

struct PerfectExtraction {
  enum class Outcome { Ascending, Range };
  std::vector<FinSeq> increasing;  // strictly increasing lengths
  std::vector<FinSeq> weak_chain;  // weak-extension chain
  std::vector<FinSeq> ascending;   // strictly ascending members
  std::optional<RangeCandidate> range;
  Outcome outcome = Outcome::Ascending;
};

struct TfBudgetExhausted : OrderError {
  PerfectExtraction partial;
  TfBudgetExhausted(PerfectExtraction p, const std::string& what)
      : OrderError(what), partial(std::move(p)) {}
};

/// Staged extraction. Stage A filters the stream to strictly increasing
/// lengths (forward scan, capped by the 2^(len+1) counting bound). Stage B
/// thins to a weak-extension chain via the index recursion
/// g(n) = 1 + max({g(n-1)} union entries of the g(n-1)-th member). Stages
/// C/D walk consecutive pairs: first differences are ascents and feed the
/// ascending output; a run of proper extensions at least as long as the
/// threshold resolves the dichotomy towards a range candidate instead.
inline PerfectExtraction extract_perfect_sequence(const InjectiveMap& f,
                                                  MemberStream stream,
                                                  const ExtractBudget& budget) {
  PerfectExtraction out;
  std::size_t pulled = 0;
  const auto pull = [&]() -> std::optional<FinSeq> {
    if (pulled >= budget.max_members) return std::nullopt;
    ++pulled;
    auto s = stream();
    if (s && !tf_member(f, *s))
      throw NotAMember(format_seq(*s), "stream produced a non-member");
    return s;
  };

  // Stage A, lazily extended.
  const auto extend_increasing = [&]() -> bool {
    const std::size_t last_len =
        out.increasing.empty() ? 0 : out.increasing.back().size();
    std::uint64_t cap = last_len + 1 >= 40
                            ? UINT64_MAX
                            : (std::uint64_t{1} << (last_len + 1)) + 1;
    for (std::uint64_t scanned = 0; scanned < cap; ++scanned) {
      auto s = pull();
      if (!s) return false;
      if (out.increasing.empty() || s->size() > last_len) {
        out.increasing.push_back(std::move(*s));
        return true;
      }
    }
    return false;
  };

  // Stage B, lazily extended along the g recursion.
  std::size_t g_prev = 0;
  const auto extend_chain = [&]() -> bool {
    std::size_t want;
    if (out.weak_chain.empty()) {
      want = 0;
    } else {
      std::uint64_t mx = g_prev;
      for (std::uint64_t v : out.increasing[g_prev]) mx = std::max(mx, v);
      want = static_cast<std::size_t>(mx) + 1;
    }
    while (out.increasing.size() <= want)
      if (!extend_increasing()) return false;
    const FinSeq& cand = out.increasing[want];
    if (!out.weak_chain.empty() &&
        !weak_extension(out.weak_chain.back(), cand))
      throw OrderError("stream violates the weak-extension recursion");
    out.weak_chain.push_back(cand);
    g_prev = want;
    return true;
  };

  // Stages C/D.
  if (!extend_chain())
    throw TfBudgetExhausted(out, "no members available within budget");
  std::size_t run = 0;
  FinSeq prev = out.weak_chain.back();
  while (true) {
    if (!extend_chain())
      throw TfBudgetExhausted(out, "member budget exhausted before a verdict");
    const FinSeq& cur = out.weak_chain.back();
    const Cmp c = kb_compare(prev, cur);
    if (c == Cmp::Less) {
      out.ascending.push_back(prev);
      run = 0;
      if (out.ascending.size() >= budget.ascent_target) {
        out.outcome = PerfectExtraction::Outcome::Ascending;
        return out;
      }
    } else {
      if (!proper_extension(prev, cur))
        throw OrderError("descent in the chain that is not a proper extension");
      ++run;
      if (run >= budget.extension_run_threshold && cur.size() > budget.window) {
        RangeCandidate rc;
        rc.window = budget.window;
        for (std::uint64_t i = 0; i < budget.window; ++i)
          if (cur[static_cast<std::size_t>(i)] > 0) rc.values.push_back(i);
        out.range = std::move(rc);
        out.outcome = PerfectExtraction::Outcome::Range;
        return out;
      }
    }
    prev = cur;
  }
}

// ---------------------------------------------------------------------------
// Descent into the exponential order over the tree
// ---------------------------------------------------------------------------

using TfExp2Term = Exp2TermT<FinSeq>;

inline Cmp tf_exp2_compare(const TfExp2Term& a, const TfExp2Term& b) {
  return exp2_compare(a, b,
                      [](const FinSeq& x, const FinSeq& y) { return kb_compare(x, y); });
}

/// The recursive descent map: zero entries contribute a power of the current
/// prefix, positive entries only extend it. Requires prefix*s to be a member.
inline TfExp2Term descent_map(const InjectiveMap& f, const FinSeq& prefix,
                              const FinSeq& s) {
  FinSeq whole = prefix;
  whole.insert(whole.end(), s.begin(), s.end());
  if (!tf_member(f, whole))
    throw NotAMember(format_seq(whole), "prefix*s is not a member");
  std::vector<FinSeq> exponents;
  FinSeq p = prefix;
  for (std::uint64_t entry : s) {
    if (entry == 0) exponents.push_back(p);
    p.push_back(entry);
  }
  return exp2_make<FinSeq>(std::move(exponents), [](const FinSeq& x, const FinSeq& y) {
    return kb_compare(x, y);
  });
}

/// Runs enumerate -> extract -> descent and returns `length` terms verified
/// pairwise strictly descending. When extraction resolves to a range
/// candidate, builds the canonical extension chain determined by the range
/// set and descends along single powers instead.
inline std::vector<TfExp2Term> descending_exp2_sequence(const InjectiveMap& f,
                                                        std::size_t length,
                                                        ExtractBudget budget) {
  if (length == 0) throw OrderError("descending sequence needs length >= 1");
  budget.ascent_target = length;
  if (budget.window < 2 * length + 4) budget.window = 2 * length + 4;
  const PerfectExtraction ex =
      extract_perfect_sequence(f, tf_member_stream(f), budget);
  std::vector<TfExp2Term> terms;
  if (ex.outcome == PerfectExtraction::Outcome::Ascending) {
    for (std::size_t i = 0; i < length; ++i)
      terms.push_back(descent_map(f, {}, ex.ascending[i]));
  } else {
    const RangeCandidate& rc = *ex.range;
    for (std::size_t n = 1; n <= length; ++n) {
      FinSeq s(n, 0);
      for (std::size_t i = 0; i < n; ++i)
        if (rc.contains(i)) {
          const auto j = f.preimage(i);
          if (!j) throw OrderError("range candidate value has no preimage");
          s[i] = *j;
        }
      if (!tf_member(f, s))
        throw OrderError("canonical range chain left the tree");
      terms.push_back(TfExp2Term{{std::move(s)}});
    }
  }
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = i + 1; j < terms.size(); ++j)
      if (tf_exp2_compare(terms[i], terms[j]) != Cmp::Greater)
        throw OrderError("descent verification failed on a term pair");
  return terms;
}

// ---------------------------------------------------------------------------
// Term literals over sequence exponents: "0" or "2^e+2^0.1"
// ---------------------------------------------------------------------------

inline std::string format_tf_exp2_term(const TfExp2Term& t) {
  if (t.is_zero()) return "0";
  std::ostringstream out;
  for (std::size_t i = 0; i < t.exponents.size(); ++i) {
    if (i) out << '+';
    out << "2^" << format_seq(t.exponents[i]);
  }
  return out.str();
}

inline TfExp2Term parse_tf_exp2_term(const std::string& text) {
  if (text == "0") return {};
  std::vector<FinSeq> exps;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text.compare(pos, 2, "2^") != 0)
      throw OrderError("bad term literal: " + text);
    pos += 2;
    std::size_t end = text.find('+', pos);
    if (end == std::string::npos) end = text.size();
    exps.push_back(parse_seq(text.substr(pos, end - pos)));
    pos = end + (end < text.size() ? 1 : 0);
  }
  return exp2_make<FinSeq>(std::move(exps), [](const FinSeq& x, const FinSeq& y) {
    return kb_compare(x, y);
  });
}

}  // namespace wpo

#endif  // WPO_TFTREE_HPP
