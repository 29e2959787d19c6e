#ifndef WPO_PARSE_HPP
#define WPO_PARSE_HPP

#include <cstddef>
#include <istream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wpo/core.hpp"
#include "wpo/dilators.hpp"
#include "wpo/orders.hpp"
#include "wpo/tftree.hpp"
#include "wpo/witnesses.hpp"

namespace wpo {

// ---------------------------------------------------------------------------
// Order spec strings: finite:<n> | omega | omega_rev | sum(a,b) | prod(a,b)
// ---------------------------------------------------------------------------

namespace detail {

inline std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (c != ' ') out.push_back(c);
  return out;
}

/// Splits "a,b" at the top-level comma (respecting nested parentheses).
inline std::pair<std::string, std::string> split_args(const std::string& s) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == ',' && depth == 0) return {s.substr(0, i), s.substr(i + 1)};
  }
  throw OrderError("expected two comma-separated arguments in: " + s);
}

}  // namespace detail

inline CodedOrder parse_order_spec(const std::string& raw) {
  const std::string s = detail::strip_spaces(raw);
  if (s == "omega") return omega_order();
  if (s == "omega_rev") return omega_rev_order();
  if (s.rfind("finite:", 0) == 0) return finite_order(parse_code(s.substr(7)));
  const auto binary = [&](const std::string& head)
      -> std::optional<std::pair<CodedOrder, CodedOrder>> {
    if (s.rfind(head + "(", 0) != 0 || s.back() != ')') return std::nullopt;
    const std::string inner = s.substr(head.size() + 1,
                                       s.size() - head.size() - 2);
    auto [a, b] = detail::split_args(inner);
    return std::make_pair(parse_order_spec(a), parse_order_spec(b));
  };
  if (auto args = binary("sum"))
    return sum_order(std::move(args->first), std::move(args->second));
  if (auto args = binary("prod"))
    return product_order(std::move(args->first), std::move(args->second));
  if (auto args = binary("lex"))
    return lex_order(std::move(args->first), std::move(args->second));
  throw OrderError("unrecognized order spec: " + raw);
}

// ---------------------------------------------------------------------------
// Dilator spec strings: V:<order> | W:<order> | cons:<order> | tree2
// ---------------------------------------------------------------------------

inline Dilator parse_dilator_spec(const std::string& raw) {
  const std::string s = detail::strip_spaces(raw);
  if (s == "tree2") return make_tree2_dilator();
  if (s.rfind("V:", 0) == 0) return make_v_dilator(parse_order_spec(s.substr(2)));
  if (s.rfind("W:", 0) == 0) return make_w_dilator(parse_order_spec(s.substr(2)));
  if (s.rfind("cons:", 0) == 0)
    return make_cons_dilator(parse_order_spec(s.substr(5)));
  throw OrderError("unrecognized dilator spec: " + raw);
}

// ---------------------------------------------------------------------------
// Injective map spec strings: affine:<a>,<b> | table:<j0:v0,j1:v1,...>
// ---------------------------------------------------------------------------

inline InjectiveMap parse_injective_spec(const std::string& raw) {
  const std::string s = detail::strip_spaces(raw);
  if (s.rfind("affine:", 0) == 0) {
    const std::string rest = s.substr(7);
    const auto comma = rest.find(',');
    if (comma == std::string::npos)
      throw OrderError("affine spec needs two parameters: " + raw);
    return InjectiveMap::affine(parse_code(rest.substr(0, comma)),
                                parse_code(rest.substr(comma + 1)));
  }
  if (s.rfind("table:", 0) == 0) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> entries;
    std::string rest = s.substr(6);
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos)
        throw OrderError("table entry needs j:v form: " + item);
      entries.emplace_back(parse_code(item.substr(0, colon)),
                           parse_code(item.substr(colon + 1)));
    }
    return InjectiveMap::table(std::move(entries));
  }
  throw OrderError("unrecognized injective map spec: " + raw);
}

// ---------------------------------------------------------------------------
// Finite poset text format: "n=<count>" then one "i<j" pair per line
// ---------------------------------------------------------------------------

inline FinPoset parse_fin_poset_text(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw OrderError("empty poset description");
  const std::string head = detail::strip_spaces(line);
  if (head.rfind("n=", 0) != 0)
    throw OrderError("poset description must start with n=<count>");
  const std::size_t n = parse_code(head.substr(2));
  std::vector<std::pair<Code, Code>> pairs;
  while (std::getline(in, line)) {
    const std::string p = detail::strip_spaces(line);
    if (p.empty()) continue;
    const auto lt = p.find('<');
    if (lt == std::string::npos)
      throw OrderError("poset pair lines must have the form i<j: " + line);
    pairs.emplace_back(parse_code(p.substr(0, lt)), parse_code(p.substr(lt + 1)));
  }
  return finposet_new(n, pairs);
}

inline FinPoset parse_fin_poset_text(const std::string& text) {
  std::istringstream in(text);
  return parse_fin_poset_text(in);
}

inline std::string format_fin_poset_text(const FinPoset& p) {
  std::ostringstream out;
  out << "n=" << p.size() << '\n';
  for (const auto& [i, j] : p.strict_pairs()) out << i << '<' << j << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Poset spec strings for the CLI: chain:<n> | antichain:<n> | random:<n>
// ---------------------------------------------------------------------------

inline FinPoset parse_poset_spec(const std::string& raw, std::uint64_t seed) {
  const std::string s = detail::strip_spaces(raw);
  if (s.rfind("chain:", 0) == 0) {
    const std::size_t n = parse_code(s.substr(6));
    std::vector<std::pair<Code, Code>> pairs;
    for (std::size_t i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
    return finposet_new(n, pairs);
  }
  if (s.rfind("antichain:", 0) == 0)
    return finposet_new(parse_code(s.substr(10)), {});
  if (s.rfind("random:", 0) == 0) {
    std::mt19937_64 rng(seed);
    return random_fin_poset(rng, parse_code(s.substr(7)));
  }
  throw OrderError("unrecognized poset spec: " + raw);
}

}  // namespace wpo

#endif  // WPO_PARSE_HPP
