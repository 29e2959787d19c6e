// Command-line workbench: parses order/dilator/map specs, runs law suites,
// builds fixed-point terms, executes the tree pipelines and emits
// deterministic JSON reports (stdout) plus a human summary (stderr).

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wpo/fixpoint.hpp"
#include "wpo/parse.hpp"
#include "wpo/report.hpp"
#include "wpo/tftree.hpp"
#include "wpo/witnesses.hpp"

namespace {

using namespace wpo;

struct CommonOpts {
  std::uint64_t seed = 0;
  std::string json_out;
  bool timing = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--seed", opts.seed, "Seed for all sampled checks");
  cmd->add_option("--json-out", opts.json_out, "Also write the JSON report here");
  cmd->add_flag("--timing", opts.timing, "Include wall time in the JSON report");
}

int emit(RunReport& report, const CommonOpts& opts,
         std::chrono::steady_clock::time_point started) {
  if (opts.timing) {
    const auto elapsed = std::chrono::steady_clock::now() - started;
    report.elapsed_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count());
  }
  const std::string text = run_report_to_json(report).dump(2) + "\n";
  std::cout << text;
  if (!opts.json_out.empty()) {
    std::ofstream out(opts.json_out);
    out << text;
  }
  for (const auto& c : report.checks)
    std::cerr << (c.pass ? "pass  " : "FAIL  ") << c.name << "\n";
  std::cerr << (report.all_pass() ? "all checks passed" : "some checks FAILED")
            << "\n";
  return report.all_pass() ? 0 : 1;
}

std::string echo_command(int argc, char** argv) {
  std::string out;
  for (int i = 0; i < argc; ++i) {
    if (i) out += ' ';
    out += argv[i];
  }
  return out;
}

Json seq_list_json(const std::vector<FinSeq>& seqs) {
  Json out = Json::array();
  for (const auto& s : seqs) out.push_back(format_seq(s));
  return out;
}

// ---- laws -----------------------------------------------------------------

struct LawsOpts {
  CommonOpts common;
  std::string dilator;
  std::vector<std::string> checks{"all"};
  Budget budget;
};

int run_laws(const LawsOpts& o, RunReport& report) {
  const Dilator d = parse_dilator_spec(o.dilator);
  std::set<DilatorLaw> laws;
  for (const auto& name : o.checks) {
    if (name == "all") {
      for (DilatorLaw l : {DilatorLaw::Functor, DilatorLaw::Naturality,
                           DilatorLaw::SupportCondition, DilatorLaw::Normal,
                           DilatorLaw::Unary, DilatorLaw::Monotone})
        laws.insert(l);
      continue;
    }
    const auto l = law_from_name(name);
    if (!l) throw CLI::ValidationError("--check", "unknown law: " + name);
    laws.insert(*l);
  }
  for (const LawVerdict& v : check_dilator_laws(d, laws, o.budget)) {
    CheckResult c{law_name(v.law), v.pass, {}};
    if (v.witness) c.witness = law_witness_to_json(*v.witness);
    report.checks.push_back(std::move(c));
  }
  return 0;
}

// ---- fixpoint ---------------------------------------------------------------

struct FixpointOpts {
  CommonOpts common;
  std::string dilator;
  std::size_t size = 3;
  std::size_t elem_budget = 64;
  std::string embed = "none";  // none | product | exp2
  std::size_t n = 3;
  Code code_budget = 16;
};

int run_fixpoint(const FixpointOpts& o, RunReport& report) {
  const Dilator d = parse_dilator_spec(o.dilator);
  if (o.embed == "none") {
    const auto terms = enumerate_terms(d, o.size, o.elem_budget);
    const auto rep = check_fixed_point_axiom(d, terms);
    Json witness;
    if (!rep.mismatches.empty()) {
      witness = Json::array();
      for (const auto& m : rep.mismatches)
        witness.push_back({{"left", format_term(terms[m.i])},
                           {"right", format_term(terms[m.j])},
                           {"term_leq", m.via_term_leq},
                           {"trace_clause", m.via_trace},
                           {"children_clause", m.via_children}});
    }
    report.checks.push_back(
        {"axiom", rep.mismatches.empty(), std::move(witness)});
    report.checks.push_back({"poset", rep.poset_ok,
                             rep.poset_ok ? Json() : Json(rep.poset_detail)});
    report.checks.push_back(
        {"enumeration",
         true,
         Json{{"terms", terms.size()}, {"pairs", rep.pairs}}});
    return 0;
  }
  if (o.embed == "product") {
    // The embedded order needs the dilator's parameter; accept only V specs.
    if (o.dilator.rfind("V:", 0) != 0)
      throw CLI::ValidationError("--embed", "product embedding expects V:<order>");
    const CodedOrder alpha = parse_order_spec(o.dilator.substr(2));
    const auto rep = check_product_embedding(alpha, o.n, o.code_budget);
    Json w;
    if (rep.witness) w = Json{{"left", rep.witness->first},
                              {"right", rep.witness->second}};
    report.checks.push_back({"product_reflection", rep.pass, std::move(w)});
    report.checks.push_back({"pairs", true, Json(rep.pairs)});
    return 0;
  }
  if (o.embed == "exp2") {
    if (o.dilator.rfind("W:", 0) != 0)
      throw CLI::ValidationError("--embed", "exp2 embedding expects W:<order>");
    const CodedOrder alpha = parse_order_spec(o.dilator.substr(2));
    try {
      const auto emb = exp2_fixpoint_embedding(alpha, o.elem_budget);
      Json images = Json::array();
      for (std::size_t i = 0; i < emb.sources.size(); ++i)
        images.push_back({{"source", format_exp2_term(emb.sources[i])},
                          {"image", format_term(emb.images[i])}});
      report.checks.push_back({"exp2_reflection", true, std::move(images)});
    } catch (const ReflectionFailure& e) {
      report.checks.push_back({"exp2_reflection", false, Json(e.what())});
    }
    return 0;
  }
  throw CLI::ValidationError("--embed", "unknown embedding: " + o.embed);
}

// ---- exp2 -------------------------------------------------------------------

struct Exp2Opts {
  CommonOpts common;
  std::string base;
  std::vector<std::string> compare;  // two term literals
  std::vector<std::string> between;  // two term literals
  std::size_t between_budget = 256;
  std::size_t between_samples = 0;
  unsigned sample_bits = 12;
  std::size_t iterate = 0;
  std::size_t show = 0;
};

int run_exp2(const Exp2Opts& o, RunReport& report) {
  const CodedOrder base = parse_order_spec(o.base);
  bool acted = false;
  if (o.compare.size() == 2) {
    acted = true;
    const auto a = parse_exp2_term(o.compare[0], base);
    const auto b = parse_exp2_term(o.compare[1], base);
    report.checks.push_back(
        {"compare", true,
         Json{{"left", format_exp2_term(a)},
              {"right", format_exp2_term(b)},
              {"result", cmp_name(exp2_compare(a, b, base))}}});
  }
  if (o.between.size() == 2) {
    acted = true;
    const auto a = parse_exp2_term(o.between[0], base);
    const auto b = parse_exp2_term(o.between[1], base);
    try {
      const auto c = exp2_between(a, b, base, o.between_budget);
      report.checks.push_back({"between", true, Json(format_exp2_term(c))});
    } catch (const NoWitnessWithinBudget& e) {
      report.checks.push_back({"between", false, Json(e.what())});
    }
  }
  if (o.between_samples > 0) {
    acted = true;
    if (o.sample_bits == 0 || o.sample_bits > 48)
      throw CLI::ValidationError("--sample-bits", "must be between 1 and 48");
    std::mt19937_64 rng(o.common.seed);
    const Code mask_bound = Code{1} << o.sample_bits;
    std::size_t succeeded = 0, attempted = 0;
    Json failures = Json::array();
    while (attempted < o.between_samples) {
      Exp2Term a = exp2_term_from_mask(rng() % mask_bound, base);
      Exp2Term b = exp2_term_from_mask(rng() % mask_bound, base);
      const Cmp c = exp2_compare(a, b, base);
      if (c == Cmp::Equal) continue;
      if (c == Cmp::Greater) std::swap(a, b);
      ++attempted;
      try {
        const auto mid = exp2_between(a, b, base, o.between_budget);
        if (exp2_compare(a, mid, base) == Cmp::Less &&
            exp2_compare(mid, b, base) == Cmp::Less)
          ++succeeded;
        else
          failures.push_back(format_exp2_term(mid));
      } catch (const NoWitnessWithinBudget&) {
        failures.push_back({{"left", format_exp2_term(a)},
                            {"right", format_exp2_term(b)}});
      }
    }
    report.checks.push_back({"density", succeeded == o.between_samples,
                             Json{{"succeeded", succeeded},
                                  {"attempted", attempted},
                                  {"failures", failures}}});
  }
  if (o.iterate > 0 || o.show > 0) {
    acted = true;
    const CodedOrder it = exp2_iterate(base, o.iterate);
    Json codes = Json::array();
    for (std::uint64_t i = 0; i < o.show; ++i) {
      const auto c = it.at(i);
      if (!c) break;
      codes.push_back(*c);
    }
    report.checks.push_back(
        {"iterate", true,
         Json{{"height", o.iterate},
              {"name", it.name},
              {"size", it.size ? Json(*it.size) : Json()},
              {"codes", codes}}});
  }
  if (!acted)
    throw CLI::ValidationError(
        "exp2", "nothing to do: pass --compare, --between, "
                "--between-samples or --iterate");
  return 0;
}

// ---- tf ---------------------------------------------------------------------

struct TfOpts {
  CommonOpts common;
  std::string f;
  std::int64_t canonical = -1;
  std::int64_t canonical_upto = -1;
  std::string member;
  std::vector<std::string> compare;
  std::size_t check_members = 0;
  std::size_t agree_samples = 0;
  std::size_t descend = 0;
  bool extract = false;
  ExtractBudget budget;
};

int run_tf(const TfOpts& o, RunReport& report) {
  const InjectiveMap f = parse_injective_spec(o.f);
  bool acted = false;
  if (o.canonical >= 0) {
    acted = true;
    const FinSeq s = tf_canonical(f, static_cast<std::size_t>(o.canonical));
    report.checks.push_back({"canonical", tf_member(f, s),
                             Json{{"sequence", format_seq(s)}}});
  }
  if (o.canonical_upto >= 0) {
    acted = true;
    bool all_members = true;
    Json seqs = Json::array();
    for (std::size_t n = 1; n <= static_cast<std::size_t>(o.canonical_upto); ++n) {
      const FinSeq s = tf_canonical(f, n);
      if (!tf_member(f, s)) all_members = false;
      seqs.push_back(format_seq(s));
    }
    report.checks.push_back({"canonical_members", all_members, std::move(seqs)});
  }
  if (!o.member.empty()) {
    acted = true;
    const FinSeq s = parse_seq(o.member);
    report.checks.push_back(
        {"member", true,
         Json{{"sequence", format_seq(s)}, {"is_member", tf_member(f, s)}}});
  }
  if (o.compare.size() == 2) {
    acted = true;
    const FinSeq s = parse_seq(o.compare[0]);
    const FinSeq t = parse_seq(o.compare[1]);
    try {
      report.checks.push_back(
          {"compare", true, Json(cmp_name(tf_compare(f, s, t)))});
    } catch (const NotAMember& e) {
      report.checks.push_back({"compare", false, Json(e.what())});
    }
  }
  if (o.check_members > 0) {
    acted = true;
    auto stream = tf_member_stream(f);
    std::vector<FinSeq> members;
    for (std::size_t i = 0; i < o.check_members; ++i) {
      auto s = stream();
      if (!s) break;
      members.push_back(std::move(*s));
    }
    bool total = true, transitive = true;
    for (std::size_t i = 0; i < members.size() && total; ++i)
      for (std::size_t j = 0; j < members.size(); ++j)
        if (tf_compare(f, members[i], members[j]) == Cmp::Incomparable) {
          total = false;
          break;
        }
    // Transitivity spot check over sampled triples keeps this subquadratic.
    std::mt19937_64 rng(o.common.seed);
    for (std::size_t k = 0; k < 20000 && transitive; ++k) {
      const FinSeq& a = members[rng() % members.size()];
      const FinSeq& b = members[rng() % members.size()];
      const FinSeq& c = members[rng() % members.size()];
      if (cmp_leq(kb_compare(a, b)) && cmp_leq(kb_compare(b, c)) &&
          !cmp_leq(kb_compare(a, c)))
        transitive = false;
    }
    report.checks.push_back({"compare_total", total, Json(members.size())});
    report.checks.push_back({"compare_transitive", transitive, {}});
  }
  if (o.agree_samples > 0) {
    acted = true;
    auto stream = tf_member_stream(f);
    std::vector<FinSeq> pool;
    for (std::size_t i = 0; i < 512; ++i) {
      auto s = stream();
      if (!s) break;
      pool.push_back(std::move(*s));
    }
    std::mt19937_64 rng(o.common.seed);
    bool ok = true;
    Json witness;
    for (std::size_t k = 0; k < o.agree_samples && ok; ++k) {
      const FinSeq& s = pool[rng() % pool.size()];
      const FinSeq& t = pool[rng() % pool.size()];
      const std::size_t m = std::min(s.size(), t.size());
      for (std::size_t i = 0; i < m; ++i)
        if (s[i] > 0 && t[i] > 0 && s[i] != t[i]) {
          ok = false;
          witness = Json{{"left", format_seq(s)}, {"right", format_seq(t)}};
          break;
        }
    }
    report.checks.push_back({"positive_agreement", ok, std::move(witness)});
  }
  if (o.extract) {
    acted = true;
    try {
      const auto ex = extract_perfect_sequence(f, tf_member_stream(f), o.budget);
      Json w{{"increasing", seq_list_json(ex.increasing)},
             {"weak_chain", seq_list_json(ex.weak_chain)},
             {"ascending", seq_list_json(ex.ascending)}};
      if (ex.range)
        w["range"] = Json{{"values", ex.range->values},
                          {"window", ex.range->window}};
      w["outcome"] = ex.outcome == PerfectExtraction::Outcome::Range
                         ? "range"
                         : "ascending";
      report.checks.push_back({"extract", true, std::move(w)});
    } catch (const TfBudgetExhausted& e) {
      report.checks.push_back({"extract", false, Json(e.what())});
    }
  }
  if (o.descend > 0) {
    acted = true;
    try {
      const auto terms = descending_exp2_sequence(f, o.descend, o.budget);
      bool pairwise = true;
      for (std::size_t i = 0; i < terms.size() && pairwise; ++i)
        for (std::size_t j = i + 1; j < terms.size(); ++j)
          if (tf_exp2_compare(terms[i], terms[j]) != Cmp::Greater) {
            pairwise = false;
            break;
          }
      Json lits = Json::array();
      for (const auto& t : terms) lits.push_back(format_tf_exp2_term(t));
      report.checks.push_back(
          {"descend", pairwise,
           Json{{"terms", lits}, {"pairwise_descending", pairwise}}});
    } catch (const OrderError& e) {
      report.checks.push_back({"descend", false, Json(e.what())});
    }
  }
  if (!acted)
    throw CLI::ValidationError("tf", "nothing to do: pass an action flag");
  return 0;
}

// ---- witness ----------------------------------------------------------------

struct WitnessOpts {
  CommonOpts common;
  // coloring
  std::uint64_t colors = 3;
  std::size_t prefix = 200;
  std::string coloring = "mod";
  // nonunary
  std::string dilator;
  Budget budget;
  bool extended = false;
  std::size_t index_i = 0, index_j = 1;
  // unary-embed
  std::string poset = "chain:2";
  std::string poset_file;
  std::size_t anchor = 0;
};

ColoringOrder make_coloring(const WitnessOpts& o) {
  if (o.coloring == "mod") {
    const std::uint64_t n = o.colors;
    return ColoringOrder{[n](std::uint64_t i) { return i % n; }, n};
  }
  if (o.coloring == "const")
    return ColoringOrder{[](std::uint64_t) { return std::uint64_t{0}; }, 1};
  throw CLI::ValidationError("--coloring", "unknown coloring: " + o.coloring);
}

int run_witness_coloring(const WitnessOpts& o, RunReport& report) {
  const ColoringOrder c = make_coloring(o);
  const CodedOrder prod = coloring_product_order(c);
  std::vector<Code> seq;
  seq.reserve(o.prefix);
  for (std::uint64_t k = 0; k < o.prefix; ++k)
    seq.push_back(coloring_bad_element(c, k));
  const auto good = find_good_pair(seq, prod);
  Json w{{"prefix", o.prefix},
         {"pairs_scanned", o.prefix * (o.prefix - 1) / 2}};
  if (good) w["good_pair"] = {good->first, good->second};
  report.checks.push_back({"bad_prefix", !good.has_value(), std::move(w)});

  // Linearity of the induced base order on a sampled window.
  const CodedOrder alpha = coloring_base_order(c);
  bool linear = true;
  for (Code i = 0; i < 100 && linear; ++i)
    for (Code j = 0; j < 100; ++j)
      if (alpha.compare(i, j) == Cmp::Incomparable) {
        linear = false;
        break;
      }
  report.checks.push_back({"base_linear", linear, {}});
  return 0;
}

int run_witness_nonunary(const WitnessOpts& o, RunReport& report) {
  const Dilator d = parse_dilator_spec(o.dilator);
  const auto wit = nonunary_witness(d, o.budget);
  if (!wit) {
    report.checks.push_back({"nonunary_witness", true, Json{{"found", false}}});
    return 0;
  }
  const CodedOrder base = poset_order(wit->support_poset);
  const CodedOrder ext = poset_order(wit->gadget.extended);
  const auto supp_x = d.supp(ext, wit->sigma_x);
  const auto supp_y = d.supp(ext, wit->sigma_y);
  const bool supports_differ = supp_x != supp_y;
  const bool oriented = !cmp_leq(d.compare(ext, wit->sigma_x, wit->sigma_y));
  const bool quasi =
      check_morphism(wit->gadget.inject_x, MorphismMode::Quasi).pass &&
      check_morphism(wit->gadget.inject_y, MorphismMode::Quasi).pass;
  Json w{{"found", true},
         {"support_poset", fin_poset_to_json(wit->support_poset)},
         {"sigma", wit->sigma},
         {"support_size", d.supp(base, wit->sigma).size()},
         {"sigma_x", wit->sigma_x},
         {"sigma_y", wit->sigma_y},
         {"extended_poset", fin_poset_to_json(wit->gadget.extended)},
         {"inject_x", wit->gadget.inject_x.map},
         {"inject_y", wit->gadget.inject_y.map}};
  report.checks.push_back(
      {"nonunary_witness", supports_differ && oriented && quasi, std::move(w)});
  if (o.extended) {
    const auto rep = nonunary_report(d, make_coloring(o), o.index_i, o.index_j,
                                     o.budget);
    report.checks.push_back(
        {"gadget_identities", rep.identities_ok && rep.quasi_ok,
         Json{{"g_i", rep.g_i},
              {"g_i_prime", rep.g_i_prime},
              {"g_j", rep.g_j},
              {"h", rep.h},
              {"identities", rep.identities_ok},
              {"quasi", rep.quasi_ok}}});
  }
  return 0;
}

int run_witness_unary_embed(const WitnessOpts& o, RunReport& report) {
  const Dilator d = parse_dilator_spec(o.dilator);
  FinPoset x;
  if (!o.poset_file.empty()) {
    std::ifstream in(o.poset_file);
    if (!in) throw CLI::ValidationError("--poset-file", "cannot open file");
    x = parse_fin_poset_text(in);
  } else {
    x = parse_poset_spec(o.poset, o.common.seed);
  }
  try {
    const auto emb = unary_quasi_embedding(d, x, o.anchor, o.budget);
    const auto refl = check_unary_embedding(d, x, emb);
    Json mapping = Json::array();
    for (const auto& [from, to] : emb.mapping) mapping.push_back({from, to});
    Json w{{"poset", fin_poset_to_json(x)},
           {"mapping", mapping},
           {"pairs", refl.pairs}};
    if (refl.witness) w["violation"] = {refl.witness->first, refl.witness->second};
    report.checks.push_back({"unary_embedding", refl.pass, std::move(w)});
  } catch (const NotUnary& e) {
    report.checks.push_back({"unary_embedding", false, Json(e.what())});
  } catch (const DecompositionFailure& e) {
    report.checks.push_back({"unary_embedding", false, Json(e.what())});
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for partial-order combinators, exponential orders, "
               "tree orders, dilator laws and fixed-point term orders"};
  app.require_subcommand(1);

  LawsOpts laws;
  auto* laws_cmd = app.add_subcommand("laws", "Run dilator law checks");
  laws_cmd->add_option("--dilator", laws.dilator, "Dilator spec")->required();
  laws_cmd->add_option("--check", laws.checks,
                       "Law names (functor, naturality, support_condition, "
                       "normal, unary, monotone) or 'all'");
  laws_cmd->add_option("--budget-size", laws.budget.poset_size,
                       "Max poset size for per-poset laws");
  laws_cmd->add_option("--budget-elems", laws.budget.elements,
                       "Max enumerated elements per application");
  laws_cmd->add_option("--budget-morph", laws.budget.morphism_poset_size,
                       "Max poset size for morphism-based laws");
  add_common(laws_cmd, laws.common);

  FixpointOpts fix;
  auto* fix_cmd =
      app.add_subcommand("fixpoint", "Fixed-point term order checks");
  fix_cmd->add_option("--dilator", fix.dilator, "Dilator spec")->required();
  fix_cmd->add_option("--budget-size,--size", fix.size, "Max term node count");
  fix_cmd->add_option("--budget-elems,--elem-budget", fix.elem_budget,
                      "Element budget per application");
  fix_cmd->add_option("--embed", fix.embed,
                      "Reflection check: none, product or exp2");
  fix_cmd->add_option("--n", fix.n, "Second factor for the product embedding");
  fix_cmd->add_option("--code-budget", fix.code_budget,
                      "Code bound for the product embedding");
  add_common(fix_cmd, fix.common);

  Exp2Opts e2;
  auto* e2_cmd = app.add_subcommand("exp2", "Exponential-order operations");
  e2_cmd->add_option("--base", e2.base, "Base order spec")->required();
  e2_cmd->add_option("--compare", e2.compare, "Two term literals")
      ->expected(2);
  e2_cmd->add_option("--between", e2.between, "Two term literals")->expected(2);
  e2_cmd->add_option("--between-budget", e2.between_budget,
                     "Candidate budget for the betweenness search");
  e2_cmd->add_option("--between-samples", e2.between_samples,
                     "Sampled density checks");
  e2_cmd->add_option("--sample-bits", e2.sample_bits,
                     "Exponent mask width for sampling");
  e2_cmd->add_option("--iterate", e2.iterate, "Tower height");
  e2_cmd->add_option("--show", e2.show, "List this many codes of the result");
  add_common(e2_cmd, e2.common);

  TfOpts tf;
  auto* tf_cmd = app.add_subcommand("tf", "Injective-map tree pipelines");
  tf_cmd->add_option("--f", tf.f, "Injective map spec")->required();
  tf_cmd->add_option("--canonical", tf.canonical, "Emit the length-n member");
  tf_cmd->add_option("--canonical-upto", tf.canonical_upto,
                     "Check canonical members for n = 1..N");
  tf_cmd->add_option("--member", tf.member, "Test membership of a sequence");
  tf_cmd->add_option("--compare", tf.compare, "Two sequence literals")
      ->expected(2);
  tf_cmd->add_option("--check-members", tf.check_members,
                     "Totality/transitivity over this many members");
  tf_cmd->add_option("--agree-samples", tf.agree_samples,
                     "Sampled positive-entry agreement checks");
  tf_cmd->add_option("--descend", tf.descend,
                     "Produce this many strictly descending terms");
  tf_cmd->add_flag("--extract", tf.extract, "Run the staged extraction");
  tf_cmd->add_option("--members", tf.budget.max_members, "Stream pull budget");
  tf_cmd->add_option("--run-threshold", tf.budget.extension_run_threshold,
                     "Extension run length that resolves to a range");
  tf_cmd->add_option("--window", tf.budget.window, "Range candidate window");
  tf_cmd->add_option("--ascent-target", tf.budget.ascent_target,
                     "Ascending members wanted by --extract");
  add_common(tf_cmd, tf.common);

  WitnessOpts wit;
  auto* wit_cmd = app.add_subcommand("witness", "Explicit constructions");
  wit_cmd->require_subcommand(1);
  auto* col_cmd = wit_cmd->add_subcommand(
      "coloring", "Coloring-induced order and its bad prefix");
  col_cmd->add_option("--colors", wit.colors, "Number of colors");
  col_cmd->add_option("--prefix", wit.prefix, "Prefix length to scan");
  col_cmd->add_option("--coloring", wit.coloring, "mod or const");
  add_common(col_cmd, wit.common);
  auto* nu_cmd =
      wit_cmd->add_subcommand("nonunary", "Search for a two-point support");
  nu_cmd->add_option("--dilator", wit.dilator, "Dilator spec")->required();
  nu_cmd->add_option("--budget-size", wit.budget.poset_size, "Max poset size");
  nu_cmd->add_option("--budget-elems", wit.budget.elements, "Element budget");
  nu_cmd->add_flag("--extended", wit.extended,
                   "Materialize the coloring-driven gadget maps");
  nu_cmd->add_option("--i", wit.index_i, "First sequence index");
  nu_cmd->add_option("--j", wit.index_j, "Second sequence index");
  nu_cmd->add_option("--colors", wit.colors, "Colors for --extended");
  add_common(nu_cmd, wit.common);
  auto* ue_cmd = wit_cmd->add_subcommand(
      "unary-embed", "Decompose a unary dilator application");
  ue_cmd->add_option("--dilator", wit.dilator, "Dilator spec")->required();
  ue_cmd->add_option("--poset", wit.poset,
                     "chain:<n>, antichain:<n> or random:<n>");
  ue_cmd->add_option("--poset-file", wit.poset_file,
                     "Poset text file (n=<count>, then i<j lines)");
  ue_cmd->add_option("--z", wit.anchor, "Anchor element for empty supports");
  ue_cmd->add_option("--budget-elems", wit.budget.elements, "Element budget");
  add_common(ue_cmd, wit.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const auto started = std::chrono::steady_clock::now();
  RunReport report;
  report.command = echo_command(argc, argv);
  try {
    if (laws_cmd->parsed()) {
      report.seed = laws.common.seed;
      report.budgets = Json{{"poset_size", laws.budget.poset_size},
                            {"elements", laws.budget.elements},
                            {"morphism_poset_size",
                             laws.budget.morphism_poset_size}};
      run_laws(laws, report);
      return emit(report, laws.common, started);
    }
    if (fix_cmd->parsed()) {
      report.seed = fix.common.seed;
      report.budgets = Json{{"size", fix.size},
                            {"elements", fix.elem_budget},
                            {"codes", fix.code_budget}};
      run_fixpoint(fix, report);
      return emit(report, fix.common, started);
    }
    if (e2_cmd->parsed()) {
      report.seed = e2.common.seed;
      report.budgets = Json{{"between", e2.between_budget},
                            {"sample_bits", e2.sample_bits}};
      run_exp2(e2, report);
      return emit(report, e2.common, started);
    }
    if (tf_cmd->parsed()) {
      report.seed = tf.common.seed;
      // --descend widens the window on its own; echo the effective value.
      if (tf.descend > 0 && tf.budget.window < 2 * tf.descend + 4)
        tf.budget.window = 2 * tf.descend + 4;
      report.budgets = Json{{"members", tf.budget.max_members},
                            {"run_threshold", tf.budget.extension_run_threshold},
                            {"window", tf.budget.window},
                            {"ascent_target", tf.budget.ascent_target}};
      run_tf(tf, report);
      return emit(report, tf.common, started);
    }
    if (wit_cmd->parsed()) {
      report.seed = wit.common.seed;
      report.budgets = Json{{"poset_size", wit.budget.poset_size},
                            {"elements", wit.budget.elements}};
      if (col_cmd->parsed()) run_witness_coloring(wit, report);
      if (nu_cmd->parsed()) run_witness_nonunary(wit, report);
      if (ue_cmd->parsed()) run_witness_unary_embed(wit, report);
      return emit(report, wit.common, started);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const wpo::OrderError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    // Malformed numbers in literals and similar input defects.
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
