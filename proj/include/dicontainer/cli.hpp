#pragma once

#include <cstdint>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dicontainer/container.hpp"

namespace dicontainer::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { ok = 0, usage = 1, precondition = 2, verification = 3 };

struct Outcome {
  int exit_code = ok;
  std::string document;    // the structured report, empty on errors before a report exists
  std::string diagnostic;  // single line, empty on success
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Json approx(double v) { return Json{{"value", v}, {"precision", "binary64 approximation, not exact"}}; }

inline std::string exact_string(const Rational& q) {
  return q.denominator() == 1 ? std::to_string(q.numerator()) : to_string(q);
}

inline Json weighted_value(const std::optional<Rational>& exact, double approx_value) {
  if (exact) return exact_string(*exact);
  return approx(approx_value);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw UsageError("cannot write file '" + path + "'");
}

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::string density_text(const Digraph& sub) {
  return std::to_string(sub.edge_count()) + "/" + std::to_string(std::popcount(sub.spanned_mask()));
}

inline SearchMode parse_search_mode(const std::string& s) {
  if (s == "full") return SearchMode::full;
  if (s == "canonical") return SearchMode::canonical;
  throw UsageError("unknown mode '" + s + "' (expected full|canonical)");
}

inline DegreeNormalization parse_normalization(const std::string& s) {
  if (s == "avg" || s == "average") return DegreeNormalization::average;
  if (s == "max" || s == "maximum") return DegreeNormalization::maximum;
  throw UsageError("unknown normalization '" + s + "' (expected avg|max)");
}

// Syntax only; range checks stay with the library and map to exit code 2.
inline const std::string& number_arg(const std::string& flag, const std::string& text, bool allow_log) {
  static const std::regex rational(R"([+-]?\d+(/\d+)?|[+-]?\d*\.\d+)");
  static const std::regex logarithm(R"(log2\(\d+\)|log2_\d+)");
  if (!std::regex_match(text, rational) && !(allow_log && std::regex_match(text, logarithm)))
    throw UsageError("malformed " + flag + " '" + text + "'");
  return text;
}

inline std::vector<int> parse_range(const std::string& s) {
  std::vector<int> out;
  try {
    if (auto dots = s.find(".."); dots != std::string::npos) {
      const int lo = std::stoi(s.substr(0, dots)), hi = std::stoi(s.substr(dots + 2));
      for (int k = lo; k <= hi; ++k) out.push_back(k);
    } else {
      std::istringstream is(s);
      std::string tok;
      while (std::getline(is, tok, ',')) out.push_back(std::stoi(tok));
    }
  } catch (const std::exception&) {
    throw UsageError("malformed range '" + s + "' (expected lo..hi or a,b,c)");
  }
  if (out.empty()) throw UsageError("empty range '" + s + "'");
  return out;
}

struct Params {
  std::string pattern;
  std::string a = "2";
  int n = 0;
  std::string mode;
  std::string eps = "1/10";
  std::string tau;
  std::string gamma = "1";
  std::string n_range = "6..14";
  std::string normalization = "avg";
  std::string family;
  std::string export_path;
  std::string witness_dir;
  std::string out;
  int k_max = 0;
  std::size_t witness_cap = 1000;
  std::uint64_t samples = 10'000;
  std::uint64_t seed = 0;
  int workers = 1;
  bool accept_excluded = false;
};

inline Weight weight_arg(const Params& p) { return Weight::parse(number_arg("--a", p.a, true)); }

inline Rational rational_arg(const std::string& flag, const std::string& text) {
  return parse_rational(number_arg(flag, text, false));
}

struct Loaded {
  std::string text;
  Pattern pattern;
};

inline Loaded load_pattern(const std::string& path) {
  std::string text = read_file(path);
  return {text, Pattern(parse_digraph(text))};
}

struct Result {
  Json results = Json::object();
  Json checks = Json::object();
  int exit_code = ok;
  std::string diagnostic;
};

inline Json subpattern_json(const Pattern& h, std::uint64_t subset) {
  const auto g = h.graph().edge_subgraph(subset);
  return Json{{"edges", format_digraph(g)}, {"density", density_text(g)}};
}

inline Result cmd_density(const Params& p, const Loaded& in) {
  const auto& h = in.pattern;
  const Weight w = weight_arg(p);
  const auto rep = density_report(h, w);
  Result r;
  std::map<std::pair<int, int>, int> table;
  for (const auto& s : enumerate_subpatterns(h)) ++table[{s.vertices, s.edges}];
  Json subs = Json::array();
  for (const auto& [ve, count] : table) subs.push_back({{"v", ve.first}, {"e", ve.second}, {"count", count}});
  r.results["r"] = h.edges();
  r.results["h"] = h.vertices();
  r.results["automorphisms"] = std::to_string(h.automorphisms());
  r.results["m"] = rep.m.text();
  r.results["m_excluded_two_vertex_subgraphs"] = rep.m.excluded_two_vertex;
  r.results["m_witness"] = rep.m.value ? subpattern_json(h, rep.m.witness) : Json(nullptr);
  r.results["condition_a"] = rep.condition.holds;
  r.results["max_density"] = to_string(rep.condition.max_density);
  r.results["c_of_h"] = rep.c_of_h.str();
  r.results["subpatterns"] = subs;
  return r;
}

inline Result cmd_condition_a(const Params& p, const Loaded& in) {
  const auto& h = in.pattern;
  const Weight w = weight_arg(p);
  const auto c = condition_a(h, w);
  const auto densest = h.graph().edge_subgraph(c.densest);
  Result r;
  r.results["a"] = w.text();
  r.results["verdict"] = c.holds;
  r.results["max_density"] = to_string(c.max_density);
  const std::string cmp = density_text(densest) + (c.holds ? " <= " : " > ") + w.text() + "/2";
  r.results["comparison"] = cmp;
  r.results["witness"] = c.holds ? Json(nullptr) : Json{{"edges", format_digraph(densest)}, {"density", cmp}};
  return r;
}

inline Result cmd_ex(const Params& p, const Loaded& in) {
  const Weight w = weight_arg(p);
  SearchOptions opt;
  opt.workers = p.workers;
  opt.witness_cap = p.witness_cap;
  const auto ex = ex_a(p.n, in.pattern, w, parse_search_mode(p.mode.empty() ? "full" : p.mode), opt);
  Result r;
  r.results["n"] = ex.n;
  r.results["a"] = ex.weight;
  r.results["value"] = weighted_value(ex.value, ex.value_approx);
  r.results["f2"] = ex.attained.doubles;
  r.results["f1"] = ex.attained.singles;
  r.results["witness_classes"] = ex.witness_classes;
  r.results["witness_overflow"] = ex.witness_overflow;
  r.results["ambiguous"] = ex.ambiguous;
  Json wit = Json::array();
  for (std::size_t i = 0; i < ex.witness_keys.size(); ++i) {
    const auto g = from_canonical_key(ex.witness_keys[i]);
    const auto text = format_digraph(g);
    wit.push_back({{"key", key_to_hex(ex.witness_keys[i])}, {"edges", text}});
    if (!p.witness_dir.empty()) write_file(p.witness_dir + "/witness_" + std::to_string(i) + ".dg", text);
  }
  r.results["witnesses"] = wit;
  bool free_ok = true;
  for (const auto& k : ex.witness_keys) free_ok = free_ok && in.pattern.count_copies(from_canonical_key(k)) == 0;
  r.checks["witnesses_h_free"] = free_ok;
  if (!free_ok) {
    r.exit_code = verification;
    r.diagnostic = "extremal witness contains a copy of H";
  }
  return r;
}

inline Result cmd_count_free(const Params& p, const Loaded& in) {
  SearchOptions opt;
  opt.workers = p.workers;
  const auto mode = parse_search_mode(p.mode.empty() ? "full" : p.mode);
  Result r;
  r.results["n"] = p.n;
  r.results["count"] = count_free(p.n, in.pattern, mode, opt).str();
  return r;
}

inline Result cmd_ratio(const Params& p, const Loaded& in) {
  SearchOptions opt;
  opt.workers = p.workers;
  const auto cr = counting_ratio(p.n, in.pattern, parse_search_mode(p.mode.empty() ? "full" : p.mode), opt);
  Result r;
  r.results["n"] = cr.n;
  r.results["count"] = cr.free_count.str();
  r.results["log2_count"] = approx(cr.log2_count);
  r.results["ex2"] = std::to_string(cr.ex2);
  r.results["ratio"] = approx(cr.ratio);
  r.checks["count_at_least_2_pow_ex2"] = true;
  return r;
}

inline Result cmd_supersat(const Params& p, const Loaded& in) {
  const Weight w = weight_arg(p);
  SearchOptions opt;
  opt.workers = p.workers;
  const auto pts = supersat_scan(p.n, in.pattern, w, p.k_max, opt);
  const auto ex = ex_a(p.n, in.pattern, w, SearchMode::full, opt);
  Result r;
  Json arr = Json::array();
  bool monotone = true;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    arr.push_back({{"k", pts[i].k},
                   {"max_ea", weighted_value(pts[i].max_ea, pts[i].max_ea_approx)},
                   {"f2", pts[i].attained.doubles},
                   {"f1", pts[i].attained.singles}});
    if (i > 0 && w.compare(pts[i].attained.doubles, pts[i].attained.singles, pts[i - 1].attained.doubles,
                           pts[i - 1].attained.singles) == std::partial_ordering::less)
      monotone = false;
  }
  r.results["n"] = p.n;
  r.results["a"] = w.text();
  r.results["points"] = arr;
  const bool k0 = w.compare(pts[0].attained.doubles, pts[0].attained.singles, ex.attained.doubles,
                            ex.attained.singles) == std::partial_ordering::equivalent;
  r.checks["nondecreasing_in_k"] = monotone;
  r.checks["k0_equals_ex"] = k0;
  if (!monotone || !k0) {
    r.exit_code = verification;
    r.diagnostic = "supersaturation scan failed its consistency checks";
  }
  return r;
}

inline Result cmd_hypergraph(const Params& p, const Loaded& in) {
  const auto d = PairHypergraph::build(p.n, in.pattern);
  Result r;
  r.results["N"] = p.n;
  r.results["r"] = d.uniformity();
  r.results["universe_size"] = d.universe().size();
  r.results["hyperedges"] = d.edge_count();
  r.results["labelled_copy_count"] = std::to_string(d.labelled_copy_count());
  r.results["automorphisms"] = std::to_string(in.pattern.automorphisms());
  r.results["max_degree"] = d.max_degree();
  const auto text = d.export_text();
  r.results["export_digest_fnv1a64"] = hex64(fnv1a(text));
  if (!p.export_path.empty()) write_file(p.export_path, text);
  return r;
}

inline double tau_or_default(const Params& p, const Pattern& h, int n) {
  if (!p.tau.empty()) {
    try {
      return std::stod(p.tau);
    } catch (const std::exception&) {
      throw UsageError("malformed --tau '" + p.tau + "'");
    }
  }
  const double m = finite_m(h, p.accept_excluded);
  return std::pow(static_cast<double>(n), -1.0 / m);
}

inline Json profile_json(const CodegreeProfile& prof) {
  Json dj = Json::array(), sums = Json::array();
  for (auto v : prof.delta_j) dj.push_back(approx(v));
  for (auto v : prof.codegree_sums) sums.push_back(std::to_string(v));
  return Json{{"tau", approx(prof.tau)},
              {"universe_size", prof.universe_size},
              {"hyperedges", prof.edges},
              {"normalization", prof.normalization == DegreeNormalization::average ? "avg" : "max"},
              {"d_avg", approx(prof.d_avg)},
              {"max_degree", prof.max_degree},
              {"codegree_sums", sums},
              {"delta_j", dj},
              {"delta", approx(prof.delta)}};
}

inline Result cmd_codegree(const Params& p, const Loaded& in) {
  const auto d = PairHypergraph::build(p.n, in.pattern);
  const auto prof = codegree_profile(d, tau_or_default(p, in.pattern, p.n), parse_normalization(p.normalization));
  Result r;
  r.results = profile_json(prof);
  return r;
}

inline Result cmd_verify_lemma(const Params& p, const Loaded& in) {
  const auto rep = verify_degree_lemma(in.pattern, parse_range(p.n_range), rational_arg("--gamma", p.gamma),
                                       parse_normalization(p.normalization), p.accept_excluded);
  Result r;
  r.results["gamma"] = to_string(rep.gamma);
  r.results["m"] = rep.m.text();
  r.results["c_of_h"] = rep.c_of_h.str();
  r.results["bound"] = rep.bound_exact;
  Json rows = Json::array();
  for (const auto& row : rep.rows)
    rows.push_back({{"N", row.n}, {"tau", approx(row.tau)}, {"delta", approx(row.profile.delta)},
                    {"delta_j", profile_json(row.profile)["delta_j"]}, {"pass", row.pass}});
  r.results["rows"] = rows;
  r.checks["all_rows_pass"] = rep.all_pass;
  if (!rep.all_pass) {
    r.exit_code = verification;
    r.diagnostic = "degree lemma bound violated";
  }
  return r;
}

inline Json family_summary(const ContainerFamily& fam, const std::string& export_text) {
  std::size_t max_fp = 0, over = 0;
  for (const auto& fp : fam.fingerprints) {
    const auto s = fp.members(fam.universe_size).count();
    max_fp = std::max(max_fp, s);
    if (s > fam.fingerprint_budget()) ++over;
  }
  return Json{{"N", fam.n},
              {"r", fam.r},
              {"eps", to_string(fam.eps)},
              {"tau", approx(fam.tau)},
              {"containers", fam.containers.size()},
              {"fingerprints", fam.fingerprints.size()},
              {"log2_family_size", approx(std::log2(static_cast<double>(fam.containers.size())))},
              {"fingerprint_budget", fam.fingerprint_budget()},
              {"max_fingerprint_size", max_fp},
              {"fingerprints_over_budget", over},
              {"export_digest_fnv1a64", hex64(fnv1a(export_text))}};
}

inline Result cmd_containers(const Params& p, const Loaded& in) {
  const auto d = PairHypergraph::build(p.n, in.pattern);
  const auto fam = build_containers_parallel(d, tau_or_default(p, in.pattern, p.n), rational_arg("--eps", p.eps), p.workers);
  const auto text = export_family(fam);
  if (!p.export_path.empty()) write_file(p.export_path, text);
  Result r;
  r.results = family_summary(fam, text);
  r.results["hyperedges"] = d.edge_count();
  return r;
}

inline Json coverage_json(const FamilyCheck& chk) {
  Json copies = Json::array();
  std::size_t max_copies = 0;
  for (auto c : chk.container_copies) max_copies = std::max(max_copies, c);
  return Json{{"mode", chk.mode == VerifyMode::exhaustive ? "exhaustive" : "sampled"},
              {"checked", std::to_string(chk.checked)},
              {"sample_attempts", std::to_string(chk.sample_attempts)},
              {"routed_misses", std::to_string(chk.routed_misses)},
              {"uncovered", std::to_string(chk.uncovered)},
              {"witness", chk.witness ? Json(format_digraph(*chk.witness)) : Json(nullptr)},
              {"max_container_copies", max_copies},
              {"sparsity_limit", std::to_string(chk.sparsity_limit_num) + "/" + std::to_string(chk.sparsity_limit_den)},
              {"sparsity_violations", chk.sparsity_violations}};
}

inline Result cmd_verify_family(const Params& p, const Loaded& in) {
  ContainerFamily fam;
  try {
    fam = import_family(read_file(p.family));
  } catch (const PreconditionError& e) {
    throw UsageError("cannot parse family file '" + p.family + "': " + e.what());
  }
  const auto d = PairHypergraph::build(fam.n, in.pattern);
  const VerifyMode mode = p.mode == "sampled" ? VerifyMode::sampled
                          : (p.mode.empty() || p.mode == "exhaustive")
                              ? VerifyMode::exhaustive
                              : throw UsageError("unknown mode '" + p.mode + "' (expected exhaustive|sampled)");
  const auto chk = verify_family(d, fam, mode, p.samples, p.seed);
  Result r;
  r.results = coverage_json(chk);
  r.checks["coverage"] = chk.routed_misses == 0 && chk.uncovered == 0;
  r.checks["sparsity"] = chk.sparsity_violations.empty();
  if (!chk.pass()) {
    r.exit_code = verification;
    r.diagnostic = chk.witness ? "coverage miss, witness: " + format_digraph(*chk.witness)
                               : "container sparsity violated";
    for (auto& ch : r.diagnostic)
      if (ch == '\n') ch = ';';
  }
  return r;
}

inline Result cmd_pipeline(const Params& p, const Loaded& in) {
  const Weight w = weight_arg(p);
  PipelineOptions opt;
  opt.samples = p.samples;
  opt.seed = p.seed;
  opt.accept_excluded_two_cycles = p.accept_excluded;
  opt.search.workers = p.workers;
  const auto rep = container_pipeline(in.pattern, w, p.n, rational_arg("--eps", p.eps), opt);
  Result r;
  const auto text = export_family(rep.family);
  r.results["m"] = rep.m.text();
  r.results["condition_a"] = rep.condition.holds;
  r.results["tau"] = approx(rep.tau);
  r.results["hyperedges"] = rep.hyperedges;
  r.results["labelled_copies"] = std::to_string(rep.labelled_copies);
  r.results["family"] = family_summary(rep.family, text);
  r.results["coverage"] = coverage_json(rep.coverage);
  if (rep.ex) {
    r.results["ex_a"] = weighted_value(rep.ex->value, rep.ex->value_approx);
  } else {
    r.results["ex_a"] = nullptr;
    r.results["ex_a_unavailable"] = "bound unavailable: " + rep.ex_unavailable_reason;
  }
  Json cs = Json::array();
  for (const auto& c : rep.containers)
    cs.push_back({{"index", c.index},
                  {"copies", c.copies},
                  {"e_a", weighted_value(c.ea, c.ea_approx)},
                  {"slack", c.slack ? approx(*c.slack) : Json(nullptr)}});
  r.results["max_copies"] = rep.max_copies;
  r.results["max_copies_over_hyperedges"] = approx(rep.max_copies_over_edges);
  r.results["max_copies_over_labelled"] = approx(rep.max_copies_over_labelled);
  r.results["max_copies_over_N_pow_h"] = approx(rep.max_copies_over_nh);
  r.results["reference_N_pow_2_minus_1_over_m_log2_N"] = approx(rep.reference);
  r.results["fitted_c"] = approx(rep.fitted_c);
  std::size_t failing = 0;
  for (const auto& c : rep.containers) failing += (rep.ex && !c.within_ex_bound) ? 1 : 0;
  r.results["containers_exceeding_ex_bound"] = rep.ex ? Json(failing) : Json(nullptr);
  r.results["containers"] = cs;
  r.checks["a_coverage"] = rep.coverage.routed_misses == 0 && rep.coverage.uncovered == 0;
  r.checks["b_sparsity_eps_e_D"] = rep.coverage.sparsity_violations.empty();
  r.checks["b_copies_le_eps_N_pow_h"] = rep.copies_within_eps_nh;
  r.checks["b_e_a_le_ex_plus_eps_N2"] = rep.ex ? Json(rep.ex_bound_all) : Json(nullptr);
  r.checks["c_log2_family_reported"] = true;
  if (!rep.coverage.pass()) {
    r.exit_code = verification;
    r.diagnostic = "container family failed coverage or sparsity";
  }
  return r;
}

}  // namespace detail

/// Parses `args` (without the program name), runs one subcommand and
/// returns its report document and exit code. Nothing is printed.
inline Outcome run(const std::vector<std::string>& args) {
  using namespace detail;
  Params p;
  CLI::App app{"exact container-theorem laboratory for digraphs", "dicontainer"};
  app.require_subcommand(1);
  app.set_help_flag("-h,--help");

  auto common = [&](CLI::App* s, bool needs_pattern = true) {
    auto* opt = s->add_option("--pattern", p.pattern, "edge-list file of the forbidden digraph H");
    if (needs_pattern) opt->required();
    s->add_option("--out", p.out, "write the report here instead of standard output");
    s->add_option("--workers", p.workers, "parallel workers")->capture_default_str();
    s->add_option("--seed", p.seed, "random seed (sampled checks only)")->capture_default_str();
  };
  auto with_a = [&](CLI::App* s) { s->add_option("--a", p.a, "weight a: integer, p/q or log2(k)")->capture_default_str(); };
  auto with_n = [&](CLI::App* s, const char* flag) { s->add_option(flag, p.n, "vertex count")->required(); };

  std::map<std::string, std::function<Result(const Params&, const Loaded&)>> handlers;

  auto* s = app.add_subcommand("density", "m(H), condition A and C(H)");
  common(s), with_a(s), handlers[s->get_name()] = cmd_density;

  s = app.add_subcommand("condition-a", "condition A verdict with witness");
  common(s), with_a(s), handlers[s->get_name()] = cmd_condition_a;

  s = app.add_subcommand("ex", "exact ex_a(n,H) with extremal witnesses");
  common(s), with_a(s), with_n(s, "--n");
  s->add_option("--mode", p.mode, "full|canonical")->default_str("full");
  s->add_option("--witness-cap", p.witness_cap, "maximum witness classes reported")->capture_default_str();
  s->add_option("--witness-dir", p.witness_dir, "write each witness as an edge-list file here");
  handlers[s->get_name()] = cmd_ex;

  s = app.add_subcommand("count-free", "number of labelled H-free digraphs on [n]");
  common(s), with_n(s, "--n");
  s->add_option("--mode", p.mode, "full|canonical")->default_str("full");
  handlers[s->get_name()] = cmd_count_free;

  s = app.add_subcommand("ratio", "log2 f*(n,H) against ex_2(n,H)");
  common(s), with_n(s, "--n");
  s->add_option("--mode", p.mode, "full|canonical")->default_str("full");
  handlers[s->get_name()] = cmd_ratio;

  s = app.add_subcommand("supersat", "max e_a with at most k copies, k = 0..k_max");
  common(s), with_a(s), with_n(s, "--n");
  s->add_option("--k-max", p.k_max, "largest copy budget")->capture_default_str();
  handlers[s->get_name()] = cmd_supersat;

  s = app.add_subcommand("hypergraph", "build the pair hypergraph D(N,H)");
  common(s), with_n(s, "--N");
  s->add_option("--export", p.export_path, "write the hypergraph export file here");
  handlers[s->get_name()] = cmd_hypergraph;

  s = app.add_subcommand("codegree", "codegree profile delta(D(N,H), tau)");
  common(s), with_n(s, "--N");
  s->add_option("--tau", p.tau, "tau in (0,1]; default N^(-1/m(H))");
  s->add_option("--normalization", p.normalization, "avg|max degree in the delta_j identity")->capture_default_str();
  s->add_flag("--accept-excluded-two-cycles", p.accept_excluded, "allow m(H) computed without two-vertex subgraphs");
  handlers[s->get_name()] = cmd_codegree;

  s = app.add_subcommand("verify-lemma", "check delta(D, N^(-1/m)/gamma) <= C(H)*gamma over a range of N");
  common(s);
  s->add_option("--N-range", p.n_range, "lo..hi or a,b,c")->capture_default_str();
  s->add_option("--gamma", p.gamma, "gamma in (0,1]")->capture_default_str();
  s->add_option("--normalization", p.normalization, "avg|max")->capture_default_str();
  s->add_flag("--accept-excluded-two-cycles", p.accept_excluded, "allow m(H) computed without two-vertex subgraphs");
  handlers[s->get_name()] = cmd_verify_lemma;

  s = app.add_subcommand("containers", "build a container family for D(N,H)");
  common(s), with_n(s, "--N");
  s->add_option("--eps", p.eps, "sparsity eps in (0,1/2)")->capture_default_str();
  s->add_option("--tau", p.tau, "tau in (0,1]; default N^(-1/m(H))");
  s->add_option("--export", p.export_path, "write the container family file here");
  s->add_flag("--accept-excluded-two-cycles", p.accept_excluded, "allow m(H) computed without two-vertex subgraphs");
  handlers[s->get_name()] = cmd_containers;

  s = app.add_subcommand("verify-family", "check coverage and sparsity of an exported family");
  common(s);
  s->add_option("--family", p.family, "container family file")->required();
  s->add_option("--mode", p.mode, "exhaustive|sampled")->default_str("exhaustive");
  s->add_option("--samples", p.samples, "accepted samples in sampled mode")->capture_default_str();
  handlers[s->get_name()] = cmd_verify_family;

  s = app.add_subcommand("pipeline", "containers for H-free digraphs with coverage, sparsity and family size checked");
  common(s), with_a(s), with_n(s, "--N");
  s->add_option("--eps", p.eps, "sparsity eps in (0,1/2)")->capture_default_str();
  s->add_option("--samples", p.samples, "accepted samples when N > 5")->capture_default_str();
  s->add_flag("--accept-excluded-two-cycles", p.accept_excluded, "allow m(H) computed without two-vertex subgraphs");
  handlers[s->get_name()] = cmd_pipeline;

  Outcome outcome;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    outcome.document = app.help();
    return outcome;
  } catch (const CLI::ParseError& e) {
    outcome.exit_code = usage;
    outcome.diagnostic = e.what();
    return outcome;
  }
  CLI::App* sub = app.get_subcommands().front();

  Json doc;
  Json manifest;
  manifest["command"] = sub->get_name();
  Json params = Json::object();
  std::map<std::string, std::string> sorted;
  for (const CLI::Option* o : sub->get_options()) {
    const std::string name = o->get_name();
    if (name == "--help" || name == "-h" || name == "--out") continue;
    std::string value;
    if (o->count() > 0) {
      for (const auto& v : o->results()) value += (value.empty() ? "" : ",") + v;
      if (o->get_type_size() == 0) value = "true";
    } else {
      value = o->get_default_str();
      if (o->get_type_size() == 0) value = "false";
    }
    sorted[name.substr(2)] = value;
  }
  for (const auto& [k, v] : sorted) params[k] = v;
  manifest["params"] = params;
  manifest["tool_version"] = kToolVersion;
  manifest["seed"] = std::to_string(p.seed);
  doc["manifest"] = manifest;

  try {
    const Loaded in = load_pattern(p.pattern);
    doc["inputs"] = {{"pattern_file", p.pattern}, {"pattern", format_digraph(in.pattern.graph())}};
    Result res = handlers.at(sub->get_name())(p, in);
    doc["results"] = std::move(res.results);
    doc["checks"] = std::move(res.checks);
    outcome.exit_code = res.exit_code;
    outcome.diagnostic = res.diagnostic;
  } catch (const UsageError& e) {
    return {usage, "", e.what()};
  } catch (const ParseError& e) {
    return {usage, "", std::string("pattern parse error: ") + e.what()};
  } catch (const VerificationError& e) {
    doc["results"] = nullptr;
    doc["checks"] = {{"error", e.what()}};
    outcome.exit_code = verification;
    outcome.diagnostic = e.what();
  } catch (const PreconditionError& e) {
    doc["results"] = nullptr;
    doc["checks"] = {{"refused", e.what()}};
    outcome.exit_code = precondition;
    outcome.diagnostic = e.what();
  } catch (const BudgetError& e) {
    doc["results"] = nullptr;
    doc["checks"] = {{"refused", e.what()}};
    outcome.exit_code = precondition;
    outcome.diagnostic = e.what();
  }
  outcome.document = doc.dump(2) + "\n";
  if (!p.out.empty()) {
    try {
      write_file(p.out, outcome.document);
    } catch (const UsageError& e) {
      return {usage, "", e.what()};
    }
  }
  return outcome;
}

}  // namespace dicontainer::cli
