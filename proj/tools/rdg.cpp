// rdg — exact counting and seeded Monte Carlo experiments on random
// distance graphs G_p(n, n/2, n/4).
//
// Subcommands: graph info|pathology, pattern analyze, count mono|rooted|analytic,
// sample sweep|lln|poisson, ext sweep, uniformity, convergence, tilde fraction.
//
// stdout carries data (CSV by default, JSON with --format json); progress and
// warnings go to stderr. Exit codes: 0 ok, 2 usage, 3 precondition, 4 budget.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rdg/errors.hpp"
#include "rdg/experiments.hpp"
#include "rdg/io.hpp"
#include "rdg/version.hpp"

namespace {

using rdg::Json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitPrecondition = 3;
constexpr int kExitBudget = 4;

struct OutputOptions {
  std::string format = "csv";
  std::string out_path;
  std::uint64_t seed = 1;
  int threads = 0;  // 0 = available parallelism
  std::string config_path;
};

void add_output_options(CLI::App* cmd, OutputOptions& opts) {
  cmd->add_option("--format", opts.format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", opts.out_path, "Write output to this path instead of stdout");
  cmd->add_option("--seed", opts.seed, "Master seed for all random draws")
      ->capture_default_str();
  cmd->add_option("--threads", opts.threads,
                  "Worker threads (0 = hardware parallelism); results do not depend on it");
  cmd->add_option("--config", opts.config_path,
                  "JSON file with defaults (same schema as the JSON output's config echo)");
}

// --config supplies defaults; explicit flags still win because values are
// applied before CLI11 parses the command line.
Json load_config(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") {
      std::ifstream in(argv[i + 1]);
      if (!in) throw std::invalid_argument(std::string("cannot open config file: ") + argv[i + 1]);
      Json j;
      in >> j;
      if (j.contains("config")) j = j["config"];  // accept a full output document
      return j;
    }
  return Json::object();
}

template <typename T>
void config_default(const Json& cfg, const char* key, T& value) {
  if (cfg.contains(key)) value = cfg[key].get<T>();
}

void config_default_list(const Json& cfg, const char* key, std::string& value) {
  if (!cfg.contains(key)) return;
  if (cfg[key].is_string()) {
    value = cfg[key].get<std::string>();
    return;
  }
  std::ostringstream ss;
  bool first = true;
  for (const auto& v : cfg[key]) {
    if (!first) ss << ',';
    first = false;
    ss << v.dump();
  }
  value = ss.str();
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  return out;
}

rdg::ParsedPattern load_pattern(const std::string& name_or_path) {
  try {
    return rdg::fixture(name_or_path);
  } catch (const std::invalid_argument&) {
    return rdg::parse_pattern_file(name_or_path);
  }
}

void emit(const OutputOptions& opts, const std::string& text) {
  if (opts.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opts.out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output path: " + opts.out_path);
  out << text;
}

void emit_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

std::string render_kv(const OutputOptions& opts, const std::string& command,
                      const Json& config, const std::vector<std::pair<std::string, std::string>>& kv) {
  std::ostringstream out;
  if (opts.format == "json") {
    Json rows = Json::object();
    for (const auto& [k, v] : kv) rows[k] = v;
    rdg::write_json_document(out, command, config, opts.seed, Json::array({rows}));
  } else {
    rdg::write_kv_csv(out, kv);
  }
  return out.str();
}

template <class Result>
std::string render_rows(const OutputOptions& opts, const std::string& command,
                        const Json& config, const Result& result) {
  std::ostringstream out;
  if (opts.format == "json")
    rdg::write_json_document(out, command, config, opts.seed, rdg::rows_json(result));
  else
    rdg::write_csv(out, result);
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact counting and Monte Carlo experiments on random distance graphs"};
  app.set_version_flag("--version", rdg::kVersion);
  app.require_subcommand(1);

  Json cfg;
  try {
    cfg = load_config(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: precondition: " << e.what() << "\n";
    return kExitPrecondition;
  }

  OutputOptions opts;
  config_default(cfg, "format", opts.format);
  config_default(cfg, "seed", opts.seed);
  config_default(cfg, "threads", opts.threads);

  // shared parameters, defaulted from --config when present
  int n = 0;
  config_default(cfg, "n", n);
  std::string n_list_text;
  config_default_list(cfg, "n_list", n_list_text);
  std::string pattern_name;
  config_default(cfg, "pattern", pattern_name);
  std::string network_name;
  config_default(cfg, "network", network_name);
  std::uint64_t trials = 0;
  config_default(cfg, "trials", trials);
  double p = -1.0, c = 1.0;
  config_default(cfg, "p", p);
  config_default(cfg, "c", c);
  std::string alphas_text, multipliers_text;
  config_default_list(cfg, "alphas", alphas_text);
  config_default_list(cfg, "multipliers", multipliers_text);
  double f_exponent = 0.6;
  config_default(cfg, "f_exponent", f_exponent);
  int explicit_f = -1;
  config_default(cfg, "f", explicit_f);
  std::string mode_text = "exhaustive";
  config_default(cfg, "mode", mode_text);
  std::uint64_t tuples = 200;
  config_default(cfg, "tuples", tuples);
  std::uint64_t budget = 20000;
  config_default(cfg, "budget", budget);
  std::uint64_t samples = 200;
  config_default(cfg, "samples", samples);
  int dimension = 2;
  config_default(cfg, "d", dimension);
  std::string roots_text, x_text;
  config_default_list(cfg, "roots", roots_text);
  config_default_list(cfg, "x", x_text);
  bool verify = false;
  config_default(cfg, "verify", verify);
  int analytic_k = 0, analytic_l = -1;
  config_default(cfg, "k", analytic_k);
  config_default(cfg, "l", analytic_l);

  // ---- graph ----
  auto* graph_cmd = app.add_subcommand("graph", "Complete distance graph queries");
  graph_cmd->require_subcommand(1);
  auto* graph_info = graph_cmd->add_subcommand("info", "Vertex count, degree, edge count, Stirling estimates");
  graph_info->add_option("--n", n, "Coordinate count (multiple of 4)")->required(!cfg.contains("n"));
  add_output_options(graph_info, opts);

  auto* graph_path = graph_cmd->add_subcommand("pathology", "Search for three vertices with no common neighbor");
  graph_path->add_option("--n", n)->required(!cfg.contains("n"));
  graph_path->add_option("--budget", budget, "Max candidate triples examined")->capture_default_str();
  add_output_options(graph_path, opts);

  // ---- pattern ----
  auto* pattern_cmd = app.add_subcommand("pattern", "Pattern graph / network analysis");
  pattern_cmd->require_subcommand(1);
  auto* pattern_analyze = pattern_cmd->add_subcommand("analyze", "Densities, balance predicates, automorphisms");
  pattern_analyze->add_option("--pattern", pattern_name, "Fixture name or pattern file path")
      ->required(!cfg.contains("pattern"));
  add_output_options(pattern_analyze, opts);

  // ---- count ----
  auto* count_cmd = app.add_subcommand("count", "Exact embedding counts");
  count_cmd->require_subcommand(1);
  auto* count_mono = count_cmd->add_subcommand("mono", "Monomorphisms and copies of a pattern in G");
  count_mono->add_option("--pattern", pattern_name)->required(!cfg.contains("pattern"));
  count_mono->add_option("--n", n)->required(!cfg.contains("n"));
  count_mono->add_flag("--verify", verify, "Cross-check against the backtracking oracle (n <= 16)");
  add_output_options(count_mono, opts);

  auto* count_rooted = count_cmd->add_subcommand("rooted", "Block-profile rooted extension count");
  count_rooted->add_option("--network", network_name)->required(!cfg.contains("network"));
  count_rooted->add_option("--n", n)->required(!cfg.contains("n"));
  count_rooted->add_option("--roots", roots_text, "Comma-separated vertex indices (canonical order)");
  count_rooted->add_option("--x", x_text, "Comma-separated x-vector (alternative to --roots)");
  count_rooted->add_flag("--verify", verify, "Also run the brute-force oracle (needs --roots, n <= 16)");
  add_output_options(count_rooted, opts);

  auto* count_analytic = count_cmd->add_subcommand("analytic", "M(k, l) = N^k (N1/N)^l");
  count_analytic->add_option("--pattern", pattern_name, "Take k = v(F), l = e(F) from a pattern");
  count_analytic->add_option("--k", analytic_k);
  count_analytic->add_option("--l", analytic_l);
  count_analytic->add_option("--n", n)->required(!cfg.contains("n"));
  add_output_options(count_analytic, opts);

  // ---- sample ----
  auto* sample_cmd = app.add_subcommand("sample", "Monte Carlo experiments on G_p");
  sample_cmd->require_subcommand(1);
  auto* sample_sweep = sample_cmd->add_subcommand("sweep", "P(contains F) across alpha * p*");
  sample_sweep->add_option("--pattern", pattern_name)->required(!cfg.contains("pattern"));
  sample_sweep->add_option("--n", n)->required(!cfg.contains("n"));
  sample_sweep->add_option("--alphas", alphas_text, "Comma-separated multipliers of p* (default log grid)");
  sample_sweep->add_option("--trials", trials)->required(!cfg.contains("trials"));
  add_output_options(sample_sweep, opts);

  auto* sample_lln = sample_cmd->add_subcommand("lln", "Quantiles of |X_F / E[X_F] - 1|");
  sample_lln->add_option("--pattern", pattern_name)->required(!cfg.contains("pattern"));
  sample_lln->add_option("--n", n)->required(!cfg.contains("n"));
  sample_lln->add_option("--p", p)->required(!cfg.contains("p"));
  sample_lln->add_option("--trials", trials)->required(!cfg.contains("trials"));
  add_output_options(sample_lln, opts);

  auto* sample_poisson = sample_cmd->add_subcommand("poisson", "Empirical law of X_F at p = c N^(-k/l) N/N1");
  sample_poisson->add_option("--pattern", pattern_name)->required(!cfg.contains("pattern"));
  sample_poisson->add_option("--n", n)->required(!cfg.contains("n"));
  sample_poisson->add_option("--c", c)->capture_default_str();
  sample_poisson->add_option("--trials", trials)->required(!cfg.contains("trials"));
  add_output_options(sample_poisson, opts);

  // ---- ext ----
  auto* ext_cmd = app.add_subcommand("ext", "Extension property experiments");
  ext_cmd->require_subcommand(1);
  auto* ext_sweep_cmd = ext_cmd->add_subcommand("sweep", "P(Ext holds) across m * p_sharp");
  ext_sweep_cmd->add_option("--network", network_name)->required(!cfg.contains("network"));
  ext_sweep_cmd->add_option("--n", n)->required(!cfg.contains("n"));
  ext_sweep_cmd->add_option("--multipliers", multipliers_text, "Comma-separated multipliers (default log grid)");
  ext_sweep_cmd->add_option("--trials", trials)->required(!cfg.contains("trials"));
  ext_sweep_cmd->add_option("--f-exponent", f_exponent, "Root filter f(n) = floor(n^exponent)")->capture_default_str();
  ext_sweep_cmd->add_option("--f", explicit_f, "Explicit f value (overrides the exponent)");
  ext_sweep_cmd->add_option("--mode", mode_text, "exhaustive or sampled")
      ->check(CLI::IsMember({"exhaustive", "sampled"}))->capture_default_str();
  ext_sweep_cmd->add_option("--tuples", tuples, "Root tuples per trial in sampled mode")->capture_default_str();
  add_output_options(ext_sweep_cmd, opts);

  // ---- uniformity ----
  auto* uniformity_cmd = app.add_subcommand("uniformity", "Block-profile count spread over sampled x-vectors");
  uniformity_cmd->add_option("--network", network_name)->required(!cfg.contains("network"));
  uniformity_cmd->add_option("--n-list", n_list_text, "Comma-separated n values")->required(!cfg.contains("n_list"));
  uniformity_cmd->add_option("--samples", samples, "Root tuples sampled per n")->capture_default_str();
  uniformity_cmd->add_option("--f-exponent", f_exponent)->capture_default_str();
  uniformity_cmd->add_option("--f", explicit_f);
  add_output_options(uniformity_cmd, opts);

  // ---- convergence ----
  auto* convergence_cmd = app.add_subcommand("convergence", "Exact monomorphism counts against M(k, l)");
  convergence_cmd->add_option("--pattern", pattern_name)->required(!cfg.contains("pattern"));
  convergence_cmd->add_option("--n-list", n_list_text)->required(!cfg.contains("n_list"));
  add_output_options(convergence_cmd, opts);

  // ---- tilde ----
  auto* tilde_cmd = app.add_subcommand("tilde", "Admissible root tuples");
  tilde_cmd->require_subcommand(1);
  auto* tilde_fraction_cmd = tilde_cmd->add_subcommand("fraction", "|V~_f^d| / N^d");
  tilde_fraction_cmd->add_option("--n", n)->required(!cfg.contains("n"));
  tilde_fraction_cmd->add_option("--d", dimension)->capture_default_str();
  tilde_fraction_cmd->add_option("--samples", samples)->capture_default_str();
  tilde_fraction_cmd->add_option("--f-exponent", f_exponent)->capture_default_str();
  tilde_fraction_cmd->add_option("--f", explicit_f);
  add_output_options(tilde_fraction_cmd, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return kExitUsage;
  }

  try {
    auto filter = [&] {
      rdg::RootFilter f;
      f.f_exponent = f_exponent;
      if (explicit_f >= 0) f.explicit_f = explicit_f;
      return f;
    }();

    if (*graph_info) {
      const rdg::DistGraph g = rdg::build_graph(n);
      const auto st = rdg::stirling_estimates(n);
      Json config{{"n", n}, {"format", opts.format}};
      emit(opts, render_kv(opts, "graph info", config,
                           {{"n", std::to_string(n)},
                            {"N", std::to_string(g.vertex_count())},
                            {"N1", std::to_string(g.regular_degree())},
                            {"edges", g.edge_count().str()},
                            {"N_stirling", rdg::format_double(st.n_approx)},
                            {"N1_stirling", rdg::format_double(st.n1_approx)}}));
      return kExitOk;
    }

    if (*graph_path) {
      const rdg::DistGraph g = rdg::build_graph(n);
      const auto triple = g.find_no_common_neighbor_triple(budget, opts.seed);
      Json config{{"n", n}, {"budget", budget}, {"seed", opts.seed}, {"format", opts.format}};
      std::vector<std::pair<std::string, std::string>> kv{{"n", std::to_string(n)},
                                                          {"budget", std::to_string(budget)}};
      if (triple) {
        kv.emplace_back("found", "1");
        for (int i = 0; i < 3; ++i)
          kv.emplace_back("vertex_" + std::to_string(i + 1),
                          rdg::coords_from_word((*triple)[i], n));
        kv.emplace_back("verified_common_neighbors",
                        g.common_neighbor_count({(*triple)[0], (*triple)[1], (*triple)[2]}).str());
      } else {
        kv.emplace_back("found", "0");
      }
      emit(opts, render_kv(opts, "graph pathology", config, kv));
      return kExitOk;
    }

    if (*pattern_analyze) {
      const rdg::ParsedPattern parsed = load_pattern(pattern_name);
      const rdg::PatternGraph& f = parsed.graph;
      Json config{{"pattern", pattern_name}, {"format", opts.format}};
      std::vector<std::pair<std::string, std::string>> kv{
          {"vertices", std::to_string(f.vertex_count())},
          {"edges", std::to_string(f.edge_count())},
          {"density", rdg::to_string(rdg::density(f))},
          {"max_density", rdg::to_string(rdg::max_density(f))},
          {"strictly_balanced", rdg::is_strictly_balanced(f) ? "1" : "0"},
          {"balanced", rdg::is_balanced(f) ? "1" : "0"},
          {"automorphisms", std::to_string(rdg::automorphism_count(f))}};
      if (parsed.is_network()) {
        const rdg::RootedNetwork net = parsed.as_network();
        kv.emplace_back("roots", std::to_string(net.root_count()));
        kv.emplace_back("k", std::to_string(net.non_root_count()));
        kv.emplace_back("l", std::to_string(net.extension_edge_count()));
        kv.emplace_back("network_density", rdg::to_string(rdg::network_density(net)));
        kv.emplace_back("network_strictly_balanced",
                        rdg::is_strictly_balanced_network(net) ? "1" : "0");
        kv.emplace_back("nontrivial", rdg::is_nontrivial(net) ? "1" : "0");
        kv.emplace_back("root_fixing_automorphisms",
                        std::to_string(rdg::root_fixing_automorphism_count(net)));
      }
      emit(opts, render_kv(opts, "pattern analyze", config, kv));
      return kExitOk;
    }

    if (*count_mono) {
      const rdg::PatternGraph f = load_pattern(pattern_name).graph;
      const rdg::BigCount chains = rdg::blockprofile_unrooted_count(f, n, false);
      const rdg::BigCount monos = rdg::blockprofile_unrooted_count(f, n, true);
      const long long a = rdg::automorphism_count(f);
      Json config{{"pattern", pattern_name}, {"n", n}, {"verify", verify}, {"format", opts.format}};
      std::vector<std::pair<std::string, std::string>> kv{
          {"monomorphisms", monos.str()},
          {"chains_noninjective", chains.str()},
          {"automorphisms", std::to_string(a)},
          {"copies", rdg::BigCount(monos / a).str()}};
      if (verify) {
        const rdg::DistGraph g = rdg::build_graph(n);
        const rdg::BigCount oracle = rdg::bruteforce_monomorphisms(f, g);
        kv.emplace_back("bruteforce_monomorphisms", oracle.str());
        kv.emplace_back("oracle_match", oracle == monos ? "1" : "0");
      }
      emit(opts, render_kv(opts, "count mono", config, kv));
      return kExitOk;
    }

    if (*count_rooted) {
      const rdg::RootedNetwork net = load_pattern(network_name).as_network();
      Json config{{"network", network_name}, {"n", n}, {"format", opts.format}};
      std::vector<std::pair<std::string, std::string>> kv;
      rdg::PartitionVector pv;
      std::vector<rdg::VertexWord> root_words;
      if (!x_text.empty()) {
        pv = rdg::partition_vector_from_x(n, parse_int_list(x_text));
        config["x"] = parse_int_list(x_text);
      } else if (!roots_text.empty()) {
        const rdg::DistGraph g = rdg::build_graph(n);
        for (int idx : parse_int_list(roots_text))
          root_words.push_back(g.vertex_at(std::uint64_t(idx)));
        pv = rdg::partition_vector(n, root_words);
        config["roots"] = parse_int_list(roots_text);
      } else {
        throw std::invalid_argument("count rooted: provide --roots or --x");
      }
      std::ostringstream xs;
      for (std::size_t i = 0; i < pv.x.size(); ++i) xs << (i ? " " : "") << pv.x[i];
      kv.emplace_back("x", xs.str());
      kv.emplace_back("blockprofile_count",
                      rdg::blockprofile_rooted_count(net, pv, n).str());
      if (verify) {
        if (root_words.empty())
          throw std::invalid_argument("count rooted: --verify needs --roots");
        const rdg::DistGraph g = rdg::build_graph(n);
        kv.emplace_back("bruteforce_noninjective",
                        rdg::bruteforce_rooted_count(net, root_words, g, false).str());
        kv.emplace_back("bruteforce_injective",
                        rdg::bruteforce_rooted_count(net, root_words, g, true).str());
      }
      emit(opts, render_kv(opts, "count rooted", config, kv));
      return kExitOk;
    }

    if (*count_analytic) {
      int k = analytic_k, l = analytic_l;
      if (!pattern_name.empty()) {
        const rdg::PatternGraph f = load_pattern(pattern_name).graph;
        k = f.vertex_count();
        l = f.edge_count();
      }
      if (k < 1 || l < 0)
        throw std::invalid_argument("count analytic: provide --pattern or --k/--l");
      Json config{{"k", k}, {"l", l}, {"n", n}, {"format", opts.format}};
      emit(opts, render_kv(opts, "count analytic", config,
                           {{"k", std::to_string(k)},
                            {"l", std::to_string(l)},
                            {"analytic_m", rdg::format_double(rdg::analytic_m(k, l, n))},
                            {"analytic_m_exact", rdg::to_string(rdg::analytic_m_exact(k, l, n))}}));
      return kExitOk;
    }

    if (*sample_sweep) {
      const rdg::PatternGraph f = load_pattern(pattern_name).graph;
      const std::vector<double> alphas =
          alphas_text.empty() ? rdg::default_sweep_grid() : parse_double_list(alphas_text);
      const auto result = rdg::threshold_sweep(f, n, alphas, trials, opts.seed, opts.threads);
      emit_warnings(result.warnings);
      Json config{{"pattern", pattern_name}, {"n", n}, {"alphas", alphas},
                  {"trials", trials}, {"seed", opts.seed}, {"format", opts.format}};
      emit(opts, render_rows(opts, "sample sweep", config, result));
      return kExitOk;
    }

    if (*sample_lln) {
      const rdg::PatternGraph f = load_pattern(pattern_name).graph;
      const auto result = rdg::lln_check(f, n, p, trials, opts.seed, opts.threads);
      Json config{{"pattern", pattern_name}, {"n", n}, {"p", p},
                  {"trials", trials}, {"seed", opts.seed}, {"format", opts.format}};
      emit(opts, render_rows(opts, "sample lln", config, result));
      return kExitOk;
    }

    if (*sample_poisson) {
      const rdg::PatternGraph f = load_pattern(pattern_name).graph;
      const auto result = rdg::poisson_experiment(f, n, c, trials, opts.seed, opts.threads);
      emit_warnings(result.warnings);
      Json config{{"pattern", pattern_name}, {"n", n}, {"c", c},
                  {"trials", trials}, {"seed", opts.seed}, {"format", opts.format}};
      emit(opts, render_rows(opts, "sample poisson", config, result));
      return kExitOk;
    }

    if (*ext_sweep_cmd) {
      const rdg::RootedNetwork net = load_pattern(network_name).as_network();
      const std::vector<double> multipliers =
          multipliers_text.empty() ? rdg::default_sweep_grid() : parse_double_list(multipliers_text);
      const rdg::ExtMode mode = mode_text == "sampled" ? rdg::ExtMode::Sampled(tuples)
                                                       : rdg::ExtMode::Exhaustive();
      const auto result =
          rdg::ext_sweep(net, n, multipliers, trials, filter, mode, opts.seed, opts.threads);
      emit_warnings(result.warnings);
      Json config{{"network", network_name}, {"n", n}, {"multipliers", multipliers},
                  {"trials", trials}, {"f_exponent", f_exponent}, {"mode", mode_text},
                  {"seed", opts.seed}, {"format", opts.format}};
      if (explicit_f >= 0) config["f"] = explicit_f;
      if (mode_text == "sampled") config["tuples"] = tuples;
      emit(opts, render_rows(opts, "ext sweep", config, result));
      return kExitOk;
    }

    if (*uniformity_cmd) {
      const rdg::RootedNetwork net = load_pattern(network_name).as_network();
      const std::vector<int> ns = parse_int_list(n_list_text);
      const auto rows = rdg::uniformity_check(net, ns, filter, samples, opts.seed, opts.threads);
      Json config{{"network", network_name}, {"n_list", ns}, {"samples", samples},
                  {"f_exponent", f_exponent}, {"seed", opts.seed}, {"format", opts.format}};
      if (explicit_f >= 0) config["f"] = explicit_f;
      emit(opts, render_rows(opts, "uniformity", config, rows));
      return kExitOk;
    }

    if (*convergence_cmd) {
      const rdg::PatternGraph f = load_pattern(pattern_name).graph;
      const std::vector<int> ns = parse_int_list(n_list_text);
      const auto rows = rdg::convergence_report(f, ns);
      Json config{{"pattern", pattern_name}, {"n_list", ns}, {"format", opts.format}};
      emit(opts, render_rows(opts, "convergence", config, rows));
      return kExitOk;
    }

    if (*tilde_fraction_cmd) {
      const rdg::DistGraph g = rdg::build_graph(n);
      if (!filter.growth_hypothesis_ok(n))
        std::cerr << "warning: root filter f(n) is not << n^(2/3)\n";
      const auto est = rdg::tilde_fraction(g, dimension, filter, samples, opts.seed);
      Json config{{"n", n}, {"d", dimension}, {"samples", samples},
                  {"f_exponent", f_exponent}, {"seed", opts.seed}, {"format", opts.format}};
      if (explicit_f >= 0) config["f"] = explicit_f;
      emit(opts, render_kv(opts, "tilde fraction", config,
                           {{"n", std::to_string(n)},
                            {"d", std::to_string(dimension)},
                            {"f", std::to_string(filter.f_value(n))},
                            {"estimate", rdg::format_double(est.estimate)},
                            {"ci_low", rdg::format_double(est.ci_low)},
                            {"ci_high", rdg::format_double(est.ci_high)},
                            {"exact", est.exact ? "1" : "0"},
                            {"samples", std::to_string(est.samples)}}));
      return kExitOk;
    }

    std::cerr << "error: usage: no subcommand dispatched\n";
    return kExitUsage;
  } catch (const rdg::BudgetExceeded& e) {
    std::cerr << "error: budget: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: precondition: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
