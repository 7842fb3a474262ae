// pcon: conductance-minimizing cluster extraction and benchmarking.
//
// Subcommands:
//   run     cluster one graph with one method, emit CSV records
//   sweep   rerun a diffusion method across a ladder of truncation epsilons
//   scale   time a method across generated graphs of growing size
//   gen     write a generated graph (edge list, labels, binary cache)
//   oracle  exhaustive optimum of a small graph (n <= 20)
//   nmi     compare two vertex-label files
//
// Exit codes: 0 ok, 2 usage error, 3 I/O error, 4 invalid parameter.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pcon/memtrack_impl.hpp"
#include "pcon/pcon.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitParams = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

pcon::LabeledGraph load_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open graph file: " + path);
  try {
    if (ends_with(path, ".pcg")) return pcon::load_cache(in);
    return pcon::parse_edge_list(in);
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& e) {
    throw IoError(path + ": " + e.what());
  }
}

// Loads --graph or --gen input and reduces it to its largest connected
// component (methods that need connectivity then always get it, and records
// stay comparable across methods).
pcon::LabeledGraph load_input(const std::string& graph_path,
                              const std::string& gen_spec) {
  if (graph_path.empty() == gen_spec.empty())
    throw pcon::UsageError("exactly one of --graph / --gen is required");
  pcon::LabeledGraph lg;
  if (!graph_path.empty()) {
    lg = load_graph_file(graph_path);
  } else {
    pcon::GenSpec spec = pcon::parse_gen_spec(gen_spec);
    pcon::Generated gen = pcon::generate(spec);
    lg = {std::move(gen.graph), pcon::RelabelMap::identity(spec.n)};
  }
  return pcon::largest_component(lg);
}

std::string dataset_name(const std::string& graph_path,
                         const std::string& gen_spec) {
  if (!graph_path.empty()) {
    std::size_t slash = graph_path.find_last_of('/');
    return slash == std::string::npos ? graph_path
                                      : graph_path.substr(slash + 1);
  }
  return gen_spec;
}

void write_csv_out(const std::string& out_path,
                   const std::vector<pcon::RunRecord>& records) {
  if (out_path.empty() || out_path == "-") {
    pcon::emit_csv(std::cout, records);
    if (!std::cout) throw IoError("failed writing CSV to stdout");
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw IoError("cannot open output file: " + out_path);
  pcon::emit_csv(out, records);
  out.flush();
  if (!out) throw IoError("failed writing CSV to " + out_path);
}

// Ground truth in original ids -> communities over the dense graph.
std::vector<std::vector<pcon::VertexId>> load_truth(
    const pcon::LabeledGraph& lg, const std::string& truth_path,
    const std::string& labels_path) {
  if (!truth_path.empty() && !labels_path.empty())
    throw pcon::UsageError("--truth and --labels are mutually exclusive");
  if (!truth_path.empty()) {
    std::ifstream in(truth_path);
    if (!in) throw IoError("cannot open community file: " + truth_path);
    return pcon::communities_to_dense(lg.ids, pcon::read_community_sets(in));
  }
  std::ifstream in(labels_path);
  if (!in) throw IoError("cannot open label file: " + labels_path);
  auto pairs = pcon::read_label_pairs(in);
  // group by label, keeping only vertices the graph retained
  std::map<std::uint64_t, std::vector<pcon::VertexId>> groups;
  for (auto [orig, label] : pairs) {
    auto it = lg.ids.to_dense.find(orig);
    if (it != lg.ids.to_dense.end()) groups[label].push_back(it->second);
  }
  if (groups.empty())
    throw std::invalid_argument("no labeled vertex intersects the graph");
  std::vector<std::vector<pcon::VertexId>> communities;
  for (auto& [label, members] : groups) {
    std::sort(members.begin(), members.end());
    communities.push_back(std::move(members));
  }
  return communities;
}

struct CommonRunOptions {
  std::string graph_path, gen_spec, out_path, truth_path, labels_path;
  std::string method_name;
  pcon::MethodParams params;
};

void add_common_options(CLI::App* cmd, CommonRunOptions& opt,
                        bool with_truth = true, bool with_input = true) {
  if (with_input) {
    cmd->add_option("--graph", opt.graph_path,
                    "edge-list file ('.pcg' loads the binary cache)");
    cmd->add_option("--gen", opt.gen_spec,
                    "generator spec, e.g. er:n=1000,p=0.01,seed=1");
  }
  cmd->add_option("--method", opt.method_name,
                  "pcon_core | pcon_de | asc_sweep | trw | ppr | hk")
      ->required();
  cmd->add_option("--alpha", opt.params.alpha, "restart probability (ppr)");
  cmd->add_option("--eps", opt.params.eps,
                  "truncation threshold (0 = 1/m default)");
  cmd->add_option("--t", opt.params.t, "stage-weight parameter (hk)");
  cmd->add_option("--iters", opt.params.iters,
                  "iteration override (0 = method default)");
  cmd->add_option("--seeds", opt.params.seed_count,
                  "diffusion seed vertices per graph");
  cmd->add_option("--rng-seed", opt.params.rng_seed, "RNG seed");
  cmd->add_option("--workers", opt.params.workers,
                  "worker threads for per-seed runs");
  cmd->add_option("--tol", opt.params.tol, "convergence tolerance (asc_sweep)");
  cmd->add_option("--out", opt.out_path, "output CSV path ('-' = stdout)");
  if (with_truth) {
    cmd->add_option("--truth", opt.truth_path,
                    "ground-truth communities, one per line (original ids)");
    cmd->add_option("--labels", opt.labels_path,
                    "ground-truth 'vertex community' pairs (original ids)");
  }
}

void validate_params(const pcon::MethodParams& p) {
  if (!(p.alpha > 0.0 && p.alpha < 1.0))
    throw std::invalid_argument("--alpha must be in (0, 1)");
  if (p.eps < 0.0) throw std::invalid_argument("--eps must be >= 0");
  if (!(p.t > 0.0)) throw std::invalid_argument("--t must be > 0");
  if (!(p.tol > 0.0)) throw std::invalid_argument("--tol must be > 0");
  if (p.seed_count == 0) throw std::invalid_argument("--seeds must be >= 1");
  if (p.workers == 0) throw std::invalid_argument("--workers must be >= 1");
}

int cmd_run(const CommonRunOptions& opt) {
  validate_params(opt.params);
  pcon::Method method = pcon::parse_method(opt.method_name);
  pcon::LabeledGraph lg = load_input(opt.graph_path, opt.gen_spec);

  std::optional<std::vector<std::vector<pcon::VertexId>>> truth;
  if (!opt.truth_path.empty() || !opt.labels_path.empty())
    truth = load_truth(lg, opt.truth_path, opt.labels_path);

  std::vector<pcon::RunRecord> records = pcon::run_benchmark(
      lg.graph, dataset_name(opt.graph_path, opt.gen_spec), method,
      opt.params, truth ? &*truth : nullptr);
  write_csv_out(opt.out_path, records);
  std::cerr << "wrote " << records.size() << " record(s)\n";
  return kExitOk;
}

int cmd_sweep(const CommonRunOptions& opt) {
  validate_params(opt.params);
  pcon::Method method = pcon::parse_method(opt.method_name);
  if (!pcon::is_diffusion(method))
    throw pcon::UsageError("sweep only applies to diffusion methods");
  pcon::LabeledGraph lg = load_input(opt.graph_path, opt.gen_spec);

  std::optional<std::vector<std::vector<pcon::VertexId>>> truth;
  if (!opt.truth_path.empty() || !opt.labels_path.empty())
    truth = load_truth(lg, opt.truth_path, opt.labels_path);

  const double base =
      1.0 / static_cast<double>(lg.graph.edge_count());
  std::vector<pcon::RunRecord> all;
  for (double factor :
       {1.0, 10.0, 100.0, 1e3, 1e4, 1e5, 1e6}) {
    pcon::MethodParams params = opt.params;
    params.eps = base * factor;
    std::vector<pcon::RunRecord> records = pcon::run_benchmark(
        lg.graph, dataset_name(opt.graph_path, opt.gen_spec), method, params,
        truth ? &*truth : nullptr);
    all.insert(all.end(), records.begin(), records.end());
  }
  write_csv_out(opt.out_path, all);
  std::cerr << "wrote " << all.size() << " record(s)\n";
  return kExitOk;
}

int cmd_scale(const std::string& model_name, const std::string& sizes_text,
              const CommonRunOptions& opt, std::uint32_t reps) {
  validate_params(opt.params);
  pcon::Method method = pcon::parse_method(opt.method_name);

  pcon::GenModel model;
  if (model_name == "er") model = pcon::GenModel::kEr;
  else if (model_name == "ba") model = pcon::GenModel::kBa;
  else if (model_name == "ws") model = pcon::GenModel::kWs;
  else if (model_name == "plc") model = pcon::GenModel::kPlc;
  else if (model_name == "planted") model = pcon::GenModel::kPlanted;
  else throw pcon::UsageError("unknown model '" + model_name + "'");

  std::vector<pcon::VertexId> sizes;
  std::stringstream ss(sizes_text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      std::size_t end = 0;
      unsigned long long v = std::stoull(tok, &end);
      if (end != tok.size() || v == 0 || v > 0xffffffffull)
        throw std::invalid_argument(tok);
      sizes.push_back(static_cast<pcon::VertexId>(v));
    } catch (...) {
      throw std::invalid_argument("bad size '" + tok + "' in --sizes");
    }
  }

  pcon::ScalingReport report =
      pcon::scaling_bench(model, sizes, method, opt.params, reps);
  write_csv_out(opt.out_path, report.rows);
  std::cerr << "slope=" << report.slope << " r2=" << report.r2 << "\n";
  return kExitOk;
}

int cmd_gen(const std::string& gen_spec, const std::string& out_path,
            const std::string& truth_out, const std::string& cache_out) {
  pcon::GenSpec spec = pcon::parse_gen_spec(gen_spec);
  pcon::Generated gen = pcon::generate(spec);

  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw IoError("cannot open output file: " + out_path);
    out << "# " << gen_spec << "\n";
    pcon::write_edge_list(gen.graph, out);
    if (!out) throw IoError("failed writing " + out_path);
  }
  if (!truth_out.empty()) {
    if (!gen.truth)
      throw pcon::UsageError("model '" + gen_spec +
                             "' has no ground truth to write");
    std::ofstream out(truth_out);
    if (!out) throw IoError("cannot open output file: " + truth_out);
    for (pcon::VertexId v = 0; v < gen.truth->labels.size(); ++v)
      out << v << ' ' << gen.truth->labels[v] << '\n';
    if (!out) throw IoError("failed writing " + truth_out);
  }
  if (!cache_out.empty()) {
    std::ofstream out(cache_out, std::ios::binary);
    if (!out) throw IoError("cannot open output file: " + cache_out);
    pcon::save_cache({gen.graph, pcon::RelabelMap::identity(spec.n)}, out);
    if (!out) throw IoError("failed writing " + cache_out);
  }
  std::cerr << "generated n=" << gen.graph.vertex_count()
            << " m=" << gen.graph.edge_count() << "\n";
  return kExitOk;
}

int cmd_oracle(const std::string& graph_path) {
  pcon::LabeledGraph lg = load_graph_file(graph_path);
  pcon::OracleResult o = pcon::brute_force_optimum(lg.graph);
  auto print_set = [&](const char* name, pcon::Ratio r,
                       const std::vector<pcon::VertexId>& members) {
    r = pcon::reduced(r);
    std::cout << name << '=' << r.num << '/' << r.den << " ("
              << pcon::to_double(r) << ") size=" << members.size()
              << " members=";
    for (std::size_t i = 0; i < members.size(); ++i)
      std::cout << (i ? " " : "") << lg.ids.original(members[i]);
    std::cout << '\n';
  };
  std::cout << "n=" << lg.graph.vertex_count()
            << " m=" << lg.graph.edge_count() << '\n';
  print_set("min_phi", o.min_phi, o.min_phi_set);
  print_set("max_g", o.max_g, o.max_g_set);
  return kExitOk;
}

int cmd_nmi(const std::string& path_a, const std::string& path_b) {
  auto load = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open label file: " + path);
    return pcon::read_label_pairs(in);
  };
  auto pairs_a = load(path_a);
  auto pairs_b = load(path_b);

  std::map<std::uint64_t, std::uint64_t> a(pairs_a.begin(), pairs_a.end());
  std::map<std::uint64_t, std::uint64_t> b(pairs_b.begin(), pairs_b.end());
  if (a.size() != pairs_a.size() || b.size() != pairs_b.size())
    throw std::invalid_argument("a vertex is labeled twice");
  if (a.size() != b.size())
    throw std::invalid_argument("label files cover different vertex sets");

  pcon::Partition pa, pb;
  for (auto [v, label] : a) {
    auto it = b.find(v);
    if (it == b.end())
      throw std::invalid_argument("label files cover different vertex sets");
    if (label > 0xffffffffull || it->second > 0xffffffffull)
      throw std::invalid_argument("community id out of range");
    pa.labels.push_back(static_cast<std::uint32_t>(label));
    pb.labels.push_back(static_cast<std::uint32_t>(it->second));
  }
  std::cout << pcon::detail::fmt_double(pcon::nmi(pa, pb)) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph cluster extraction by low-conductance sweeps"};
  app.require_subcommand(1);
  // config files hold options in a section per subcommand, e.g. [run];
  // pass --config before the subcommand name
  app.set_config("--config", "", "read options from an INI file");

  CommonRunOptions run_opt;
  CLI::App* run_cmd = app.add_subcommand("run", "cluster one graph");
  add_common_options(run_cmd, run_opt);

  CommonRunOptions sweep_opt;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "rerun a diffusion across epsilons");
  add_common_options(sweep_cmd, sweep_opt);

  CommonRunOptions scale_opt;
  std::string scale_model = "er", scale_sizes;
  std::uint32_t scale_reps = 3;
  CLI::App* scale_cmd =
      app.add_subcommand("scale", "time a method across growing graphs");
  add_common_options(scale_cmd, scale_opt, /*with_truth=*/false,
                     /*with_input=*/false);
  scale_cmd->add_option("--model", scale_model,
                        "er | ba | ws | plc | planted");
  scale_cmd->add_option("--sizes", scale_sizes, "comma-separated vertex counts")
      ->required();
  scale_cmd->add_option("--reps", scale_reps, "timing repetitions per size");

  std::string gen_spec, gen_out, gen_truth_out, gen_cache_out;
  CLI::App* gen_cmd = app.add_subcommand("gen", "write a generated graph");
  gen_cmd->add_option("--gen", gen_spec, "generator spec")->required();
  gen_cmd->add_option("--out", gen_out, "edge-list output path");
  gen_cmd->add_option("--truth-out", gen_truth_out,
                      "ground-truth label output path");
  gen_cmd->add_option("--cache-out", gen_cache_out,
                      "binary cache output path (.pcg)");

  std::string oracle_graph;
  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "exhaustive optimum (n <= 20)");
  oracle_cmd->add_option("--graph", oracle_graph, "edge-list file")
      ->required();

  std::string nmi_a, nmi_b;
  CLI::App* nmi_cmd = app.add_subcommand("nmi", "compare two label files");
  nmi_cmd->add_option("--a", nmi_a, "first label file")->required();
  nmi_cmd->add_option("--b", nmi_b, "second label file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // help text, exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run_opt);
    if (*sweep_cmd) return cmd_sweep(sweep_opt);
    if (*scale_cmd)
      return cmd_scale(scale_model, scale_sizes, scale_opt, scale_reps);
    if (*gen_cmd) return cmd_gen(gen_spec, gen_out, gen_truth_out,
                                 gen_cache_out);
    if (*oracle_cmd) return cmd_oracle(oracle_graph);
    if (*nmi_cmd) return cmd_nmi(nmi_a, nmi_b);
    throw pcon::UsageError("no subcommand");
  } catch (const pcon::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParams;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
}
