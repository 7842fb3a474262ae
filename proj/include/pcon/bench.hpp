#pragma once
// Benchmark harness: method dispatch, per-run records, CSV emission, the
// generator-spec mini-language, and scaling measurements with log-log fits.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "pcon/diffusion.hpp"
#include "pcon/eval.hpp"
#include "pcon/generators.hpp"
#include "pcon/graph.hpp"
#include "pcon/memtrack.hpp"
#include "pcon/peel.hpp"
#include "pcon/rng.hpp"
#include "pcon/spectral.hpp"
#include "pcon/structural.hpp"

namespace pcon {

// Command-line misuse (unknown method / subcommand shape); mapped to its own
// exit code by the CLI.
struct UsageError : std::exception {
  explicit UsageError(std::string msg) : msg_(std::move(msg)) {}
  const char* what() const noexcept override { return msg_.c_str(); }

 private:
  std::string msg_;
};

enum class Method { kPconCore, kPconDe, kAscSweep, kTrw, kPpr, kHk };

inline Method parse_method(const std::string& name) {
  if (name == "pcon_core") return Method::kPconCore;
  if (name == "pcon_de") return Method::kPconDe;
  if (name == "asc_sweep") return Method::kAscSweep;
  if (name == "trw") return Method::kTrw;
  if (name == "ppr") return Method::kPpr;
  if (name == "hk") return Method::kHk;
  throw UsageError("unknown method '" + name +
                   "' (expected pcon_core, pcon_de, asc_sweep, trw, ppr, hk)");
}

inline const char* method_name(Method m) {
  switch (m) {
    case Method::kPconCore: return "pcon_core";
    case Method::kPconDe: return "pcon_de";
    case Method::kAscSweep: return "asc_sweep";
    case Method::kTrw: return "trw";
    case Method::kPpr: return "ppr";
    case Method::kHk: return "hk";
  }
  return "?";
}

inline bool is_diffusion(Method m) {
  return m == Method::kTrw || m == Method::kPpr || m == Method::kHk;
}

struct MethodParams {
  double alpha = 0.01;          // ppr restart probability
  double eps = 0.0;             // truncation threshold; 0 = 1/m
  double t = 10.0;              // hk stage-weight parameter
  std::uint32_t iters = 0;      // 0 = method default (trw 10, asc_sweep 5000)
  std::uint32_t seed_count = 50;  // diffusion seed vertices per graph
  std::uint64_t rng_seed = 1;
  std::uint32_t workers = 1;
  double tol = 1e-7;            // asc_sweep convergence tolerance
};

struct RunRecord {
  std::string dataset;
  std::string method;
  std::string params;
  std::uint64_t seed = 0;  // diffusion: seed vertex id; otherwise the RNG seed
  double time_s = 0.0;
  std::uint64_t mem_bytes = 0;
  double conductance = 1.0;
  std::uint64_t size = 0;
  std::uint64_t volume = 0;
  std::optional<double> nmi;
  std::string timestamp;  // ISO-8601 UTC; informational, not a CSV column
};

namespace detail {

inline std::string fmt_double(double x, const char* spec = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, x);
  return buf;
}

inline std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline double resolve_eps(const Graph& g, const MethodParams& p) {
  if (p.eps > 0) return p.eps;
  return 1.0 / static_cast<double>(g.edge_count());
}

inline std::string params_string(const Graph& g, Method m,
                                 const MethodParams& p) {
  auto num = [](double x) { return fmt_double(x, "%g"); };
  switch (m) {
    case Method::kPconCore:
    case Method::kPconDe: return "";
    case Method::kAscSweep:
      return "tol=" + num(p.tol) +
             ",iters=" + std::to_string(p.iters ? p.iters : 5000);
    case Method::kTrw:
      return "eps=" + num(resolve_eps(g, p)) +
             ",iters=" + std::to_string(p.iters ? p.iters : 10);
    case Method::kPpr:
      return "alpha=" + num(p.alpha) + ",eps=" + num(resolve_eps(g, p));
    case Method::kHk:
      return "t=" + num(p.t) + ",eps=" + num(resolve_eps(g, p));
  }
  return "";
}

// Uniform sample of distinct vertices via partial Fisher-Yates.
inline std::vector<VertexId> sample_seed_vertices(VertexId n,
                                                  std::uint32_t count,
                                                  std::uint64_t rng_seed) {
  std::vector<VertexId> pool(n);
  for (VertexId v = 0; v < n; ++v) pool[v] = v;
  SplitMix64 rng(rng_seed);
  std::uint32_t take = std::min<std::uint32_t>(count, n);
  for (std::uint32_t i = 0; i < take; ++i) {
    std::uint64_t j = i + rng.next_below(n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(take);
  return pool;
}

inline double elapsed_s(std::chrono::steady_clock::time_point t0) {
  auto dt = std::chrono::steady_clock::now() - t0;
  return std::chrono::duration<double>(dt).count();
}

}  // namespace detail

// Runs one diffusion from `seed_vertex` and sweeps the result.  An empty
// propagated mass (everything truncated) degenerates to the seed singleton,
// whose conductance is exactly 1.
inline ClusterResult run_diffusion(const Graph& g, Method m,
                                   const MethodParams& p,
                                   VertexId seed_vertex) {
  double eps = detail::resolve_eps(g, p);
  SparseDist dist;
  switch (m) {
    case Method::kTrw:
      dist = truncated_random_walk(g, seed_vertex, eps,
                                   p.iters ? p.iters : 10);
      break;
    case Method::kPpr: dist = ppr_push(g, seed_vertex, p.alpha, eps); break;
    case Method::kHk: dist = hk_relax(g, seed_vertex, p.t, eps); break;
    default: throw std::invalid_argument("run_diffusion: not a diffusion");
  }
  ClusterResult res;
  if (dist.empty()) {
    res.members = {seed_vertex};
    res.cond = conductance(g, res.members);
    res.g = g_score(g, res.members);
    res.degenerate = true;
  } else {
    res = diffusion_sweep(g, dist);
  }
  res.method = method_name(m);
  return res;
}

// Dispatches a whole-graph method (diffusions want run_diffusion instead).
inline ClusterResult run_whole_graph(const Graph& g, Method m,
                                     const MethodParams& p) {
  switch (m) {
    case Method::kPconCore: return pcon_core(g);
    case Method::kPconDe: return pcon_de(g);
    case Method::kAscSweep: {
      SpectralVector sv = approx_fiedler(g, p.tol, p.iters ? p.iters : 5000,
                                         p.rng_seed);
      return spectral_sweep(g, sv);
    }
    default:
      throw std::invalid_argument("run_whole_graph: diffusion method");
  }
}

// Runs `method` over the graph and emits one record per run: a single record
// for whole-graph methods, one per sampled seed vertex for diffusions (the
// record's `seed` column then holds the seed vertex id).  `truth`, when
// given, is a list of ground-truth communities (overlap allowed) in dense
// ids; each record is then scored against its best-overlap community.
inline std::vector<RunRecord> run_benchmark(
    const Graph& g, const std::string& dataset, Method method,
    const MethodParams& p,
    const std::vector<std::vector<VertexId>>* truth = nullptr) {
  if (g.edge_count() == 0)
    throw std::invalid_argument("run_benchmark: graph has no edges");
  if (truth && truth->empty())
    throw std::invalid_argument("run_benchmark: empty ground truth");

  const std::string stamp = detail::utc_timestamp();
  const std::string params = detail::params_string(g, method, p);
  auto fill = [&](RunRecord& rec, const ClusterResult& res) {
    rec.dataset = dataset;
    rec.method = method_name(method);
    rec.params = params;
    rec.timestamp = stamp;
    rec.conductance = to_double(res.cond);
    rec.size = res.members.size();
    std::uint64_t vol = 0;
    for (VertexId v : res.members) vol += g.degree(v);
    rec.volume = vol;
    if (truth)
      rec.nmi = score_detected_cluster(g.vertex_count(), res.members, *truth);
  };

  std::vector<RunRecord> records;
  if (!is_diffusion(method)) {
    memtrack::Scope scope;
    auto t0 = std::chrono::steady_clock::now();
    ClusterResult res = run_whole_graph(g, method, p);
    double secs = detail::elapsed_s(t0);
    RunRecord rec;
    fill(rec, res);
    rec.seed = p.rng_seed;
    rec.time_s = secs;
    rec.mem_bytes = scope.peak();
    records.push_back(std::move(rec));
    return records;
  }

  std::vector<VertexId> seeds =
      detail::sample_seed_vertices(g.vertex_count(), p.seed_count, p.rng_seed);
  // Isolated vertices cannot seed a walk; drop them from the sample.
  std::erase_if(seeds, [&](VertexId v) { return g.degree(v) == 0; });
  if (seeds.empty())
    throw std::invalid_argument("run_benchmark: no usable seed vertices");

  records.resize(seeds.size());
  std::uint32_t workers = std::max(1u, p.workers);
  workers = std::min<std::uint32_t>(workers, seeds.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = cursor.fetch_add(1);
      if (i >= seeds.size()) break;
      memtrack::Scope scope;
      auto t0 = std::chrono::steady_clock::now();
      ClusterResult res = run_diffusion(g, method, p, seeds[i]);
      double secs = detail::elapsed_s(t0);
      RunRecord& rec = records[i];
      fill(rec, res);
      rec.seed = seeds[i];
      rec.time_s = secs;
      rec.mem_bytes = scope.peak();
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint32_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return records;
}

// Convenience overload scoring against a full partition.
inline std::vector<RunRecord> run_benchmark(const Graph& g,
                                            const std::string& dataset,
                                            Method method,
                                            const MethodParams& p,
                                            const Partition& truth) {
  if (truth.labels.size() != g.vertex_count())
    throw std::invalid_argument("run_benchmark: truth size mismatch");
  std::map<std::uint32_t, std::vector<VertexId>> by_label;
  for (VertexId v = 0; v < truth.labels.size(); ++v)
    by_label[truth.labels[v]].push_back(v);
  std::vector<std::vector<VertexId>> communities;
  communities.reserve(by_label.size());
  for (auto& [label, members] : by_label)
    communities.push_back(std::move(members));
  return run_benchmark(g, dataset, method, p, &communities);
}

// --- CSV ---------------------------------------------------------------------

inline constexpr const char* kCsvHeader =
    "dataset,method,params,seed,time_s,mem_bytes,conductance,size,volume,nmi";

namespace detail {

inline std::string csv_field(const std::string& raw) {
  bool needs_quote = raw.find_first_of(",\"\n\r") != std::string::npos;
  if (!needs_quote) return raw;
  std::string out = "\"";
  for (char c : raw) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

inline void emit_csv(std::ostream& os, const std::vector<RunRecord>& records) {
  os << kCsvHeader << '\n';
  for (const RunRecord& r : records) {
    os << detail::csv_field(r.dataset) << ',' << detail::csv_field(r.method)
       << ',' << detail::csv_field(r.params) << ',' << r.seed << ','
       << detail::fmt_double(r.time_s) << ',' << r.mem_bytes << ','
       << detail::fmt_double(r.conductance) << ',' << r.size << ','
       << r.volume << ',' << (r.nmi ? detail::fmt_double(*r.nmi) : "")
       << '\n';
  }
}

// --- Generator spec mini-language ---------------------------------------------
// "model:key=value,key=value", e.g. "er:n=1000,p=0.01,seed=7".

inline GenSpec parse_gen_spec(const std::string& text) {
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("bad generator spec '" + text + "': " + why);
  };
  std::size_t colon = text.find(':');
  if (colon == std::string::npos) fail("expected 'model:key=value,...'");
  std::string model = text.substr(0, colon);

  GenSpec spec;
  if (model == "er") spec.model = GenModel::kEr;
  else if (model == "ba") spec.model = GenModel::kBa;
  else if (model == "ws") spec.model = GenModel::kWs;
  else if (model == "plc") spec.model = GenModel::kPlc;
  else if (model == "planted") spec.model = GenModel::kPlanted;
  else fail("unknown model '" + model + "'");

  auto to_u64 = [&](const std::string& v) -> std::uint64_t {
    try {
      if (!v.empty() && v[0] != '-') {  // stoull would wrap negatives
        std::size_t end = 0;
        unsigned long long x = std::stoull(v, &end);
        if (end == v.size()) return x;
      }
    } catch (...) {
    }
    fail("not an integer: '" + v + "'");
    return 0;  // unreachable
  };
  auto to_f64 = [&](const std::string& v) -> double {
    try {
      std::size_t end = 0;
      double x = std::stod(v, &end);
      if (end == v.size()) return x;
    } catch (...) {
    }
    fail("not a number: '" + v + "'");
    return 0;  // unreachable
  };

  std::size_t pos = colon + 1;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    std::string kv = text.substr(pos, end - pos);
    pos = end + 1;
    if (kv.empty()) continue;
    std::size_t eq = kv.find('=');
    if (eq == std::string::npos) fail("expected key=value, got '" + kv + "'");
    std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);

    if (key == "n") {
      std::uint64_t n = to_u64(value);
      if (n == 0 || n > 0xffffffffull) fail("n out of range");
      spec.n = static_cast<VertexId>(n);
    } else if (key == "seed") {
      spec.seed = to_u64(value);
    } else if (key == "p" && spec.model == GenModel::kEr) {
      spec.p = to_f64(value);
    } else if (key == "m" && spec.model == GenModel::kEr) {
      spec.m_target = to_u64(value);
    } else if (key == "k" && (spec.model == GenModel::kBa ||
                              spec.model == GenModel::kWs ||
                              spec.model == GenModel::kPlc)) {
      std::uint64_t k = to_u64(value);
      if (k == 0 || k > 0xffffffffull) fail("k out of range");
      spec.k = static_cast<std::uint32_t>(k);
    } else if (key == "beta" && spec.model == GenModel::kWs) {
      spec.beta = to_f64(value);
    } else if (key == "pt" && spec.model == GenModel::kPlc) {
      spec.p_triangle = to_f64(value);
    } else if (key == "c" && spec.model == GenModel::kPlanted) {
      std::uint64_t c = to_u64(value);
      if (c < 2 || c > 0xffffffffull) fail("c out of range");
      spec.communities = static_cast<std::uint32_t>(c);
    } else if (key == "kin" && spec.model == GenModel::kPlanted) {
      spec.intra_degree = to_f64(value);
    } else if (key == "mu" && spec.model == GenModel::kPlanted) {
      spec.mu = to_f64(value);
    } else {
      fail("unknown key '" + key + "' for model '" + model + "'");
    }
  }
  if (spec.n == 0) fail("n is required");
  return spec;
}

// --- Scaling harness ----------------------------------------------------------

struct ScalingReport {
  std::vector<RunRecord> rows;  // one per size: size = n, volume = 2m
  double slope = 0.0;           // d log(time) / d log(n + m)
  double r2 = 0.0;
};

namespace detail {

inline GenSpec default_scaling_spec(GenModel model, VertexId n,
                                    std::uint64_t seed) {
  GenSpec s;
  s.model = model;
  s.n = n;
  s.seed = seed;
  switch (model) {
    case GenModel::kEr: s.m_target = 4ull * n; break;
    case GenModel::kBa: s.k = 8; break;
    case GenModel::kWs: s.k = 8; s.beta = 0.1; break;
    case GenModel::kPlc: s.k = 8; s.p_triangle = 0.3; break;
    case GenModel::kPlanted:
      s.communities = 20;
      s.intra_degree = 8.0;
      s.mu = 0.2;
      break;
  }
  return s;
}

}  // namespace detail

// Generates one graph per size, keeps its largest connected component, times
// `method` (median of `reps`), and fits log(time) against log(n + m) by
// least squares.
inline ScalingReport scaling_bench(GenModel model,
                                   const std::vector<VertexId>& sizes,
                                   Method method, const MethodParams& params,
                                   std::uint32_t reps = 3) {
  if (sizes.size() < 3)
    throw std::invalid_argument("scaling_bench: need >= 3 sizes");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1000)
      throw std::invalid_argument("scaling_bench: sizes must be >= 1000");
    if (i && sizes[i] <= sizes[i - 1])
      throw std::invalid_argument("scaling_bench: sizes must increase");
  }
  if (reps == 0) throw std::invalid_argument("scaling_bench: reps must be >= 1");

  ScalingReport report;
  std::vector<double> xs, ys;
  for (VertexId n : sizes) {
    GenSpec spec =
        detail::default_scaling_spec(model, n, params.rng_seed + n);
    Generated gen = generate(spec);
    LabeledGraph lcc = largest_component(
        {std::move(gen.graph), RelabelMap::identity(spec.n)});
    const Graph& g = lcc.graph;

    std::vector<double> times;
    RunRecord rep_record;
    for (std::uint32_t r = 0; r < reps; ++r) {
      std::vector<RunRecord> recs = run_benchmark(g, "scale", method, params);
      double total = 0;
      for (const RunRecord& rec : recs) total += rec.time_s;
      times.push_back(std::max(total, 1e-9));
      if (r == 0) rep_record = recs.front();
    }
    std::sort(times.begin(), times.end());
    double median = times[times.size() / 2];

    rep_record.dataset = "scale_n" + std::to_string(n);
    rep_record.time_s = median;
    rep_record.size = g.vertex_count();
    rep_record.volume = g.volume();
    report.rows.push_back(std::move(rep_record));

    xs.push_back(std::log(static_cast<double>(g.vertex_count()) +
                          static_cast<double>(g.edge_count())));
    ys.push_back(std::log(median));
  }

  // least-squares line fit in log-log space
  const double k = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
    syy += ys[i] * ys[i];
  }
  double vx = sxx - sx * sx / k;
  double vy = syy - sy * sy / k;
  double cov = sxy - sx * sy / k;
  report.slope = vx > 0 ? cov / vx : 0.0;
  report.r2 = (vx > 0 && vy > 0) ? (cov * cov) / (vx * vy) : 1.0;
  return report;
}

}  // namespace pcon
