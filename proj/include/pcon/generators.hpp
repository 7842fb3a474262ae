#pragma once
// Synthetic graph families over a counter-seeded deterministic RNG: uniform
// random (er), preferential attachment (ba), rewired ring (ws), preferential
// attachment with triangle closure (plc), and balanced planted communities
// (planted).  Identical spec + seed always yields an identical edge list.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "pcon/graph.hpp"
#include "pcon/rng.hpp"

namespace pcon {

enum class GenModel { kEr, kBa, kWs, kPlc, kPlanted };

struct GenSpec {
  GenModel model = GenModel::kEr;
  VertexId n = 0;
  // er: edge probability, or a target edge count (converted to p).
  double p = -1.0;
  std::uint64_t m_target = 0;
  // ba / plc: edges per new vertex; ws: ring degree (even).
  std::uint32_t k = 0;
  double beta = -1.0;        // ws rewiring probability
  double p_triangle = -1.0;  // plc triangle-closure probability
  // planted: community count, expected intra-community degree, mixing.
  std::uint32_t communities = 0;
  double intra_degree = 0.0;
  double mu = -1.0;
  std::uint64_t seed = 0;
};

struct GroundTruth {
  std::vector<std::uint32_t> labels;  // community per vertex
};

struct Generated {
  Graph graph;
  std::optional<GroundTruth> truth;
};

namespace detail {

[[noreturn]] inline void gen_error(const std::string& msg) {
  throw std::invalid_argument("generator: " + msg);
}

// Enumerates pairs (u, v), u < v, in lexicographic order; index decoding is
// incremental, so a monotone index stream costs O(n + hits).
// decode() expects a nondecreasing idx stream across calls.
class PairWalker {
 public:
  explicit PairWalker(VertexId n)
      : n_(n), row_end_(n >= 1 ? n - 1 : 0) {}
  std::pair<VertexId, VertexId> decode(std::uint64_t idx) {
    while (idx >= row_end_) {
      ++row_;
      row_start_ = row_end_;
      row_end_ += n_ - 1 - row_;
    }
    return {row_, static_cast<VertexId>(row_ + 1 + (idx - row_start_))};
  }

 private:
  VertexId n_;
  VertexId row_ = 0;
  std::uint64_t row_start_ = 0;
  std::uint64_t row_end_;  // row 0 covers [0, n-1)
};

// Geometric skip sampling: appends each pair from `walker`'s index space
// independently with probability p, consuming O(expected hits) randomness.
inline void sample_pairs_bernoulli(
    VertexId n, double p, SplitMix64& rng,
    std::vector<std::pair<VertexId, VertexId>>& edges) {
  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (pairs == 0 || p <= 0.0) return;
  if (p >= 1.0) {
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return;
  }
  PairWalker walker(n);
  const double log1mp = std::log1p(-p);
  double idx = -1.0;
  while (true) {
    double r = rng.next_double();
    // skip ~ Geometric(p): number of misses before the next hit
    double skip = std::floor(std::log1p(-r) / log1mp);
    idx += skip + 1.0;
    if (idx >= static_cast<double>(pairs)) break;
    auto [u, v] = walker.decode(static_cast<std::uint64_t>(idx));
    edges.emplace_back(u, v);
  }
}

// Same Bernoulli sampling over the rectangle {a_lo..a_hi-1} x {b_lo..b_hi-1}.
inline void sample_rect_bernoulli(
    VertexId a_lo, VertexId a_hi, VertexId b_lo, VertexId b_hi, double p,
    SplitMix64& rng, std::vector<std::pair<VertexId, VertexId>>& edges) {
  const std::uint64_t rows = a_hi - a_lo, cols = b_hi - b_lo;
  const std::uint64_t cells = rows * cols;
  if (cells == 0 || p <= 0.0) return;
  if (p >= 1.0) {
    for (VertexId u = a_lo; u < a_hi; ++u)
      for (VertexId v = b_lo; v < b_hi; ++v) edges.emplace_back(u, v);
    return;
  }
  const double log1mp = std::log1p(-p);
  double idx = -1.0;
  while (true) {
    double r = rng.next_double();
    double skip = std::floor(std::log1p(-r) / log1mp);
    idx += skip + 1.0;
    if (idx >= static_cast<double>(cells)) break;
    auto cell = static_cast<std::uint64_t>(idx);
    edges.emplace_back(static_cast<VertexId>(a_lo + cell / cols),
                       static_cast<VertexId>(b_lo + cell % cols));
  }
}

inline std::uint64_t pack_pair(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

inline Generated gen_er(const GenSpec& s) {
  if (s.n < 2) gen_error("er requires n >= 2");
  double p = s.p;
  if (p < 0 && s.m_target > 0) {
    double pairs = static_cast<double>(s.n) * (s.n - 1) / 2.0;
    p = std::min(1.0, static_cast<double>(s.m_target) / pairs);
  }
  if (p < 0) gen_error("er requires p or m");
  if (p > 1) gen_error("er requires p in [0, 1]");
  SplitMix64 rng(s.seed);
  std::vector<std::pair<VertexId, VertexId>> edges;
  sample_pairs_bernoulli(s.n, p, rng, edges);
  return {Graph::from_edges(s.n, edges), std::nullopt};
}

inline Generated gen_ba(const GenSpec& s) {
  if (s.k < 1) gen_error("ba requires k >= 1");
  if (s.n <= s.k) gen_error("ba requires n > k");
  SplitMix64 rng(s.seed);
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<VertexId> endpoints;  // vertex repeated once per incident edge
  // Seed clique on k+1 vertices: connected, and every early vertex starts
  // with k attachment slots.
  for (VertexId u = 0; u <= s.k; ++u)
    for (VertexId v = u + 1; v <= s.k; ++v) {
      edges.emplace_back(u, v);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  std::vector<VertexId> targets;
  for (VertexId v = s.k + 1; v < s.n; ++v) {
    targets.clear();
    while (targets.size() < s.k) {
      VertexId cand = endpoints[rng.next_below(endpoints.size())];
      if (std::find(targets.begin(), targets.end(), cand) == targets.end())
        targets.push_back(cand);
    }
    for (VertexId t : targets) {
      edges.emplace_back(t, v);
      endpoints.push_back(t);
      endpoints.push_back(v);
    }
  }
  return {Graph::from_edges(s.n, edges), std::nullopt};
}

inline Generated gen_ws(const GenSpec& s) {
  if (s.k < 2 || s.k % 2 != 0) gen_error("ws requires even k >= 2");
  if (s.n <= s.k) gen_error("ws requires n > k");
  if (s.beta < 0 || s.beta > 1) gen_error("ws requires beta in [0, 1]");
  SplitMix64 rng(s.seed);

  std::vector<std::pair<VertexId, VertexId>> edges;
  std::unordered_set<std::uint64_t> present;
  edges.reserve(static_cast<std::size_t>(s.n) * (s.k / 2));
  for (VertexId u = 0; u < s.n; ++u)
    for (std::uint32_t j = 1; j <= s.k / 2; ++j) {
      VertexId v = static_cast<VertexId>((u + j) % s.n);
      edges.emplace_back(u, v);
      present.insert(pack_pair(u, v));
    }
  // Rewire the far endpoint of each ring edge with probability beta, keeping
  // the near endpoint; skip a rewire when 64 draws find no free slot.
  for (auto& [u, v] : edges) {
    if (rng.next_double() >= s.beta) continue;
    for (int attempt = 0; attempt < 64; ++attempt) {
      VertexId w = static_cast<VertexId>(rng.next_below(s.n));
      if (w == u || present.count(pack_pair(u, w))) continue;
      present.erase(pack_pair(u, v));
      present.insert(pack_pair(u, w));
      v = w;
      break;
    }
  }
  return {Graph::from_edges(s.n, edges), std::nullopt};
}

inline Generated gen_plc(const GenSpec& s) {
  if (s.k < 1) gen_error("plc requires k >= 1");
  if (s.n <= s.k) gen_error("plc requires n > k");
  if (s.p_triangle < 0 || s.p_triangle > 1)
    gen_error("plc requires p_t in [0, 1]");
  SplitMix64 rng(s.seed);

  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<VertexId> endpoints;
  std::vector<std::vector<VertexId>> nbrs(s.n);
  std::unordered_set<std::uint64_t> present;
  auto add_edge = [&](VertexId a, VertexId b) {
    edges.emplace_back(a, b);
    endpoints.push_back(a);
    endpoints.push_back(b);
    nbrs[a].push_back(b);
    nbrs[b].push_back(a);
    present.insert(pack_pair(a, b));
  };
  for (VertexId u = 0; u <= s.k; ++u)
    for (VertexId v = u + 1; v <= s.k; ++v) add_edge(u, v);

  for (VertexId v = s.k + 1; v < s.n; ++v) {
    VertexId prev = 0;
    for (std::uint32_t slot = 0; slot < s.k; ++slot) {
      VertexId target = 0;
      bool found = false;
      // After the first slot, close a triangle through the previous target
      // with probability p_t.
      if (slot > 0 && rng.next_double() < s.p_triangle) {
        for (int attempt = 0; attempt < 8 && !found; ++attempt) {
          VertexId w = nbrs[prev][rng.next_below(nbrs[prev].size())];
          if (w != v && !present.count(pack_pair(v, w))) {
            target = w;
            found = true;
          }
        }
      }
      while (!found) {
        VertexId cand = endpoints[rng.next_below(endpoints.size())];
        if (cand != v && !present.count(pack_pair(v, cand))) {
          target = cand;
          found = true;
        }
      }
      add_edge(v, target);
      prev = target;
    }
  }
  return {Graph::from_edges(s.n, edges), std::nullopt};
}

inline Generated gen_planted(const GenSpec& s) {
  if (s.communities < 2) gen_error("planted requires c >= 2");
  if (s.n < 2 * s.communities) gen_error("planted requires n >= 2c");
  if (!(s.intra_degree > 0)) gen_error("planted requires k_in > 0");
  if (s.mu < 0 || s.mu >= 1) gen_error("planted requires mu in [0, 1)");

  const std::uint32_t c = s.communities;
  std::vector<VertexId> start(c + 1, 0);
  for (std::uint32_t b = 0; b < c; ++b)
    start[b + 1] = start[b] + s.n / c + (b < s.n % c ? 1 : 0);

  const double k_total = s.intra_degree / (1.0 - s.mu);
  const double base_size = static_cast<double>(start[1] - start[0]);
  const double p_in = s.intra_degree / (base_size - 1.0);
  const double p_out =
      s.mu == 0.0 ? 0.0
                  : s.mu * k_total / (static_cast<double>(s.n) - base_size);
  if (p_in > 1.0) gen_error("planted: k_in too large for community size");
  if (p_out > 1.0) gen_error("planted: mu * k too large for n");

  SplitMix64 rng(s.seed);
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (std::uint32_t b = 0; b < c; ++b) {
    // within-block pairs, shifted into the block's id range
    std::vector<std::pair<VertexId, VertexId>> block;
    sample_pairs_bernoulli(start[b + 1] - start[b], p_in, rng, block);
    for (auto [u, v] : block)
      edges.emplace_back(start[b] + u, start[b] + v);
  }
  for (std::uint32_t a = 0; a < c; ++a)
    for (std::uint32_t b = a + 1; b < c; ++b)
      sample_rect_bernoulli(start[a], start[a + 1], start[b], start[b + 1],
                            p_out, rng, edges);

  GroundTruth truth;
  truth.labels.resize(s.n);
  for (std::uint32_t b = 0; b < c; ++b)
    for (VertexId v = start[b]; v < start[b + 1]; ++v) truth.labels[v] = b;
  return {Graph::from_edges(s.n, edges), std::move(truth)};
}

}  // namespace detail

inline Generated generate(const GenSpec& spec) {
  if (spec.n == 0) detail::gen_error("n must be >= 1");
  switch (spec.model) {
    case GenModel::kEr: return detail::gen_er(spec);
    case GenModel::kBa: return detail::gen_ba(spec);
    case GenModel::kWs: return detail::gen_ws(spec);
    case GenModel::kPlc: return detail::gen_plc(spec);
    case GenModel::kPlanted: return detail::gen_planted(spec);
  }
  detail::gen_error("unknown model");
}

}  // namespace pcon
