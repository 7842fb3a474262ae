#pragma once
// Shared fixtures and independent reference implementations for the test
// suite.  Reference code here recomputes everything directly from adjacency
// scans, on purpose, so it cannot share a bug with the incremental engine.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pcon/graph.hpp"
#include "pcon/ratio.hpp"
#include "pcon/rng.hpp"

namespace testsupport {

using pcon::Graph;
using pcon::Ratio;
using pcon::VertexId;
using EdgeList = std::vector<std::pair<VertexId, VertexId>>;

// Two triangles {0,1,2} and {3,4,5} joined by the bridge 2-3.
inline Graph barbell() {
  return Graph::from_edges(
      6, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 5}});
}

// 4-cycle {0..3}, bridge 3-4, 5-cycle {4..8}: n = 9, m = 10, and the best
// cut is the 4-cycle side with conductance 1/9.
inline Graph two_rings() {
  return Graph::from_edges(9, {{0, 1},
                               {1, 2},
                               {2, 3},
                               {0, 3},
                               {3, 4},
                               {4, 5},
                               {5, 6},
                               {6, 7},
                               {7, 8},
                               {4, 8}});
}

inline Graph path_n(VertexId n) {
  EdgeList edges;
  for (VertexId v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph::from_edges(n, edges);
}

inline Graph cycle_n(VertexId n) {
  EdgeList edges;
  for (VertexId v = 0; v < n; ++v)
    edges.emplace_back(v, static_cast<VertexId>((v + 1) % n));
  return Graph::from_edges(n, edges);
}

// Hub 0 with `leaves` pendant vertices.
inline Graph star(VertexId leaves) {
  EdgeList edges;
  for (VertexId v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return Graph::from_edges(leaves + 1, edges);
}

inline Graph complete(VertexId n) {
  EdgeList edges;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

// Plain per-pair Bernoulli graph; fine for the small sizes tests use.
inline Graph random_graph(VertexId n, double p, std::uint64_t seed) {
  pcon::SplitMix64 rng(seed);
  EdgeList edges;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (rng.next_double() < p) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

// Retries seeds until the sample is connected (dense enough p assumed).
inline Graph random_connected_graph(VertexId n, double p, std::uint64_t seed) {
  for (std::uint64_t attempt = 0; attempt < 1000; ++attempt) {
    Graph g = random_graph(n, p, seed + attempt * 0x9e3779b9ull);
    if (g.edge_count() > 0 && pcon::is_connected(g)) return g;
  }
  throw std::runtime_error("random_connected_graph: no connected sample");
}

// --- Independent reference computations --------------------------------------

inline std::uint64_t ref_volume(const Graph& g,
                                const std::vector<VertexId>& members) {
  std::uint64_t vol = 0;
  for (VertexId v : members) vol += g.degree(v);
  return vol;
}

inline std::uint64_t ref_cut(const Graph& g,
                             const std::vector<VertexId>& members) {
  std::vector<char> in(g.vertex_count(), 0);
  for (VertexId v : members) in[v] = 1;
  std::uint64_t cut = 0;
  for (VertexId v : members)
    for (VertexId w : g.neighbors(v))
      if (!in[w]) ++cut;
  return cut;
}

// Symmetric conductance as a plain double (min-volume denominator).
inline double ref_conductance(const Graph& g,
                              const std::vector<VertexId>& members) {
  std::uint64_t vol = ref_volume(g, members);
  std::uint64_t denom = std::min(vol, g.volume() - vol);
  if (denom == 0)
    throw std::invalid_argument("ref_conductance: zero-volume side");
  return static_cast<double>(ref_cut(g, members)) / static_cast<double>(denom);
}

// O(n^2) selection-based minimum-degree removal order: scan every live
// vertex, take the smallest (remaining degree, id).
inline std::vector<VertexId> ref_degeneracy_order(const Graph& g) {
  const VertexId n = g.vertex_count();
  std::vector<std::uint64_t> deg(n);
  std::vector<char> live(n, 1);
  for (VertexId v = 0; v < n; ++v) deg[v] = g.degree(v);

  std::vector<VertexId> order;
  order.reserve(n);
  for (VertexId round = 0; round < n; ++round) {
    VertexId best = n;
    for (VertexId v = 0; v < n; ++v) {
      if (!live[v]) continue;
      if (best == n || deg[v] < deg[best] || (deg[v] == deg[best] && v < best))
        best = v;
    }
    live[best] = 0;
    order.push_back(best);
    for (VertexId w : g.neighbors(best))
      if (live[w]) --deg[w];
  }
  return order;
}

// All members of `labels`'s communities, for feeding detected-cluster scoring.
inline std::vector<VertexId> sorted_members(std::vector<VertexId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace testsupport
