#pragma once
// Structure-driven peeling: minimum-degree ordering (graph degeneracy) and
// minimum remaining-degree-ratio ordering, each feeding the removal sweep.

#include <cstdint>
#include <queue>
#include <stdexcept>
#include <vector>

#include "pcon/graph.hpp"
#include "pcon/peel.hpp"
#include "pcon/ratio.hpp"

namespace pcon {

struct DegeneracyOrder {
  std::vector<VertexId> order;            // removal sequence
  std::vector<std::uint32_t> core_number; // per vertex
  std::uint32_t degeneracy = 0;
};

// Repeatedly removes the vertex with the smallest remaining degree, smallest
// id on ties.  A lazy min-heap over packed (degree << 32 | id) keys gives the
// exact tie-break in O((n + m) log n); stale keys are skipped on pop.
inline DegeneracyOrder degeneracy_order(const Graph& g) {
  const VertexId n = g.vertex_count();
  DegeneracyOrder out;
  out.core_number.assign(n, 0);
  if (n == 0) return out;
  out.order.reserve(n);

  auto pack = [](std::uint64_t deg, VertexId v) {
    return (deg << 32) | v;
  };
  std::vector<std::uint64_t> deg(n);
  std::vector<char> live(n, 1);
  std::priority_queue<std::uint64_t, std::vector<std::uint64_t>,
                      std::greater<std::uint64_t>>
      heap;
  for (VertexId v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    heap.push(pack(deg[v], v));
  }

  std::uint32_t core = 0;
  while (!heap.empty()) {
    std::uint64_t key = heap.top();
    heap.pop();
    auto d = static_cast<std::uint32_t>(key >> 32);
    auto u = static_cast<VertexId>(key & 0xffffffffu);
    if (!live[u] || deg[u] != d) continue;  // superseded by a later decrement
    live[u] = 0;
    core = std::max(core, d);
    out.core_number[u] = core;
    out.order.push_back(u);
    for (VertexId v : g.neighbors(u)) {
      if (!live[v]) continue;
      --deg[v];
      heap.push(pack(deg[v], v));
    }
  }
  out.degeneracy = core;
  return out;
}

// Repeatedly removes the vertex minimizing remaining_degree(u) / degree(u),
// smallest id on ties.  Fractions are compared exactly by
// cross-multiplication.  Every starting ratio is 1, so the first removal is
// always vertex 0.
inline std::vector<VertexId> degree_ratio_order(const Graph& g) {
  const VertexId n = g.vertex_count();
  std::vector<VertexId> order;
  if (n == 0) return order;
  if (g.edge_count() == 0)
    throw std::invalid_argument("degree_ratio_order: graph has no edges");
  for (VertexId v = 0; v < n; ++v)
    if (g.degree(v) == 0)
      throw std::invalid_argument("degree_ratio_order: isolated vertex " +
                                  std::to_string(v));
  order.reserve(n);

  struct Entry {
    std::uint64_t num;  // remaining degree at push time
    std::uint64_t den;  // original degree
    VertexId id;
  };
  // Min-heap: priority_queue pops the largest, so "greater" means
  // "worse ratio, then larger id".
  auto after = [](const Entry& a, const Entry& b) {
    std::uint64_t lhs = a.num * b.den;  // degrees < 2^32, products fit
    std::uint64_t rhs = b.num * a.den;
    if (lhs != rhs) return lhs > rhs;
    return a.id > b.id;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(after)> heap(after);

  PeelState state(g);
  for (VertexId v = 0; v < n; ++v) heap.push({g.degree(v), g.degree(v), v});
  while (!heap.empty()) {
    Entry e = heap.top();
    heap.pop();
    if (!state.live(e.id) || state.live_degree(e.id) != e.num) continue;
    order.push_back(e.id);
    state.remove(e.id);
    for (VertexId v : g.neighbors(e.id)) {
      if (!state.live(v)) continue;
      heap.push({state.live_degree(v), g.degree(v), v});
    }
  }
  return order;
}

// Peels in reverse degeneracy order and keeps the best-conductance suffix.
inline ClusterResult pcon_core(const Graph& g) {
  if (!is_connected(g))
    throw std::invalid_argument("pcon_core: graph must be connected");
  DegeneracyOrder deg = degeneracy_order(g);
  std::vector<VertexId> removal(deg.order.rbegin(), deg.order.rend());
  ClusterResult res = peel_sweep(g, removal, SweepObjective::kMinConductance);
  res.method = "pcon_core";
  return res;
}

// Peels in minimum degree-ratio order and keeps the suffix with the largest
// internal-volume share; by the share/conductance duality on feasible
// suffixes this minimizes conductance among them.
inline ClusterResult pcon_de(const Graph& g) {
  if (!is_connected(g))
    throw std::invalid_argument("pcon_de: graph must be connected");
  std::vector<VertexId> removal = degree_ratio_order(g);
  ClusterResult res = peel_sweep(g, removal, SweepObjective::kMaxG);
  res.method = "pcon_de";
  return res;
}

}  // namespace pcon
