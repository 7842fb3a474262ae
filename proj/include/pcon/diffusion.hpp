#pragma once
// Seed-centered mass propagation with degree-scaled truncation: a truncated
// random walk, a push-based restart-walk solver, and a Poisson-weighted walk
// series, plus the shared sweep over the mass/degree ordering.
//
// All propagation accumulates into dense scratch arrays while iterating
// sorted supports and CSR-ordered neighbor lists, so results are bitwise
// deterministic for a given graph and parameter set.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pcon/graph.hpp"
#include "pcon/peel.hpp"

namespace pcon {

// Sparse nonnegative vertex vector; entries sorted by vertex id, absent = 0.
struct SparseDist {
  std::vector<std::pair<VertexId, double>> entries;

  bool empty() const { return entries.empty(); }
  double mass() const {
    double s = 0;
    for (const auto& [v, x] : entries) s += x;
    return s;
  }
  double at(VertexId v) const {
    auto it = std::lower_bound(
        entries.begin(), entries.end(), v,
        [](const std::pair<VertexId, double>& e, VertexId key) {
          return e.first < key;
        });
    return (it != entries.end() && it->first == v) ? it->second : 0.0;
  }
};

namespace detail {

inline void require_seed(const Graph& g, VertexId q, const char* what) {
  if (q >= g.vertex_count())
    throw std::invalid_argument(std::string(what) + ": seed vertex " +
                                std::to_string(q) + " out of range");
  if (g.degree(q) == 0)
    throw std::invalid_argument(std::string(what) + ": seed vertex " +
                                std::to_string(q) + " is isolated");
}

// Dense scratch reused across propagation rounds; `touched` keeps the set of
// written ids so clearing costs O(support).
struct DenseScratch {
  std::vector<double> value;
  std::vector<char> used;
  std::vector<VertexId> touched;

  explicit DenseScratch(VertexId n) : value(n, 0.0), used(n, 0) {}
  void add(VertexId v, double x) {
    if (!used[v]) {
      used[v] = 1;
      touched.push_back(v);
    }
    value[v] += x;
  }
  // Moves entries >= their threshold into `out` (sorted) and resets.
  void harvest(SparseDist& out, const Graph& g, double per_degree_floor) {
    std::sort(touched.begin(), touched.end());
    out.entries.clear();
    for (VertexId v : touched) {
      if (value[v] >= per_degree_floor * static_cast<double>(g.degree(v)))
        out.entries.emplace_back(v, value[v]);
      value[v] = 0;
      used[v] = 0;
    }
    touched.clear();
  }
};

// One step of the natural random walk: spread every entry equally over its
// neighbors, then drop entries below eps * degree.
inline void walk_step(const Graph& g, const SparseDist& cur, SparseDist& next,
                      DenseScratch& scratch, double eps) {
  for (const auto& [u, mass] : cur.entries) {
    double share = mass / static_cast<double>(g.degree(u));
    for (VertexId v : g.neighbors(u)) scratch.add(v, share);
  }
  scratch.harvest(next, g, eps);
}

}  // namespace detail

// Runs `steps` rounds of propagate-then-truncate from a unit point mass.
inline SparseDist truncated_random_walk(const Graph& g, VertexId q, double eps,
                                        std::uint32_t steps = 10) {
  detail::require_seed(g, q, "truncated_random_walk");
  if (!(eps >= 0))
    throw std::invalid_argument("truncated_random_walk: eps must be >= 0");
  SparseDist cur;
  cur.entries.emplace_back(q, 1.0);
  detail::DenseScratch scratch(g.vertex_count());
  SparseDist next;
  for (std::uint32_t step = 0; step < steps && !cur.empty(); ++step) {
    detail::walk_step(g, cur, next, scratch, eps);
    cur.entries.swap(next.entries);
  }
  return cur;
}

// Push-based solver for the restart walk: repeatedly converts an alpha
// fraction of a vertex's residual into settled mass and spreads the rest over
// its neighbors, until every residual is below eps * degree.  Settled plus
// residual mass always sums to 1.  If `residual_out` is non-null it receives
// the final residual vector.
inline SparseDist ppr_push(const Graph& g, VertexId q, double alpha, double eps,
                           SparseDist* residual_out = nullptr) {
  detail::require_seed(g, q, "ppr_push");
  if (!(alpha > 0 && alpha < 1))
    throw std::invalid_argument("ppr_push: alpha must be in (0, 1)");
  if (!(eps > 0)) throw std::invalid_argument("ppr_push: eps must be > 0");

  const VertexId n = g.vertex_count();
  std::vector<double> settled(n, 0.0), resid(n, 0.0);
  std::vector<char> queued(n, 0);
  std::deque<VertexId> fifo;

  resid[q] = 1.0;
  if (resid[q] >= eps * static_cast<double>(g.degree(q))) {
    fifo.push_back(q);
    queued[q] = 1;
  }
  while (!fifo.empty()) {
    VertexId u = fifo.front();
    fifo.pop_front();
    queued[u] = 0;
    double rho = resid[u];
    resid[u] = 0.0;
    double du = static_cast<double>(g.degree(u));
    settled[u] += alpha * rho;
    double share = (1.0 - alpha) * rho / du;
    for (VertexId v : g.neighbors(u)) {
      resid[v] += share;
      if (!queued[v] &&
          resid[v] >= eps * static_cast<double>(g.degree(v))) {
        fifo.push_back(v);
        queued[v] = 1;
      }
    }
  }

  SparseDist out;
  for (VertexId v = 0; v < n; ++v)
    if (settled[v] > 0) out.entries.emplace_back(v, settled[v]);
  if (residual_out) {
    residual_out->entries.clear();
    for (VertexId v = 0; v < n; ++v)
      if (resid[v] > 0) residual_out->entries.emplace_back(v, resid[v]);
  }
  return out;
}

namespace detail {

// Poisson(t) stage weights e^{-t} t^k / k! for k = 0..K, where K is the
// smallest truncation making the dropped tail less than `tail_bound`.
inline std::vector<double> poisson_stage_weights(double t, double tail_bound) {
  std::vector<double> weights;
  double w = std::exp(-t);  // k = 0
  double cumulative = 0.0;
  for (std::uint32_t k = 0;; ++k) {
    weights.push_back(w);
    cumulative += w;
    if (1.0 - cumulative < tail_bound) break;
    if (k > 200000)
      throw std::invalid_argument("poisson_stage_weights: t too large");
    w *= t / static_cast<double>(k + 1);
  }
  return weights;
}

}  // namespace detail

// Poisson-weighted walk series: accumulates eta_k * (walk step)^k applied to
// the seed mass, truncating each stage's vector at eps * degree and cutting
// the stage count where the Poisson tail drops below eps / 2.
inline SparseDist hk_relax(const Graph& g, VertexId q, double t, double eps) {
  detail::require_seed(g, q, "hk_relax");
  if (!(t > 0)) throw std::invalid_argument("hk_relax: t must be > 0");
  if (!(eps > 0)) throw std::invalid_argument("hk_relax: eps must be > 0");

  std::vector<double> eta = detail::poisson_stage_weights(t, eps / 2.0);
  const VertexId n = g.vertex_count();
  std::vector<double> acc(n, 0.0);
  SparseDist cur, next;
  cur.entries.emplace_back(q, 1.0);
  detail::DenseScratch scratch(n);

  acc[q] += eta[0];
  for (std::size_t k = 1; k < eta.size() && !cur.empty(); ++k) {
    detail::walk_step(g, cur, next, scratch, eps);
    cur.entries.swap(next.entries);
    for (const auto& [v, mass] : cur.entries) acc[v] += eta[k] * mass;
  }

  SparseDist out;
  for (VertexId v = 0; v < n; ++v)
    if (acc[v] > 0) out.entries.emplace_back(v, acc[v]);
  return out;
}

// Orders the support by mass/degree (descending, ids break ties) and takes
// the best prefix cut over that ordering.
inline ClusterResult diffusion_sweep(const Graph& g, const SparseDist& dist) {
  if (dist.empty())
    throw std::invalid_argument("diffusion_sweep: empty distribution");
  std::vector<VertexId> order;
  order.reserve(dist.entries.size());
  std::vector<double> score(dist.entries.size());
  for (const auto& [v, mass] : dist.entries) {
    if (v >= g.vertex_count())
      throw std::invalid_argument("diffusion_sweep: vertex out of range");
    if (g.degree(v) == 0)
      throw std::invalid_argument("diffusion_sweep: mass on isolated vertex");
    score[order.size()] = mass / static_cast<double>(g.degree(v));
    order.push_back(v);
  }
  std::vector<std::size_t> idx(order.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (score[a] != score[b]) return score[a] > score[b];
    return order[a] < order[b];
  });
  std::vector<VertexId> sweep_order(order.size());
  for (std::size_t i = 0; i < idx.size(); ++i) sweep_order[i] = order[idx[i]];
  return ordered_cut_sweep(g, sweep_order);
}

}  // namespace pcon
