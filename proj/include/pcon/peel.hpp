#pragma once
// Peeling sweep engine and exact cut-quality measures.
//
// Every clustering method in this library reduces to: compute a vertex
// ordering, walk it while maintaining (cut, volume) incrementally, and return
// the best intermediate set.  Two sweep flavors exist:
//
//   * peel_sweep: removal semantics.  States are the sets still standing
//     after each removal; only states with volume <= m are candidates and a
//     state is scored by cut/volume.  The full vertex set enters only as the
//     sentinel with conductance 1, so any state with an internal edge beats
//     it; if nothing does, the best small-volume state is returned with the
//     `degenerate` flag set.
//
//   * ordered_cut_sweep: addition semantics for score-sorted orders.  Every
//     prefix/suffix cut of the order is scored with the symmetric conductance
//     (minimum-volume denominator) and the small-volume side of the best cut
//     is returned, so a good cut is found no matter which side of it the
//     ordering visits first.
//
// All comparisons are exact integer rational comparisons; ties always resolve
// to the earliest state of the sweep.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcon/graph.hpp"
#include "pcon/ratio.hpp"

namespace pcon {

inline std::vector<char> members_mask(VertexId n,
                                      std::span<const VertexId> members) {
  std::vector<char> mask(n, 0);
  for (VertexId v : members) {
    if (v >= n) throw std::invalid_argument("member id out of range");
    mask[v] = 1;
  }
  return mask;
}

namespace detail {

struct CutVolume {
  std::uint64_t cut = 0;
  std::uint64_t vol = 0;
};

inline CutVolume cut_volume(const Graph& g, std::span<const VertexId> members) {
  if (members.empty())
    throw std::invalid_argument("cut measures are undefined for the empty set");
  std::vector<char> mask = members_mask(g.vertex_count(), members);
  CutVolume cv;
  for (VertexId u : members) {
    cv.vol += g.degree(u);
    cv.cut += g.degree(u) - induced_degree(g, mask, u);
  }
  return cv;
}

}  // namespace detail

// Conductance of a nonempty vertex set: cut / min(vol, 2m - vol).  The whole
// vertex set has conductance 1 by convention; zero-volume sides (only
// possible around isolated vertices) are undefined and rejected.
inline Ratio conductance(const Graph& g, std::span<const VertexId> members) {
  auto [cut, vol] = detail::cut_volume(g, members);
  std::uint64_t denom = std::min(vol, g.volume() - vol);
  if (denom == 0) {
    if (members.size() == g.vertex_count()) return {1, 1};  // whole graph
    throw std::invalid_argument("conductance undefined: zero-volume side");
  }
  return {cut, denom};
}

// Internal-volume share: (sum of within-set degrees) / (2 * sum of degrees).
// For sets with volume <= m this equals (1 - conductance)/2 exactly, which is
// what makes maximizing it interchangeable with minimizing conductance along
// a sweep.
inline Ratio g_score(const Graph& g, std::span<const VertexId> members) {
  auto [cut, vol] = detail::cut_volume(g, members);
  if (vol == 0)
    throw std::invalid_argument("g_score undefined: set has zero volume");
  return {vol - cut, 2 * vol};
}

// Result of any clustering method in this library.
struct ClusterResult {
  std::vector<VertexId> members;  // sorted dense ids, volume <= m
  Ratio cond{1, 1};               // conductance of `members`
  Ratio g{0, 1};                  // internal-volume share of `members`
  std::string method;
  std::string params;
  bool degenerate = false;   // nothing beat the sentinel (conductance 1)
  std::uint64_t sweep_ops = 0;  // incremental-maintenance work counter
  double wall_time_s = 0.0;
  std::uint64_t mem_bytes = 0;
};

enum class SweepObjective { kMinConductance, kMaxG };

// Live view of a graph under vertex removals: maintains each remaining
// vertex's degree towards the remaining set, the boundary cut and the volume,
// all in O(deg(u)) per removal.
class PeelState {
 public:
  explicit PeelState(const Graph& g)
      : g_(&g),
        live_(g.vertex_count(), 1),
        live_deg_(g.vertex_count(), 0),
        vol_(g.volume()),
        live_count_(g.vertex_count()) {
    for (VertexId v = 0; v < g.vertex_count(); ++v)
      live_deg_[v] = g.degree(v);
  }

  void remove(VertexId u) {
    if (u >= live_.size() || !live_[u])
      throw std::invalid_argument("PeelState: removing a non-live vertex");
    // Internal edges of u become cut edges; u's own cut edges disappear.
    cut_ += 2 * live_deg_[u] - g_->degree(u);
    vol_ -= g_->degree(u);
    live_[u] = 0;
    --live_count_;
    ++ops_;
    for (VertexId v : g_->neighbors(u)) {
      ++ops_;
      if (live_[v]) --live_deg_[v];
    }
  }

  const Graph& graph() const { return *g_; }
  bool live(VertexId v) const { return live_[v] != 0; }
  std::uint64_t live_degree(VertexId v) const { return live_deg_[v]; }
  std::uint64_t cut() const { return cut_; }
  std::uint64_t volume() const { return vol_; }
  VertexId live_count() const { return live_count_; }
  std::uint64_t ops() const { return ops_; }

 private:
  const Graph* g_;
  std::vector<char> live_;
  std::vector<std::uint64_t> live_deg_;
  std::uint64_t cut_ = 0;
  std::uint64_t vol_ = 0;
  VertexId live_count_ = 0;
  std::uint64_t ops_ = 0;
};

// From-scratch audit of a PeelState: recomputes every live degree, the cut
// and the volume directly from the graph and compares with the maintained
// values.  Test harnesses call this after corrupting or replaying states.
inline bool recompute_check(const PeelState& st) {
  const Graph& g = st.graph();
  std::vector<char> mask(g.vertex_count(), 0);
  for (VertexId v = 0; v < g.vertex_count(); ++v) mask[v] = st.live(v) ? 1 : 0;
  std::uint64_t cut = 0, vol = 0, live_count = 0;
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    if (!mask[v]) continue;
    ++live_count;
    std::uint64_t internal = induced_degree(g, mask, v);
    if (internal != st.live_degree(v)) return false;
    vol += g.degree(v);
    cut += g.degree(v) - internal;
  }
  return cut == st.cut() && vol == st.volume() && live_count == st.live_count();
}

namespace detail {

inline void require_permutation(const Graph& g,
                                std::span<const VertexId> order) {
  if (order.size() != g.vertex_count())
    throw std::invalid_argument("removal order must cover every vertex");
  std::vector<char> seen(g.vertex_count(), 0);
  for (VertexId v : order) {
    if (v >= g.vertex_count() || seen[v])
      throw std::invalid_argument("removal order is not a permutation");
    seen[v] = 1;
  }
}

}  // namespace detail

// Removal sweep.  Walks `removal_order` front to back, scoring each remaining
// set with volume in [1, m] and returning the best one under `objective`
// (strict improvement, so the earliest optimum wins).  States never beat the
// whole-graph sentinel (conductance 1 / share 0) unless they keep an internal
// edge; when none does, the best eligible state is returned with `degenerate`
// set.
inline ClusterResult peel_sweep(const Graph& g,
                                std::span<const VertexId> removal_order,
                                SweepObjective objective) {
  if (g.edge_count() == 0)
    throw std::invalid_argument("peel_sweep requires at least one edge");
  detail::require_permutation(g, removal_order);
  const std::uint64_t m = g.edge_count();
  const VertexId n = g.vertex_count();

  PeelState st(g);
  // Value of a state under the active objective, as an exact ratio to
  // minimize (conductance) or maximize (internal share).
  auto value = [&](std::uint64_t cut, std::uint64_t vol) -> Ratio {
    if (objective == SweepObjective::kMinConductance) return {cut, vol};
    return {vol - cut, 2 * vol};
  };
  auto better = [&](Ratio a, Ratio b) {
    return objective == SweepObjective::kMinConductance ? ratio_less(a, b)
                                                        : ratio_less(b, a);
  };

  // Sentinel: the whole graph counts as conductance 1 <-> share 0.
  Ratio best_value =
      objective == SweepObjective::kMinConductance ? Ratio{1, 1} : Ratio{0, 1};
  std::size_t best_k = 0;  // 0 = sentinel (no state chosen yet)
  std::uint64_t best_cut = 0, best_vol = 0;

  bool have_fallback = false;
  Ratio fb_value{0, 1};
  std::size_t fb_k = 0;
  std::uint64_t fb_cut = 0, fb_vol = 0;

  for (std::size_t k = 1; k < n; ++k) {
    st.remove(removal_order[k - 1]);
    std::uint64_t cut = st.cut(), vol = st.volume();
    if (vol == 0 || vol > m) continue;  // ineligible state
    Ratio v = value(cut, vol);
    if (!have_fallback || better(v, fb_value)) {
      have_fallback = true;
      fb_value = v;
      fb_k = k;
      fb_cut = cut;
      fb_vol = vol;
    }
    if (better(v, best_value)) {
      best_value = v;
      best_k = k;
      best_cut = cut;
      best_vol = vol;
    }
  }

  ClusterResult res;
  res.degenerate = best_k == 0;
  std::size_t k = res.degenerate ? fb_k : best_k;
  std::uint64_t cut = res.degenerate ? fb_cut : best_cut;
  std::uint64_t vol = res.degenerate ? fb_vol : best_vol;
  if (res.degenerate && !have_fallback)
    throw std::logic_error("peel_sweep: no eligible state");  // unreachable for m >= 1
  res.members.assign(removal_order.begin() + k, removal_order.end());
  std::sort(res.members.begin(), res.members.end());
  res.cond = {cut, vol};  // vol <= m, so min(vol, 2m - vol) == vol
  res.g = {vol - cut, 2 * vol};
  res.sweep_ops = st.ops();
  return res;
}

// Addition sweep over a score-sorted order (full permutation or diffusion
// support).  Prefix i and its complement form one cut; the cut is scored by
// symmetric conductance and the volume<=m side of the best cut is returned.
// Prefixes whose cut has a zero-volume side are not scorable and skipped.
inline ClusterResult ordered_cut_sweep(const Graph& g,
                                       std::span<const VertexId> order) {
  if (g.edge_count() == 0)
    throw std::invalid_argument("ordered_cut_sweep requires at least one edge");
  if (order.empty())
    throw std::invalid_argument("ordered_cut_sweep: empty order");
  const std::uint64_t total = g.volume();
  const std::uint64_t m = g.edge_count();
  const VertexId n = g.vertex_count();

  std::vector<char> added(n, 0);
  // The whole-set position is no cut at all; stop one short when the order
  // covers every vertex.
  std::size_t limit =
      order.size() == n ? static_cast<std::size_t>(n) - 1 : order.size();

  std::uint64_t cut = 0, vol = 0, ops = 0;
  bool have_best = false;
  Ratio best{1, 1};
  std::size_t best_i = 0;
  std::uint64_t best_cut = 0, best_vol = 0;

  for (std::size_t i = 0; i < limit; ++i) {
    VertexId u = order[i];
    if (u >= n || added[u])
      throw std::invalid_argument("ordered_cut_sweep: order repeats a vertex");
    std::uint64_t inside = 0;
    for (VertexId v : g.neighbors(u)) {
      ++ops;
      if (added[v]) ++inside;
    }
    added[u] = 1;
    cut += g.degree(u) - 2 * inside;
    vol += g.degree(u);
    std::uint64_t denom = std::min(vol, total - vol);
    if (denom == 0) continue;  // zero-volume side, not scorable
    Ratio value{cut, denom};
    if (!have_best || ratio_less(value, best)) {
      have_best = true;
      best = value;
      best_i = i + 1;
      best_cut = cut;
      best_vol = vol;
    }
  }
  if (!have_best)
    throw std::invalid_argument("ordered_cut_sweep: no scorable cut");

  ClusterResult res;
  res.sweep_ops = ops;
  res.degenerate = ratio_eq(best, {1, 1});
  res.cond = best;
  if (best_vol <= m) {
    res.members.assign(order.begin(),
                       order.begin() + static_cast<std::ptrdiff_t>(best_i));
  } else {
    // Return the complement side, which has volume 2m - best_vol < m.
    std::vector<char> prefix = members_mask(
        n, order.subspan(0, best_i));
    res.members.reserve(n - best_i);
    for (VertexId v = 0; v < n; ++v)
      if (!prefix[v]) res.members.push_back(v);
    best_vol = total - best_vol;
  }
  std::sort(res.members.begin(), res.members.end());
  res.g = {best_vol - best_cut, 2 * best_vol};
  return res;
}

}  // namespace pcon
