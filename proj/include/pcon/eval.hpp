#pragma once
// Evaluation: exhaustive small-graph optima, partition NMI, and the
// best-overlap scoring protocol for single detected clusters.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "pcon/graph.hpp"
#include "pcon/peel.hpp"
#include "pcon/ratio.hpp"

namespace pcon {

// Exhaustive optimum over proper nonempty subsets of a small graph (n <= 20).
// `min_phi` is the best conductance among subsets with volume <= m (the
// feasible side of every cut appears there, so nothing is lost); `max_g` is
// the best internal-volume share over all proper nonempty subsets.  Ties
// resolve to the earliest subset in ascending bitmask order.
struct OracleResult {
  std::vector<VertexId> min_phi_set;
  Ratio min_phi{1, 1};
  std::vector<VertexId> max_g_set;
  Ratio max_g{0, 1};
};

inline OracleResult brute_force_optimum(const Graph& g) {
  const VertexId n = g.vertex_count();
  if (n > 20)
    throw std::invalid_argument("brute_force_optimum: refusing n > 20");
  if (n < 2 || g.edge_count() == 0)
    throw std::invalid_argument("brute_force_optimum: need an edge");
  const std::uint64_t m = g.edge_count();

  std::vector<std::uint32_t> adj(n, 0);
  std::vector<std::uint64_t> deg(n, 0);
  for (VertexId u = 0; u < n; ++u) {
    deg[u] = g.degree(u);
    for (VertexId v : g.neighbors(u)) adj[u] |= (1u << v);
  }

  bool have_phi = false, have_g = false;
  Ratio best_phi{1, 1}, best_g{0, 1};
  std::uint32_t best_phi_mask = 0, best_g_mask = 0;

  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    std::uint64_t vol = 0, internal = 0;
    for (std::uint32_t bits = mask; bits;) {
      std::uint32_t v = static_cast<std::uint32_t>(__builtin_ctz(bits));
      bits &= bits - 1;
      vol += deg[v];
      internal += static_cast<std::uint64_t>(__builtin_popcount(adj[v] & mask));
    }
    if (vol == 0) continue;  // isolated-only subset, measures undefined
    std::uint64_t cut = vol - internal;
    if (vol <= m) {
      Ratio phi{cut, vol};
      if (!have_phi || ratio_less(phi, best_phi)) {
        have_phi = true;
        best_phi = phi;
        best_phi_mask = mask;
      }
    }
    Ratio gs{internal, 2 * vol};
    if (!have_g || ratio_less(best_g, gs)) {
      have_g = true;
      best_g = gs;
      best_g_mask = mask;
    }
  }
  if (!have_phi || !have_g)
    throw std::logic_error("brute_force_optimum: no feasible subset");

  auto unpack = [](std::uint32_t mask) {
    std::vector<VertexId> out;
    for (std::uint32_t bits = mask; bits;) {
      out.push_back(static_cast<VertexId>(__builtin_ctz(bits)));
      bits &= bits - 1;
    }
    return out;
  };
  return {unpack(best_phi_mask), best_phi, unpack(best_g_mask), best_g};
}

// Cluster assignment per vertex; label values are arbitrary.
struct Partition {
  std::vector<std::uint32_t> labels;
};

// Normalized mutual information with square-root normalization and natural
// logarithms.  Degenerate marginals (either side a single cluster) score 0 by
// the 0/0 -> 0 convention.
inline double nmi(const Partition& a, const Partition& b) {
  if (a.labels.size() != b.labels.size())
    throw std::invalid_argument("nmi: partitions must cover the same vertices");
  const std::size_t n = a.labels.size();
  if (n == 0) throw std::invalid_argument("nmi: empty partitions");

  auto compact = [](const std::vector<std::uint32_t>& labels) {
    std::unordered_map<std::uint32_t, std::uint32_t> index;
    std::vector<std::uint32_t> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      auto [it, fresh] = index.emplace(labels[i],
                                       static_cast<std::uint32_t>(index.size()));
      (void)fresh;
      out[i] = it->second;
    }
    return std::pair{out, index.size()};
  };
  auto [la, ka] = compact(a.labels);
  auto [lb, kb] = compact(b.labels);

  std::vector<std::uint64_t> ca(ka, 0), cb(kb, 0);
  std::unordered_map<std::uint64_t, std::uint64_t> joint;
  joint.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    ++ca[la[i]];
    ++cb[lb[i]];
    ++joint[(static_cast<std::uint64_t>(la[i]) << 32) | lb[i]];
  }

  const double dn = static_cast<double>(n);
  auto entropy = [&](const std::vector<std::uint64_t>& counts) {
    double h = 0;
    for (std::uint64_t c : counts)
      if (c) h -= (c / dn) * std::log(c / dn);
    return h;
  };
  double ha = entropy(ca), hb = entropy(cb);
  if (ha == 0.0 || hb == 0.0) return 0.0;

  double info = 0;
  for (const auto& [key, nij] : joint) {
    double pij = nij / dn;
    double pa = ca[key >> 32] / dn;
    double pb = cb[key & 0xffffffffu] / dn;
    info += pij * std::log(pij / (pa * pb));
  }
  double value = info / std::sqrt(ha * hb);
  return std::min(1.0, std::max(0.0, value));  // clamp rounding dust
}

// Scores one detected cluster against ground-truth communities: pick the
// community with the largest Jaccard overlap (ties: earliest in the given
// order), then report the NMI between the two binary partitions
// {detected, rest} and {best community, rest}.
inline double score_detected_cluster(
    VertexId n, std::span<const VertexId> detected,
    const std::vector<std::vector<VertexId>>& communities) {
  if (detected.empty())
    throw std::invalid_argument("score_detected_cluster: empty cluster");
  if (communities.empty())
    throw std::invalid_argument("score_detected_cluster: no communities");
  std::vector<char> in_detected = members_mask(n, detected);

  double best_jaccard = -1.0;
  std::size_t best = 0;
  for (std::size_t c = 0; c < communities.size(); ++c) {
    std::uint64_t inter = 0;
    for (VertexId v : communities[c]) {
      if (v >= n)
        throw std::invalid_argument("score_detected_cluster: community id out of range");
      if (in_detected[v]) ++inter;
    }
    std::uint64_t uni = detected.size() + communities[c].size() - inter;
    double j = uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
    if (j > best_jaccard) {
      best_jaccard = j;
      best = c;
    }
  }

  Partition pa{std::vector<std::uint32_t>(n, 0)};
  Partition pb{std::vector<std::uint32_t>(n, 0)};
  for (VertexId v : detected) pa.labels[v] = 1;
  for (VertexId v : communities[best]) pb.labels[v] = 1;
  return nmi(pa, pb);
}

// Convenience overload for a full ground-truth partition.
inline double score_detected_cluster(std::span<const VertexId> detected,
                                     const Partition& truth) {
  std::map<std::uint32_t, std::vector<VertexId>> by_label;
  for (VertexId v = 0; v < truth.labels.size(); ++v)
    by_label[truth.labels[v]].push_back(v);
  std::vector<std::vector<VertexId>> communities;
  communities.reserve(by_label.size());
  for (auto& [label, members] : by_label)
    communities.push_back(std::move(members));
  return score_detected_cluster(static_cast<VertexId>(truth.labels.size()),
                                detected, communities);
}

// --- Ground-truth file readers ----------------------------------------------

// One community per line: whitespace-separated original vertex ids.
inline std::vector<std::vector<std::uint64_t>> read_community_sets(
    std::istream& in) {
  std::vector<std::vector<std::uint64_t>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream iss(line);
    std::string tok;
    std::vector<std::uint64_t> community;
    while (iss >> tok) {
      if (tok[0] == '#') break;
      community.push_back(detail::parse_vertex_token(tok, line_no));
    }
    if (!community.empty()) out.push_back(std::move(community));
  }
  if (out.empty())
    throw std::runtime_error("community file contains no communities");
  return out;
}

// One "vertex community" pair per line (LFR-style membership file).
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> read_label_pairs(
    std::istream& in) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream iss(line);
    std::string a, b, extra;
    if (!(iss >> a)) continue;
    if (a[0] == '#') continue;
    if (!(iss >> b))
      throw std::runtime_error("label file line " + std::to_string(line_no) +
                               ": expected 'vertex community'");
    if (iss >> extra)
      throw std::runtime_error("label file line " + std::to_string(line_no) +
                               ": unexpected trailing token '" + extra + "'");
    out.emplace_back(detail::parse_vertex_token(a, line_no),
                     detail::parse_vertex_token(b, line_no));
  }
  if (out.empty()) throw std::runtime_error("label file contains no pairs");
  return out;
}

// Maps original-id community sets onto a labeled graph's dense ids.  Ids
// absent from the graph (e.g. outside the retained component) are dropped;
// communities left empty disappear.
inline std::vector<std::vector<VertexId>> communities_to_dense(
    const RelabelMap& ids,
    const std::vector<std::vector<std::uint64_t>>& communities) {
  std::vector<std::vector<VertexId>> out;
  for (const auto& community : communities) {
    std::vector<VertexId> dense;
    for (std::uint64_t orig : community) {
      auto it = ids.to_dense.find(orig);
      if (it != ids.to_dense.end()) dense.push_back(it->second);
    }
    if (!dense.empty()) {
      std::sort(dense.begin(), dense.end());
      dense.erase(std::unique(dense.begin(), dense.end()), dense.end());
      out.push_back(std::move(dense));
    }
  }
  if (out.empty())
    throw std::runtime_error("no ground-truth community intersects the graph");
  return out;
}

// Builds a dense partition from "vertex community" pairs; every graph vertex
// must be labeled exactly once.
inline Partition partition_from_label_pairs(
    const RelabelMap& ids,
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs) {
  constexpr std::uint32_t kUnset = 0xffffffffu;
  Partition part{std::vector<std::uint32_t>(ids.to_original.size(), kUnset)};
  for (auto [orig, label] : pairs) {
    auto it = ids.to_dense.find(orig);
    if (it == ids.to_dense.end()) continue;  // vertex outside retained graph
    if (part.labels[it->second] != kUnset)
      throw std::runtime_error("vertex " + std::to_string(orig) +
                               " labeled twice");
    if (label > 0xfffffffeull)
      throw std::runtime_error("community id out of range");
    part.labels[it->second] = static_cast<std::uint32_t>(label);
  }
  for (std::size_t v = 0; v < part.labels.size(); ++v)
    if (part.labels[v] == kUnset)
      throw std::runtime_error("graph vertex with original id " +
                               std::to_string(ids.to_original[v]) +
                               " has no community label");
  return part;
}

}  // namespace pcon
