#pragma once
// Undirected simple graph in CSR form, plus edge-list ingestion.
//
// External vertex ids (arbitrary 64-bit integers, as found in SNAP-style
// files) are relabeled to dense 0..n-1 in ascending original-id order and the
// bijection is kept alongside the graph.  Self-loops are dropped and parallel
// edges collapsed during construction, so degree(v) == neighbors(v).size()
// and every adjacency list is strictly ascending.

#include <algorithm>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace pcon {

using VertexId = std::uint32_t;

class Graph {
 public:
  Graph() = default;

  // Builds CSR from an unordered edge list over vertices 0..n-1.
  static Graph from_edges(VertexId n,
                          std::vector<std::pair<VertexId, VertexId>> edges) {
    std::vector<std::pair<VertexId, VertexId>> kept;
    kept.reserve(edges.size());
    for (auto [u, v] : edges) {
      if (u >= n || v >= n)
        throw std::invalid_argument("from_edges: endpoint out of range");
      if (u == v) continue;  // self-loop
      kept.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());

    Graph g;
    g.n_ = n;
    g.m_ = kept.size();
    g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (auto [u, v] : kept) {
      ++g.offsets_[static_cast<std::size_t>(u) + 1];
      ++g.offsets_[static_cast<std::size_t>(v) + 1];
    }
    for (std::size_t i = 1; i < g.offsets_.size(); ++i)
      g.offsets_[i] += g.offsets_[i - 1];
    g.targets_.resize(2 * g.m_);
    std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    // `kept` is sorted (min, max) pairs, so each adjacency list comes out
    // ascending: for vertex u first the endpoints w < u, then the v > u.
    for (auto [u, v] : kept) {
      g.targets_[cursor[u]++] = v;
      g.targets_[cursor[v]++] = u;
    }
    return g;
  }

  VertexId vertex_count() const { return n_; }
  std::uint64_t edge_count() const { return m_; }
  // Sum of all degrees == 2m.
  std::uint64_t volume() const { return 2 * m_; }

  std::uint64_t degree(VertexId v) const {
    check(v);
    return offsets_[static_cast<std::size_t>(v) + 1] - offsets_[v];
  }

  std::span<const VertexId> neighbors(VertexId v) const {
    check(v);
    return {targets_.data() + offsets_[v],
            targets_.data() + offsets_[static_cast<std::size_t>(v) + 1]};
  }

  // Raw CSR views, used by the binary cache and by invariant tests.
  std::span<const std::uint64_t> raw_offsets() const { return offsets_; }
  std::span<const VertexId> raw_targets() const { return targets_; }

 private:
  void check(VertexId v) const {
    if (v >= n_) throw std::out_of_range("vertex id out of range");
  }

  VertexId n_ = 0;
  std::uint64_t m_ = 0;
  std::vector<std::uint64_t> offsets_{0};
  std::vector<VertexId> targets_;
};

// Dense-id <-> original-id bijection kept with every ingested graph.
struct RelabelMap {
  std::vector<std::uint64_t> to_original;                // dense -> original
  std::unordered_map<std::uint64_t, VertexId> to_dense;  // original -> dense

  std::uint64_t original(VertexId v) const { return to_original.at(v); }
  VertexId dense(std::uint64_t orig) const {
    auto it = to_dense.find(orig);
    if (it == to_dense.end())
      throw std::invalid_argument("unknown original vertex id " +
                                  std::to_string(orig));
    return it->second;
  }

  static RelabelMap identity(VertexId n) {
    RelabelMap map;
    map.to_original.resize(n);
    map.to_dense.reserve(n);
    for (VertexId v = 0; v < n; ++v) {
      map.to_original[v] = v;
      map.to_dense.emplace(v, v);
    }
    return map;
  }
};

struct LabeledGraph {
  Graph graph;
  RelabelMap ids;
};

namespace detail {

inline std::uint64_t parse_vertex_token(const std::string& tok,
                                        std::size_t line_no) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    throw std::runtime_error("edge list line " + std::to_string(line_no) +
                             ": bad vertex id '" + tok + "'");
  try {
    return std::stoull(tok);
  } catch (const std::out_of_range&) {
    throw std::runtime_error("edge list line " + std::to_string(line_no) +
                             ": vertex id out of range '" + tok + "'");
  }
}

}  // namespace detail

// Reads a whitespace-separated edge list, one "u v" pair per line.  Lines
// that are blank or start with '#' are skipped.  Malformed lines raise
// std::runtime_error naming the line number; so does input with no usable
// (non-self-loop) edge.
inline LabeledGraph parse_edge_list(std::istream& in) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream iss(line);
    std::string a, b, extra;
    if (!(iss >> a)) continue;      // blank line
    if (a[0] == '#') continue;      // comment line
    if (!(iss >> b))
      throw std::runtime_error("edge list line " + std::to_string(line_no) +
                               ": expected two vertex ids");
    if (iss >> extra)
      throw std::runtime_error("edge list line " + std::to_string(line_no) +
                               ": unexpected trailing token '" + extra + "'");
    std::uint64_t u = detail::parse_vertex_token(a, line_no);
    std::uint64_t v = detail::parse_vertex_token(b, line_no);
    if (u == v) continue;  // self-loops never register a vertex
    raw.emplace_back(u, v);
  }
  if (raw.empty())
    throw std::runtime_error("edge list contains no usable edges");

  std::vector<std::uint64_t> ids;
  ids.reserve(raw.size() * 2);
  for (auto [u, v] : raw) {
    ids.push_back(u);
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.size() > std::numeric_limits<VertexId>::max())
    throw std::runtime_error("edge list has too many distinct vertices");

  RelabelMap map;
  map.to_original = ids;
  map.to_dense.reserve(ids.size());
  for (VertexId i = 0; i < static_cast<VertexId>(ids.size()); ++i)
    map.to_dense.emplace(ids[i], i);

  std::vector<std::pair<VertexId, VertexId>> dense;
  dense.reserve(raw.size());
  for (auto [u, v] : raw)
    dense.emplace_back(map.to_dense.at(u), map.to_dense.at(v));
  return {Graph::from_edges(static_cast<VertexId>(ids.size()), std::move(dense)),
          std::move(map)};
}

// Number of u's neighbors inside the member set.  `in_set` is a per-vertex
// byte mask over dense ids; u itself must be a member.
inline std::uint64_t induced_degree(const Graph& g,
                                    const std::vector<char>& in_set,
                                    VertexId u) {
  if (in_set.size() != g.vertex_count())
    throw std::invalid_argument("induced_degree: membership size mismatch");
  if (u >= g.vertex_count() || !in_set[u])
    throw std::invalid_argument("induced_degree: u is not a member");
  std::uint64_t d = 0;
  for (VertexId v : g.neighbors(u))
    if (in_set[v]) ++d;
  return d;
}

namespace detail {

// Component label per vertex via iterative BFS; returns component count.
inline std::uint32_t label_components(const Graph& g,
                                      std::vector<std::uint32_t>& comp) {
  const VertexId n = g.vertex_count();
  comp.assign(n, std::numeric_limits<std::uint32_t>::max());
  std::uint32_t count = 0;
  std::vector<VertexId> stack;
  for (VertexId s = 0; s < n; ++s) {
    if (comp[s] != std::numeric_limits<std::uint32_t>::max()) continue;
    comp[s] = count;
    stack.push_back(s);
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      for (VertexId v : g.neighbors(u)) {
        if (comp[v] == std::numeric_limits<std::uint32_t>::max()) {
          comp[v] = count;
          stack.push_back(v);
        }
      }
    }
    ++count;
  }
  return count;
}

}  // namespace detail

inline bool is_connected(const Graph& g) {
  if (g.vertex_count() == 0) return false;
  std::vector<std::uint32_t> comp;
  return detail::label_components(g, comp) == 1;
}

// Induced subgraph on the largest connected component (by vertex count; ties
// broken by the smallest original id in the component).  The relabel map of
// the result composes with the input's, i.e. it still maps to the file's
// original ids.
inline LabeledGraph largest_component(const LabeledGraph& lg) {
  const Graph& g = lg.graph;
  const VertexId n = g.vertex_count();
  if (n == 0) throw std::invalid_argument("largest_component: empty graph");

  std::vector<std::uint32_t> comp;
  std::uint32_t count = detail::label_components(g, comp);

  std::vector<std::uint64_t> size(count, 0);
  for (VertexId v = 0; v < n; ++v) ++size[comp[v]];
  // Dense ids ascend with original ids, so the first vertex seen for a
  // component carries its minimum original id; BFS seeds scan ascending, so
  // component labels are already ordered by that minimum.  Largest size wins,
  // earlier label wins ties.
  std::uint32_t best = 0;
  for (std::uint32_t c = 1; c < count; ++c)
    if (size[c] > size[best]) best = c;

  std::vector<VertexId> keep;
  keep.reserve(size[best]);
  for (VertexId v = 0; v < n; ++v)
    if (comp[v] == best) keep.push_back(v);

  std::vector<VertexId> dense_of_old(n, std::numeric_limits<VertexId>::max());
  for (VertexId i = 0; i < static_cast<VertexId>(keep.size()); ++i)
    dense_of_old[keep[i]] = i;

  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId u : keep)
    for (VertexId v : g.neighbors(u))
      if (u < v) edges.emplace_back(dense_of_old[u], dense_of_old[v]);

  RelabelMap map;
  map.to_original.reserve(keep.size());
  map.to_dense.reserve(keep.size());
  for (VertexId i = 0; i < static_cast<VertexId>(keep.size()); ++i) {
    std::uint64_t orig = lg.ids.to_original[keep[i]];
    map.to_original.push_back(orig);
    map.to_dense.emplace(orig, i);
  }
  return {Graph::from_edges(static_cast<VertexId>(keep.size()),
                            std::move(edges)),
          std::move(map)};
}

// Writes the dense-id edge list, one "u v" (u < v) per line, ascending.
// parse(write(g)) reproduces g exactly.
inline void write_edge_list(const Graph& g, std::ostream& out) {
  for (VertexId u = 0; u < g.vertex_count(); ++u)
    for (VertexId v : g.neighbors(u))
      if (u < v) out << u << ' ' << v << '\n';
}

// --- Binary cache -----------------------------------------------------------
//
// Layout (native little-endian fields, no padding):
//   8 bytes  magic "PCGCACHE"
//   u32      version (currently 1)
//   u64      n, u64 m
//   (n+1) x u64   CSR offsets
//   2m    x u32   CSR targets
//   n     x u64   original ids (dense order)

inline constexpr char kCacheMagic[8] = {'P', 'C', 'G', 'C', 'A', 'C', 'H', 'E'};
inline constexpr std::uint32_t kCacheVersion = 1;

inline void save_cache(const LabeledGraph& lg, std::ostream& out) {
  const Graph& g = lg.graph;
  auto put = [&](const void* p, std::size_t bytes) {
    out.write(static_cast<const char*>(p), static_cast<std::streamsize>(bytes));
  };
  put(kCacheMagic, sizeof kCacheMagic);
  put(&kCacheVersion, sizeof kCacheVersion);
  std::uint64_t n = g.vertex_count(), m = g.edge_count();
  put(&n, sizeof n);
  put(&m, sizeof m);
  put(g.raw_offsets().data(), g.raw_offsets().size_bytes());
  put(g.raw_targets().data(), g.raw_targets().size_bytes());
  put(lg.ids.to_original.data(), lg.ids.to_original.size() * sizeof(std::uint64_t));
  if (!out) throw std::runtime_error("cache write failed");
}

inline LabeledGraph load_cache(std::istream& in) {
  auto get = [&](void* p, std::size_t bytes) {
    in.read(static_cast<char*>(p), static_cast<std::streamsize>(bytes));
    if (!in) throw std::runtime_error("cache file truncated or unreadable");
  };
  char magic[8];
  get(magic, sizeof magic);
  if (!std::equal(magic, magic + 8, kCacheMagic))
    throw std::runtime_error("not a graph cache file (bad magic)");
  std::uint32_t version = 0;
  get(&version, sizeof version);
  if (version != kCacheVersion)
    throw std::runtime_error("unsupported cache version " +
                             std::to_string(version));
  std::uint64_t n = 0, m = 0;
  get(&n, sizeof n);
  get(&m, sizeof m);
  if (n > std::numeric_limits<VertexId>::max())
    throw std::runtime_error("cache vertex count out of range");
  std::vector<std::uint64_t> offsets(n + 1);
  get(offsets.data(), offsets.size() * sizeof(std::uint64_t));
  std::vector<VertexId> targets(2 * m);
  get(targets.data(), targets.size() * sizeof(VertexId));
  std::vector<std::uint64_t> originals(n);
  get(originals.data(), originals.size() * sizeof(std::uint64_t));
  if (offsets.front() != 0 || offsets.back() != 2 * m)
    throw std::runtime_error("cache offsets are inconsistent");

  // Rebuild through from_edges so every construction invariant is re-checked.
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(m);
  for (VertexId u = 0; u < static_cast<VertexId>(n); ++u) {
    if (offsets[u] > offsets[u + 1] || offsets[u + 1] > 2 * m)
      throw std::runtime_error("cache offsets are inconsistent");
    for (std::uint64_t i = offsets[u]; i < offsets[u + 1]; ++i) {
      if (targets[i] >= n) throw std::runtime_error("cache target out of range");
      if (u < targets[i]) edges.emplace_back(u, targets[i]);
    }
  }
  Graph g = Graph::from_edges(static_cast<VertexId>(n), std::move(edges));
  if (g.edge_count() != m)
    throw std::runtime_error("cache edge count mismatch");

  RelabelMap map;
  map.to_original = std::move(originals);
  map.to_dense.reserve(n);
  for (VertexId v = 0; v < static_cast<VertexId>(n); ++v)
    map.to_dense.emplace(map.to_original[v], v);
  if (map.to_dense.size() != n)
    throw std::runtime_error("cache original ids are not distinct");
  return {std::move(g), std::move(map)};
}

}  // namespace pcon
