#pragma once
// Second eigenvector of the normalized Laplacian via deflated power
// iteration, plus the classic sorted sweep over its coordinates.
//
// The iteration runs on the half-lazy walk operator
//   M = (I + D^{-1/2} A D^{-1/2}) / 2,
// whose eigenvalues are 1 - lambda/2 for the Laplacian's lambda, all in
// [0, 1]: shifting into the nonnegative range makes power iteration converge
// to the smallest Laplacian eigenvalues instead of oscillating between the
// spectrum's two ends.  The known top eigenvector (sqrt-degrees) is projected
// out every step, so the iterate settles on the second eigenvector.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pcon/graph.hpp"
#include "pcon/peel.hpp"
#include "pcon/rng.hpp"

namespace pcon {

struct SpectralVector {
  std::vector<double> values;    // sweep coordinates, D^{-1/2} * iterate
  double lambda2_estimate = 0.0; // in [0, 2]
  std::uint32_t iterations = 0;
  double residual = 0.0;         // ||M z - rho z||_2 at exit
};

inline SpectralVector approx_fiedler(const Graph& g, double tol = 1e-7,
                                     std::uint32_t max_iters = 5000,
                                     std::uint64_t seed = 1) {
  const VertexId n = g.vertex_count();
  if (n < 2) throw std::invalid_argument("approx_fiedler: need >= 2 vertices");
  if (!(tol > 0)) throw std::invalid_argument("approx_fiedler: tol must be > 0");
  if (max_iters == 0)
    throw std::invalid_argument("approx_fiedler: max_iters must be >= 1");
  if (!is_connected(g))
    throw std::invalid_argument("approx_fiedler: graph must be connected");

  std::vector<double> inv_sqrt_d(n), top(n);
  const double total = static_cast<double>(2 * g.edge_count());
  for (VertexId v = 0; v < n; ++v) {
    double d = static_cast<double>(g.degree(v));  // >= 1: connected, n >= 2
    inv_sqrt_d[v] = 1.0 / std::sqrt(d);
    top[v] = std::sqrt(d / total);  // unit top eigenvector of M
  }

  auto dot = [n](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (VertexId v = 0; v < n; ++v) s += a[v] * b[v];
    return s;
  };
  auto deflate = [&](std::vector<double>& x) {
    double c = dot(x, top);
    for (VertexId v = 0; v < n; ++v) x[v] -= c * top[v];
  };
  auto norm = [&](const std::vector<double>& x) { return std::sqrt(dot(x, x)); };
  auto apply = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (VertexId v = 0; v < n; ++v) {
      double acc = 0;
      for (VertexId u : g.neighbors(v)) acc += x[u] * inv_sqrt_d[u];
      y[v] = 0.5 * (x[v] + acc * inv_sqrt_d[v]);
    }
  };

  SplitMix64 rng(seed);
  std::vector<double> z(n), y(n);
  auto reinit = [&] {
    while (true) {
      for (VertexId v = 0; v < n; ++v) z[v] = rng.next_double() - 0.5;
      deflate(z);
      double nz = norm(z);
      if (nz > 1e-12) {
        for (VertexId v = 0; v < n; ++v) z[v] /= nz;
        return;
      }
    }
  };
  reinit();

  SpectralVector out;
  for (std::uint32_t it = 1; it <= max_iters; ++it) {
    out.iterations = it;
    apply(z, y);
    deflate(y);
    double ny = norm(y);
    if (ny < 1e-300) {  // iterate fell in the kernel; restart from fresh noise
      reinit();
      continue;
    }
    for (VertexId v = 0; v < n; ++v) y[v] /= ny;
    double align = std::min(1.0, std::abs(dot(y, z)));
    z.swap(y);
    if (std::acos(align) < tol) break;
  }

  apply(z, y);
  double rho = dot(z, y);
  double res2 = 0;
  for (VertexId v = 0; v < n; ++v) {
    double r = y[v] - rho * z[v];
    res2 += r * r;
  }
  out.residual = std::sqrt(res2);
  out.lambda2_estimate = std::min(2.0, std::max(0.0, 2.0 * (1.0 - rho)));
  out.values.resize(n);
  for (VertexId v = 0; v < n; ++v) out.values[v] = z[v] * inv_sqrt_d[v];
  return out;
}

// Sorts vertices by eigenvector coordinate (ascending, ids break ties) and
// takes the best prefix cut.  Both sign choices of the eigenvector yield the
// same cuts, since a prefix under one sign is a complement suffix under the
// other and cuts score both sides symmetrically.
inline ClusterResult spectral_sweep(const Graph& g, const SpectralVector& sv) {
  const VertexId n = g.vertex_count();
  if (sv.values.size() != n)
    throw std::invalid_argument("spectral_sweep: coordinate/vertex mismatch");
  std::vector<VertexId> order(n);
  for (VertexId v = 0; v < n; ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    if (sv.values[a] != sv.values[b]) return sv.values[a] < sv.values[b];
    return a < b;
  });
  ClusterResult res = ordered_cut_sweep(g, order);
  res.method = "asc_sweep";
  return res;
}

}  // namespace pcon
