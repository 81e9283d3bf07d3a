#pragma once

// Test-side oracles, implemented independently of the library under test:
// scalar fixed-point bisections, a Jacobi eigensolver, and brute-force
// graph reachability. Everything here is deliberately naive.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <random>
#include <vector>

namespace oracle {

// Does the scalar iteration g_0 = 1, g <- z e^{c(g-1)} stay bounded?
inline bool scalar_converges(double c, double z, long iters = 200000, double tol = 1e-14) {
  double g = 1.0;
  for (long i = 0; i < iters; ++i) {
    const double next = z * std::exp(c * (g - 1.0));
    if (!std::isfinite(next) || next > 1e9) return false;
    if (std::abs(next - g) < tol) return true;
    g = next;
  }
  // bounded but not settled: treat as convergent only if clearly below blowup
  return g < 1e3;
}

// Radius of the scalar kernel by plain bisection on the iteration above.
inline double scalar_r_bisect(double c, double tol = 1e-9) {
  double lo = 1.0, hi = 64.0;
  if (scalar_converges(c, hi)) return hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (scalar_converges(c, mid))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Fixed-point value of the scalar generating function at z < r.
inline double scalar_gf_value(double c, double z, long iters = 1000000, double tol = 1e-14) {
  double g = 1.0;
  for (long i = 0; i < iters; ++i) {
    const double next = z * std::exp(c * (g - 1.0));
    if (std::abs(next - g) < tol) return next;
    g = next;
  }
  return g;
}

// Positive root of rho = 1 - e^{-c rho} by bisection; c > 1 assumed.
inline double scalar_survival_root(double c, double tol = 1e-12) {
  double lo = tol, hi = 1.0;
  auto f = [&](double r) { return r - 1.0 + std::exp(-c * r); };
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) <= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Upper root of g = e^{c(g-1)} for c < 1 (the root above 1/c), by bisection
// on h(g) = g - e^{c(g-1)}, which is positive at 1/c and negative for large g.
inline double scalar_upper_root(double c, double tol = 1e-12) {
  double lo = 1.0 / c, hi = 2.0 / c;
  auto h = [&](double g) { return g - std::exp(c * (g - 1.0)); };
  while (h(hi) > 0.0) hi *= 2.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (h(mid) >= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Largest eigenvalue of a small symmetric matrix by cyclic Jacobi rotations.
inline double jacobi_max_eigenvalue(std::vector<double> a, std::size_t n) {
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p * n + q] * a[p * n + q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cs = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * cs;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k * n + p], akq = a[k * n + q];
          a[k * n + p] = cs * akp - sn * akq;
          a[k * n + q] = sn * akp + cs * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p * n + k], aqk = a[q * n + k];
          a[p * n + k] = cs * apk - sn * aqk;
          a[q * n + k] = sn * apk + cs * aqk;
        }
      }
  }
  double best = a[0];
  for (std::size_t i = 1; i < n; ++i) best = std::max(best, a[i * n + i]);
  return best;
}

// Component sizes by breadth-first reachability over an adjacency list.
inline std::vector<std::uint64_t> brute_component_sizes(
    std::uint64_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<bool> seen(n, false);
  std::vector<std::uint64_t> sizes;
  for (std::uint64_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::uint64_t count = 0;
    std::queue<std::uint32_t> q;
    q.push(static_cast<std::uint32_t>(s));
    seen[s] = true;
    while (!q.empty()) {
      const std::uint32_t v = q.front();
      q.pop();
      ++count;
      for (std::uint32_t w : adj[v])
        if (!seen[w]) {
          seen[w] = true;
          q.push(w);
        }
    }
    sizes.push_back(count);
  }
  return sizes;
}

// Per-vertex component size, brute force.
inline std::vector<std::uint64_t> brute_component_of_vertex(
    std::uint64_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<std::uint64_t> size_of(n, 0);
  std::vector<bool> seen(n, false);
  for (std::uint64_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::uint32_t> comp;
    std::queue<std::uint32_t> q;
    q.push(static_cast<std::uint32_t>(s));
    seen[s] = true;
    while (!q.empty()) {
      const std::uint32_t v = q.front();
      q.pop();
      comp.push_back(v);
      for (std::uint32_t w : adj[v])
        if (!seen[w]) {
          seen[w] = true;
          q.push(w);
        }
    }
    for (std::uint32_t v : comp) size_of[v] = comp.size();
  }
  return size_of;
}

struct RandomKernelData {
  std::vector<int> labels;
  std::vector<double> weights;
  std::vector<double> matrix;  // row-major, symmetric nonnegative
};

// Random symmetric nonnegative kernel over a random type space, rescaled so
// that the Jacobi-verified norm of sqrt(mu) kappa sqrt(mu) hits `target_norm`.
inline RandomKernelData random_kernel(std::mt19937_64& rng, std::size_t dim,
                                      double target_norm) {
  RandomKernelData out;
  std::uniform_real_distribution<double> uw(0.2, 1.0), uk(0.0, 1.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    out.labels.push_back(static_cast<int>(i));
    out.weights.push_back(uw(rng));
    sum += out.weights.back();
  }
  for (double& w : out.weights) w /= sum;
  // fix last-ulp drift so the sum is 1 to strict tolerance
  double s2 = 0.0;
  for (std::size_t i = 0; i + 1 < dim; ++i) s2 += out.weights[i];
  out.weights.back() = 1.0 - s2;

  out.matrix.assign(dim * dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j) {
      const double v = uk(rng);
      out.matrix[i * dim + j] = v;
      out.matrix[j * dim + i] = v;
    }
  std::vector<double> m(dim * dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      m[i * dim + j] =
          std::sqrt(out.weights[i]) * out.matrix[i * dim + j] * std::sqrt(out.weights[j]);
  const double norm = jacobi_max_eigenvalue(m, dim);
  const double scale = norm > 0.0 ? target_norm / norm : 1.0;
  for (double& v : out.matrix) v *= scale;
  // keep exact symmetry after scaling
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < i; ++j) out.matrix[i * dim + j] = out.matrix[j * dim + i];
  return out;
}

namespace frozen {
// 30-digit reference values computed with an independent high-precision script.
inline constexpr double kR05 = 1.21306131942526684720759906998;       // e^{-1/2}/0.5
inline constexpr double kLogR05 = 0.193147180559945309417232121458;   // ln of the above
inline constexpr double kR09 = 1.00537490892884397018249895494;       // e^{-0.1}/0.9
inline constexpr double kR095 = 1.00129413105338316746465823135;      // e^{-0.05}/0.95
inline constexpr double kH05Z11 = 1.24064916341505485741577770693;    // h(c=0.5, z=1.1)
inline constexpr double kRho2 = 0.796812130020020046161520937938;     // rho for c=2
inline constexpr double kGStar05 = 3.51286241725233935396547523322;   // upper root, c=0.5
inline constexpr double kRate09 = 0.00536051565782630122750098083931; // 0.9-1-ln 0.9
}  // namespace frozen

}  // namespace oracle
