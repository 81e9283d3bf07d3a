#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace irg {

// Solve A x = b for a small dense row-major matrix via LU with partial
// pivoting. Throws on (numerical) singularity. Type counts are small, so no
// attempt at blocking or sparsity.
inline std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b) {
  const std::size_t n = b.size();
  if (a.size() != n * n) throw std::invalid_argument("solve_dense: shape mismatch");
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    double best = std::abs(a[perm[col] * n + col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double v = std::abs(a[perm[r] * n + col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0.0 || !std::isfinite(best))
      throw std::runtime_error("solve_dense: singular matrix");
    std::swap(perm[col], perm[piv]);
    const double diag = a[perm[col] * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double factor = a[perm[r] * n + col] / diag;
      a[perm[r] * n + col] = factor;
      for (std::size_t c = col + 1; c < n; ++c)
        a[perm[r] * n + c] -= factor * a[perm[col] * n + c];
      b[perm[r]] -= factor * b[perm[col]];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[perm[i]];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[perm[i] * n + c] * x[c];
    x[i] = s / a[perm[i] * n + i];
  }
  return x;
}

}  // namespace irg
