#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "irg/kernel.hpp"
#include "irg/linalg.hpp"
#include "irg/measure_transform.hpp"

namespace irg {

struct IterationConfig {
  double tol = 1e-12;              // sup-norm convergence threshold
  long max_iter = 1000000;
  double diverge_threshold = 1e12;
};

enum class GFStatus { Converged, Diverged, Undetermined };

inline const char* to_string(GFStatus s) {
  switch (s) {
    case GFStatus::Converged: return "converged";
    case GFStatus::Diverged: return "diverged";
    case GFStatus::Undetermined: return "undetermined";
  }
  return "?";
}

struct GFOutcome {
  GFStatus status = GFStatus::Undetermined;
  std::vector<double> h;   // present iff Converged
  long iterations = 0;
  double residual = 0.0;   // sup-norm of h - Phi_z[h]
};

// One application of Phi_{z,kappa}: f -> z * exp(T_kappa[f - 1]).
inline std::vector<double> phi_step(const Kernel& k, double z, const std::vector<double>& f) {
  const std::size_t d = k.dim();
  std::vector<double> shifted(d);
  for (std::size_t i = 0; i < d; ++i) shifted[i] = f[i] - 1.0;
  std::vector<double> t = apply_T(k, shifted);
  for (std::size_t i = 0; i < d; ++i) t[i] = z * std::exp(t[i]);
  return t;
}

namespace detail {

inline bool escaped(const std::vector<double>& f, double threshold) {
  for (double v : f)
    if (!(v < threshold) || !std::isfinite(v)) return true;
  return false;
}

inline double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Phi is monotone and the iteration starts at its minimum; a decreasing step
// beyond rounding slack means a broken kernel, not slow convergence.
inline void check_nondecreasing(const std::vector<double>& prev, const std::vector<double>& next) {
  for (std::size_t i = 0; i < prev.size(); ++i)
    if (next[i] < prev[i] * (1.0 - 1e-13) - 1e-13)
      throw std::logic_error("progeny_gf: iterates not nondecreasing");
}

}  // namespace detail

// Monotone iteration f_0 = 1, f_{k+1} = Phi_{z,kappa}[f_k]; the limit is the
// minimal solution f >= 1 when one exists, and the iterates escape past any
// fixed point otherwise.
inline GFOutcome progeny_gf(const Kernel& k, double z, const IterationConfig& cfg = {}) {
  if (z < 1.0) throw ConfigError("progeny_gf requires z >= 1");
  GFOutcome out;
  std::vector<double> f(k.dim(), 1.0);
  for (long it = 1; it <= cfg.max_iter; ++it) {
    std::vector<double> g = phi_step(k, z, f);
    out.iterations = it;
    if (detail::escaped(g, cfg.diverge_threshold)) {
      out.status = GFStatus::Diverged;
      return out;
    }
    detail::check_nondecreasing(f, g);
    const double step = detail::sup_diff(f, g);
    f = std::move(g);
    if (step < cfg.tol) {
      // confirm against the map itself, not just successive iterates
      std::vector<double> g2 = phi_step(k, z, f);
      const double residual = detail::sup_diff(f, g2);
      if (residual <= cfg.tol) {
        out.status = GFStatus::Converged;
        out.h = std::move(f);
        out.residual = residual;
        return out;
      }
      f = std::move(g2);
      out.iterations = ++it;
    }
  }
  out.status = GFStatus::Undetermined;
  return out;
}

struct RKappaEstimate {
  double lo = 1.0;   // largest z certified convergent
  double hi = 1.0;   // smallest z observed divergent or undetermined
  long undetermined_hits = 0;
  bool saturated = false;  // no divergence found below z = 64

  double mid() const { return 0.5 * (lo + hi); }
};

inline constexpr double kRKappaZCap = 64.0;

// Bisection for r_kappa: lo stays certified-convergent, hi is the smallest z
// seen to diverge (or time out, which counts conservatively toward hi).
inline RKappaEstimate r_kappa(const Kernel& k, const IterationConfig& cfg = {},
                              double bis_tol = 1e-7) {
  if (!(bis_tol > 0.0)) throw ConfigError("r_kappa requires bis_tol > 0");
  RKappaEstimate est;
  est.lo = 1.0;  // Phi_{1,kappa}[1] = 1 exactly

  double hi = 0.0;
  double delta = 1e-3;
  for (;;) {
    const double z = 1.0 + delta;
    if (z > kRKappaZCap) {
      est.saturated = true;
      est.hi = kRKappaZCap;
      return est;
    }
    GFOutcome out = progeny_gf(k, z, cfg);
    if (out.status == GFStatus::Converged) {
      est.lo = z;
      delta *= 2.0;
    } else {
      if (out.status == GFStatus::Undetermined) ++est.undetermined_hits;
      hi = z;
      break;
    }
  }
  while (hi - est.lo > bis_tol) {
    const double mid = 0.5 * (est.lo + hi);
    GFOutcome out = progeny_gf(k, mid, cfg);
    if (out.status == GFStatus::Converged) {
      est.lo = mid;
    } else {
      if (out.status == GFStatus::Undetermined) ++est.undetermined_hits;
      hi = mid;
    }
  }
  est.hi = hi;
  return est;
}

// Radius of the scalar kernel kappa = c: tangency of g = z e^{c(g-1)} gives
// g = 1/c and z = e^{c-1}/c for c <= 1; past the critical point the radius
// collapses to 1. The scalar oracle used throughout the tests.
inline double scalar_r_closed_form(double c) {
  if (!(c > 0.0)) throw ConfigError("scalar_r_closed_form requires c > 0");
  if (c > 1.0) return 1.0;
  return std::exp(c - 1.0) / c;
}

struct SurvivalResult {
  std::vector<double> rho;     // per-type survival probability
  double rho_aggregate = 0.0;  // sum rho(x) mu(x)
  double residual = 0.0;
  long iterations = 0;
  bool converged = false;
};

// Iterate f_0 = 1, f_{k+1} = 1 - exp(-T_kappa[f_k]); starting at the upper
// barrier selects the maximum solution of f = 1 - e^{-Tf}.
inline SurvivalResult survival_prob(const Kernel& k, const IterationConfig& cfg = {}) {
  const std::size_t d = k.dim();
  SurvivalResult res;
  std::vector<double> f(d, 1.0);
  for (long it = 1; it <= cfg.max_iter; ++it) {
    std::vector<double> t = apply_T(k, f);
    std::vector<double> g(d);
    for (std::size_t i = 0; i < d; ++i) g[i] = 1.0 - std::exp(-t[i]);
    for (std::size_t i = 0; i < d; ++i)
      if (g[i] > f[i] * (1.0 + 1e-13) + 1e-13)
        throw std::logic_error("survival_prob: iterates not nonincreasing");
    const double step = detail::sup_diff(f, g);
    f = std::move(g);
    res.iterations = it;
    if (step < cfg.tol) {
      res.converged = true;
      res.residual = step;
      break;
    }
    res.residual = step;
  }
  res.rho = f;
  res.rho_aggregate = 0.0;
  for (std::size_t i = 0; i < d; ++i) res.rho_aggregate += f[i] * k.space().weight(i);
  return res;
}

struct NegativeSolution {
  std::vector<double> f;  // entrywise < 0
  double residual = 0.0;  // sup-norm of f - (1 - e^{-Tf})
};

inline constexpr double kNegativeResidualTol = 1e-10;
inline constexpr double kNegativeMaxEntry = -1e-6;

namespace detail {

inline std::vector<double> survival_residual(const Kernel& k, const std::vector<double>& f) {
  std::vector<double> t = apply_T(k, f);
  std::vector<double> r(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) r[i] = f[i] - 1.0 + std::exp(-t[i]);
  return r;
}

inline double sup_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace detail

// Search for a strictly negative solution of f = 1 - e^{-T_kappa[f]} by
// damped Newton from a grid of flat seeds. Failure of every seed is reported
// as absence, which is evidence, not proof.
inline std::optional<NegativeSolution> negative_solution(const Kernel& k,
                                                         const IterationConfig& cfg = {}) {
  const std::size_t d = k.dim();
  const long newton_cap = std::min<long>(cfg.max_iter, 200);

  for (double s : {0.1, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
    std::vector<double> f(d, -s);
    bool seed_failed = false;
    for (long it = 0; it < newton_cap && !seed_failed; ++it) {
      std::vector<double> F = detail::survival_residual(k, f);
      const double fn = detail::sup_abs(F);
      if (fn <= kNegativeResidualTol) break;

      // J = I - diag(e^{-Tf}) K, K(i,j) = kappa(i,j) mu(j)
      std::vector<double> t = apply_T(k, f);
      std::vector<double> jac(d * d);
      for (std::size_t i = 0; i < d; ++i) {
        const double e = std::exp(-t[i]);
        for (std::size_t j = 0; j < d; ++j) {
          jac[i * d + j] = (i == j ? 1.0 : 0.0) - e * k.at(i, j) * k.space().weight(j);
        }
      }
      std::vector<double> rhs(d);
      for (std::size_t i = 0; i < d; ++i) rhs[i] = -F[i];
      std::vector<double> dir;
      try {
        dir = solve_dense(std::move(jac), std::move(rhs));
      } catch (const std::runtime_error&) {
        seed_failed = true;
        break;
      }
      // halve the step until the residual norm drops; e^{-Tf} is convex in f
      // and an undamped step can overshoot into the trivial basin
      double step_scale = 1.0;
      bool improved = false;
      for (int halve = 0; halve <= 40; ++halve) {
        std::vector<double> cand(d);
        for (std::size_t i = 0; i < d; ++i) cand[i] = f[i] + step_scale * dir[i];
        if (detail::sup_abs(detail::survival_residual(k, cand)) < fn) {
          f = std::move(cand);
          improved = true;
          break;
        }
        step_scale *= 0.5;
      }
      if (!improved) seed_failed = true;
    }
    if (seed_failed) continue;

    std::vector<double> F = detail::survival_residual(k, f);
    const double residual = detail::sup_abs(F);
    double max_entry = f[0];
    for (double v : f) max_entry = std::max(max_entry, v);
    if (residual <= kNegativeResidualTol && max_entry <= kNegativeMaxEntry)
      return NegativeSolution{std::move(f), residual};
  }
  return std::nullopt;
}

struct TiltTransform {
  double q = 0.0;
  double c = 1.0;
};

struct TruncateTransform {
  int D = 0;
  double c = 1.0;
};

using Transform = std::variant<TiltTransform, TruncateTransform>;

// Radius of the tilted process B_{c,q} or the truncated process B-hat_{c,D}.
// The tilt must satisfy c*m_q >= 1, otherwise the tilted process no longer
// dominates the base one and the sandwich direction is lost.
inline RKappaEstimate r_transformed(const Kernel& k, const Transform& transform,
                                    const IterationConfig& cfg = {}, double bis_tol = 1e-7) {
  if (const auto* tilt = std::get_if<TiltTransform>(&transform)) {
    const double mq = tilt_normalizer(k, tilt->q);
    if (tilt->c * mq < 1.0 - 1e-12)
      throw PreconditionError("tilt requires c*m_q >= 1 (got c*m_q = " +
                              std::to_string(tilt->c * mq) + ")");
    return r_kappa(tilted_kernel(k, tilt->q, tilt->c), cfg, bis_tol);
  }
  const auto& trunc = std::get<TruncateTransform>(transform);
  return r_kappa(truncated_kernel(k, trunc.D, trunc.c), cfg, bis_tol);
}

}  // namespace irg
