#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "irg/kernel.hpp"

namespace irg {

struct PowerIterationOptions {
  double rayleigh_tol = 1e-13;
  long max_iter = 100000;
};

// Thrown when the Rayleigh quotient fails to settle within the iteration cap.
// lo/hi bracket the dominant eigenvalue via the last two quotients.
class PowerIterationFailure : public std::runtime_error {
public:
  PowerIterationFailure(double lo, double hi)
      : std::runtime_error("power iteration did not converge; Rayleigh bracket [" +
                           std::to_string(lo) + ", " + std::to_string(hi) + "]"),
        lo(lo), hi(hi) {}
  double lo, hi;
};

// ||T_kappa||: dominant eigenvalue of M(x,y) = sqrt(mu(x)) kappa(x,y) sqrt(mu(y)),
// a symmetric nonnegative matrix, by power iteration from the flat start vector.
inline double operator_norm(const Kernel& k, PowerIterationOptions opt = {}) {
  const std::size_t d = k.dim();
  std::vector<double> sq(d);
  for (std::size_t i = 0; i < d; ++i) sq[i] = std::sqrt(k.space().weight(i));
  if (d == 1) return k.at(0, 0) * k.space().weight(0);

  std::vector<double> v(d, 1.0 / std::sqrt(static_cast<double>(d))), w(d);
  double rq_prev = 0.0;
  for (long it = 0; it < opt.max_iter; ++it) {
    for (std::size_t i = 0; i < d; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < d; ++j) s += sq[i] * k.at(i, j) * sq[j] * v[j];
      w[i] = s;
    }
    double rq = 0.0, norm2 = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      rq += v[i] * w[i];
      norm2 += w[i] * w[i];
    }
    const double norm = std::sqrt(norm2);
    if (norm == 0.0) return 0.0;  // kernel identically zero
    for (std::size_t i = 0; i < d; ++i) v[i] = w[i] / norm;
    if (it > 0 && std::abs(rq - rq_prev) < opt.rayleigh_tol) return rq;
    rq_prev = rq;
  }
  throw PowerIterationFailure(rq_prev - opt.rayleigh_tol, rq_prev + opt.rayleigh_tol);
}

// (sum_{x,y} kappa(x,y)^2 mu(x) mu(y))^{1/2}
inline double hs_norm(const Kernel& k) {
  const std::size_t d = k.dim();
  double s = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const double v = k.at(i, j);
      s += v * v * k.space().weight(i) * k.space().weight(j);
    }
  return std::sqrt(s);
}

// psi(x) = (sum_y kappa(x,y)^2 mu(y))^{1/2}
inline std::vector<double> psi(const Kernel& k) {
  const std::size_t d = k.dim();
  std::vector<double> out(d);
  for (std::size_t i = 0; i < d; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += k.at(i, j) * k.at(i, j) * k.space().weight(j);
    out[i] = std::sqrt(s);
  }
  return out;
}

// Largest a on the grid {2^-4, ..., 2^4} with sum_x e^{a psi(x)} mu(x) finite
// in double precision. Always succeeds on a finite space unless psi is huge;
// the value flags how close a truncated heavy-tailed measure sails to the
// exponential-moment assumption.
inline double exp_moment_margin(const Kernel& k) {
  const std::vector<double> ps = psi(k);
  double best = 0.0;
  for (int e = -4; e <= 4; ++e) {
    const double a = std::ldexp(1.0, e);
    double s = 0.0;
    for (std::size_t i = 0; i < k.dim(); ++i) s += std::exp(a * ps[i]) * k.space().weight(i);
    if (std::isfinite(s)) best = a;
  }
  return best;
}

struct OperatorStats {
  double op_norm = 0.0;
  double hs_norm = 0.0;
  std::vector<double> t_one;
  std::vector<double> psi;
  double as1_margin = 0.0;
};

inline OperatorStats compute_stats(const Kernel& k) {
  OperatorStats s;
  s.op_norm = operator_norm(k);
  s.hs_norm = irg::hs_norm(k);
  s.t_one = irg::t_one(k);
  s.psi = irg::psi(k);
  s.as1_margin = exp_moment_margin(k);
  return s;
}

struct ConditionReport {
  bool inf_positive = false;
  double inf_value = 0.0;
  bool c1_bounded = false;   // always true on finite S; value is the sup
  double sup_value = 0.0;
  bool c2_hs_subcritical = false;  // reported, never gates experiments
  double hs_value = 0.0;
  bool c3_monotone = false;
  std::optional<double> c3_constant;  // smallest c1 with kappa <= c1*T1(x)*T1(y)
  bool c3 = false;
  bool as1 = false;
  double as1_margin = 0.0;
};

inline ConditionReport check_conditions(const Kernel& k) {
  const std::size_t d = k.dim();
  ConditionReport r;
  r.inf_value = k.min_entry();
  r.inf_positive = r.inf_value > 0.0;
  r.sup_value = k.max_entry();
  r.c1_bounded = std::isfinite(r.sup_value);
  r.hs_value = hs_norm(k);
  r.c2_hs_subcritical = r.hs_value < 1.0;

  r.c3_monotone = true;
  for (std::size_t i = 0; i < d && r.c3_monotone; ++i)
    for (std::size_t j = 0; j + 1 < d; ++j)
      if (k.at(i, j + 1) < k.at(i, j)) {  // symmetry covers the other argument
        r.c3_monotone = false;
        break;
      }

  const std::vector<double> t1 = t_one(k);
  double c3c = 0.0;
  bool have_c3c = true;
  for (std::size_t i = 0; i < d && have_c3c; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const double denom = t1[i] * t1[j];
      if (k.at(i, j) == 0.0) continue;
      if (denom == 0.0) {
        have_c3c = false;
        break;
      }
      c3c = std::max(c3c, k.at(i, j) / denom);
    }
  if (have_c3c) r.c3_constant = c3c;
  r.c3 = r.c3_monotone && have_c3c;

  r.as1_margin = exp_moment_margin(k);
  r.as1 = r.as1_margin > 0.0;
  return r;
}

}  // namespace irg
