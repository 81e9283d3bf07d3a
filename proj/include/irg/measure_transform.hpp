#pragma once

#include <cmath>
#include <vector>

#include "irg/kernel.hpp"

namespace irg {

// Normalizer m_q of the exponentially tilted measure; m_0 = 1.
inline double tilt_normalizer(const Kernel& k, double q) {
  if (q < 0.0) throw ConfigError("tilt requires q >= 0");
  const std::vector<double> t1 = t_one(k);
  double s = 0.0;
  for (std::size_t i = 0; i < k.dim(); ++i)
    s += std::exp(q * t1[i]) * k.space().weight(i);
  return 1.0 / s;
}

// mu_q(x) = m_q e^{q T[1](x)} mu(x)
inline TypeSpace tilt_measure(const Kernel& k, double q) {
  const double mq = tilt_normalizer(k, q);
  const std::vector<double> t1 = t_one(k);
  std::vector<double> w(k.dim());
  double sum = 0.0;
  for (std::size_t i = 0; i < k.dim(); ++i) {
    w[i] = mq * std::exp(q * t1[i]) * k.space().weight(i);
    sum += w[i];
  }
  // renormalize away the last-ulp drift so the TypeSpace invariant holds
  for (double& v : w) v /= sum;
  return TypeSpace(k.space().labels(), w);
}

// mu restricted to labels <= D and renormalized by M_D = sum_{y<=D} mu(y).
inline TypeSpace truncate_measure(const TypeSpace& space, int D) {
  std::vector<int> labels;
  std::vector<double> w;
  double md = 0.0;
  for (std::size_t i = 0; i < space.size(); ++i)
    if (space.label(i) <= D) {
      labels.push_back(space.label(i));
      w.push_back(space.weight(i));
      md += space.weight(i);
    }
  if (labels.empty())
    throw ConfigError("truncation horizon below the smallest label");
  for (double& v : w) v /= md;
  return TypeSpace(std::move(labels), std::move(w));
}

inline double truncation_mass(const TypeSpace& space, int D) {
  double md = 0.0;
  for (std::size_t i = 0; i < space.size(); ++i)
    if (space.label(i) <= D) md += space.weight(i);
  return md;
}

// c*kappa against mu_q; with c*m_q >= 1 the associated branching process
// dominates the base one.
inline Kernel tilted_kernel(const Kernel& k, double q, double c) {
  TypeSpace tilted = tilt_measure(k, q);
  std::vector<double> m = k.matrix();
  for (double& v : m) v *= c;
  return Kernel(std::move(tilted), std::move(m), KernelBuilder::Explicit);
}

// c*kappa restricted to labels <= D against mu_hat_D; with c = M_D the
// offspring intensities match the base process on the surviving types.
inline Kernel truncated_kernel(const Kernel& k, int D, double c) {
  TypeSpace trunc = truncate_measure(k.space(), D);
  const std::size_t dd = trunc.size();
  std::vector<double> m(dd * dd);
  // surviving types are a prefix of the label order
  for (std::size_t i = 0; i < dd; ++i)
    for (std::size_t j = 0; j < dd; ++j) m[i * dd + j] = c * k.at(i, j);
  return Kernel(std::move(trunc), std::move(m), KernelBuilder::Explicit);
}

}  // namespace irg
