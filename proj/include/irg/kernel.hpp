#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "irg/errors.hpp"
#include "irg/type_space.hpp"

namespace irg {

enum class KernelBuilder { Constant, Rank1, Max, Explicit };

inline const char* to_string(KernelBuilder b) {
  switch (b) {
    case KernelBuilder::Constant: return "constant";
    case KernelBuilder::Rank1: return "rank1";
    case KernelBuilder::Max: return "max";
    case KernelBuilder::Explicit: return "explicit";
  }
  return "?";
}

// Symmetric nonnegative intensity matrix over a TypeSpace. Edge probability
// in the graph model is min(kappa/n, 1); offspring intensity in the branching
// process is kappa(x,y)*mu(y).
class Kernel {
public:
  Kernel(TypeSpace space, std::vector<double> matrix, KernelBuilder builder)
      : space_(std::move(space)), matrix_(std::move(matrix)), builder_(builder) {
    const std::size_t d = space_.size();
    if (matrix_.size() != d * d) throw ConfigError("kernel matrix dimension mismatch");
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const double v = matrix_[i * d + j];
        if (!std::isfinite(v) || v < 0.0)
          throw ConfigError("kernel entries must be finite and nonnegative");
        if (v != matrix_[j * d + i])
          throw ConfigError("kernel matrix must be exactly symmetric");
      }
  }

  const TypeSpace& space() const { return space_; }
  std::size_t dim() const { return space_.size(); }
  KernelBuilder builder() const { return builder_; }
  double at(std::size_t i, std::size_t j) const { return matrix_[i * dim() + j]; }
  const std::vector<double>& matrix() const { return matrix_; }

  double min_entry() const { return *std::min_element(matrix_.begin(), matrix_.end()); }
  double max_entry() const { return *std::max_element(matrix_.begin(), matrix_.end()); }

private:
  TypeSpace space_;
  std::vector<double> matrix_;  // row-major, dim x dim
  KernelBuilder builder_;
};

inline Kernel constant_kernel(TypeSpace space, double c) {
  if (!(c > 0.0) || !std::isfinite(c))
    throw ConfigError("constant builder requires c > 0");
  const std::size_t d = space.size();
  return Kernel(std::move(space), std::vector<double>(d * d, c), KernelBuilder::Constant);
}

inline Kernel rank1_kernel(TypeSpace space, const std::vector<double>& phi) {
  const std::size_t d = space.size();
  if (phi.size() != d) throw ConfigError("rank1 builder: phi dimension mismatch");
  for (double v : phi)
    if (!(v > 0.0) || !std::isfinite(v))
      throw ConfigError("rank1 builder requires positive phi");
  std::vector<double> m(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m[i * d + j] = phi[i] * phi[j];
  return Kernel(std::move(space), std::move(m), KernelBuilder::Rank1);
}

// kappa(x,y) = ktilde(max(x,y)); ktilde positive and nondecreasing in label order.
inline Kernel max_kernel(TypeSpace space, const std::vector<double>& ktilde) {
  const std::size_t d = space.size();
  if (ktilde.size() != d) throw ConfigError("max builder: ktilde dimension mismatch");
  for (std::size_t i = 0; i < d; ++i) {
    if (!(ktilde[i] > 0.0) || !std::isfinite(ktilde[i]))
      throw ConfigError("max builder requires positive ktilde");
    if (i > 0 && ktilde[i] < ktilde[i - 1])
      throw ConfigError("max builder requires nondecreasing ktilde");
  }
  std::vector<double> m(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) m[i * d + j] = ktilde[std::max(i, j)];
  return Kernel(std::move(space), std::move(m), KernelBuilder::Max);
}

inline Kernel explicit_kernel(TypeSpace space, std::vector<double> matrix) {
  return Kernel(std::move(space), std::move(matrix), KernelBuilder::Explicit);
}

// (T_kappa f)(x) = sum_y kappa(x,y) f(y) mu(y)
inline std::vector<double> apply_T(const Kernel& k, const std::vector<double>& f) {
  const std::size_t d = k.dim();
  if (f.size() != d) throw ConfigError("apply_T: dimension mismatch");
  std::vector<double> out(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += k.at(i, j) * f[j] * k.space().weight(j);
    out[i] = s;
  }
  return out;
}

inline std::vector<double> t_one(const Kernel& k) {
  return apply_T(k, std::vector<double>(k.dim(), 1.0));
}

inline Kernel scale_kernel(const Kernel& k, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw ConfigError("scale factor must be positive");
  std::vector<double> m = k.matrix();
  for (double& v : m) v *= c;
  return Kernel(k.space(), std::move(m), k.builder());
}

}  // namespace irg
