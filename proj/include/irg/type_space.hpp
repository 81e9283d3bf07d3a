#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "irg/errors.hpp"

namespace irg {

inline constexpr double kWeightSumTol = 1e-12;

// Finite ordered type space with a probability weight per type.
// Labels are strictly increasing integers; the order carries the
// monotonicity semantics used by the (C3) check and by truncation.
class TypeSpace {
public:
  TypeSpace(std::vector<int> labels, std::vector<double> weights)
      : labels_(std::move(labels)), weights_(std::move(weights)) {
    if (labels_.empty()) throw ConfigError("type space must be nonempty");
    if (labels_.size() != weights_.size())
      throw ConfigError("labels/weights size mismatch");
    for (std::size_t i = 1; i < labels_.size(); ++i)
      if (labels_[i] <= labels_[i - 1])
        throw ConfigError("labels must be strictly increasing");
    double sum = 0.0;
    for (double w : weights_) {
      if (!(w > 0.0) || !std::isfinite(w))
        throw ConfigError("weights must be strictly positive and finite");
      sum += w;
    }
    if (std::abs(sum - 1.0) > kWeightSumTol)
      throw ConfigError("weights must sum to 1 (got " + std::to_string(sum) + ")");
  }

  std::size_t size() const { return labels_.size(); }
  int label(std::size_t i) const { return labels_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<int>& labels() const { return labels_; }
  const std::vector<double>& weights() const { return weights_; }

  bool operator==(const TypeSpace& o) const {
    return labels_ == o.labels_ && weights_ == o.weights_;
  }

private:
  std::vector<int> labels_;
  std::vector<double> weights_;
};

}  // namespace irg
