// Copyright 2026 The gsmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GSMC_LIE_METRIC_HPP_
#define GSMC_LIE_METRIC_HPP_

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include "gsmc/errors.hpp"
#include "gsmc/lie/so3.hpp"

namespace gsmc {

/// Inertia-weighted inner product on a 3-dimensional Lie algebra.
/// Positive-definiteness is checked at construction.
class WeightedMetric {
 public:
  explicit WeightedMetric(const Mat3& w) : w_(0.5 * (w + w.transpose())) {
    Eigen::LLT<Mat3> llt(w_);
    if (llt.info() != Eigen::Success) {
      throw std::invalid_argument("WeightedMetric: weight matrix is not positive definite");
    }
    w_inv_ = llt.solve(Mat3::Identity());
  }

  static WeightedMetric identity() { return WeightedMetric(Mat3::Identity()); }

  const Mat3& weight() const { return w_; }

  double inner(const Vec3& a, const Vec3& b) const { return a.dot(w_ * b); }
  double norm(const Vec3& xi) const { return std::sqrt(inner(xi, xi)); }

  /// Norm of a covector under the inverse weight.
  double covector_norm(const Vec3& alpha) const {
    return std::sqrt(alpha.dot(w_inv_ * alpha));
  }

 private:
  Mat3 w_;
  Mat3 w_inv_;
};

}  // namespace gsmc

#endif  // GSMC_LIE_METRIC_HPP_
