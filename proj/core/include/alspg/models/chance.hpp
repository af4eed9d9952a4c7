/*
 * Copyright 2026 The alspg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include "alspg/types.hpp"

#include <cstdint>

namespace alspg::models {

/// Standard normal CDF.
double normal_cdf(double x);

/// Inverse of the standard normal CDF for p in (0, 1). Rational approximation
/// followed by one Halley correction; absolute error below 1e-12 on
/// [1e-10, 1 - 1e-10].
double normal_quantile(double p);

/// P(a^T p <= 0) >= eta for a ~ N(mu, S S^T), written as the cone membership
/// (z, t) = (quantile(eta) S^T p, -mu^T p) with ||z|| <= t.
class ChanceConstraintMap {
 public:
  ChanceConstraintMap(Vector mu, Matrix sigma_sqrt, double eta);

  Index input_dim() const { return mu_.size(); }
  Index output_dim() const { return sigma_sqrt_.cols() + 1; }
  /// Cone coordinates (z, t) for a point p.
  Vector value(const Vector &p) const;
  /// d(z, t)/dp.
  Matrix jacobian() const;

  const Vector &mu() const { return mu_; }
  const Matrix &sigma_sqrt() const { return sigma_sqrt_; }
  double eta() const { return eta_; }
  double quantile() const { return quantile_; }

 private:
  Vector mu_;
  Matrix sigma_sqrt_;
  double eta_;
  double quantile_;
};

/// Fraction of `samples` draws a ~ N(mu, S S^T) with a^T p <= 0.
double satisfaction_rate(const ChanceConstraintMap &map, const Vector &p, int samples, std::uint64_t seed);

}  // namespace alspg::models
