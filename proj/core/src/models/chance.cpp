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
#include "alspg/models/chance.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace alspg::models {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal_quantile: p must lie in (0, 1)");
  // Acklam's coefficients.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // Halley step on Phi(x) - p.
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

ChanceConstraintMap::ChanceConstraintMap(Vector mu, Matrix sigma_sqrt, double eta)
    : mu_(std::move(mu)), sigma_sqrt_(std::move(sigma_sqrt)), eta_(eta) {
  require_dim(sigma_sqrt_.rows(), mu_.size(), "ChanceConstraintMap sigma_sqrt rows");
  if (!(eta_ >= 0.5 && eta_ < 1.0)) throw std::invalid_argument("ChanceConstraintMap: eta must lie in [0.5, 1)");
  Eigen::FullPivLU<Matrix> lu(sigma_sqrt_);
  if (sigma_sqrt_.rows() != sigma_sqrt_.cols() || lu.rank() < sigma_sqrt_.rows()) {
    throw std::invalid_argument("ChanceConstraintMap: sigma_sqrt must be square and full rank");
  }
  quantile_ = normal_quantile(eta_);
}

Vector ChanceConstraintMap::value(const Vector &p) const {
  require_dim(p.size(), input_dim(), "ChanceConstraintMap point");
  Vector out(output_dim());
  out.head(sigma_sqrt_.cols()) = quantile_ * sigma_sqrt_.transpose() * p;
  out[output_dim() - 1] = -mu_.dot(p);
  return out;
}

Matrix ChanceConstraintMap::jacobian() const {
  Matrix jac(output_dim(), input_dim());
  jac.topRows(sigma_sqrt_.cols()) = quantile_ * sigma_sqrt_.transpose();
  jac.bottomRows(1) = -mu_.transpose();
  return jac;
}

double satisfaction_rate(const ChanceConstraintMap &map, const Vector &p, int samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("satisfaction_rate: samples >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector xi(map.sigma_sqrt().cols());
  int ok = 0;
  for (int s = 0; s < samples; ++s) {
    for (Index i = 0; i < xi.size(); ++i) xi[i] = normal(rng);
    const Vector a = map.mu() + map.sigma_sqrt() * xi;
    if (a.dot(p) <= 0.0) ++ok;
  }
  return static_cast<double>(ok) / samples;
}

}  // namespace alspg::models
