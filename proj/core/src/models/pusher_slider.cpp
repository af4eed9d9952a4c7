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
#include "alspg/models/pusher_slider.hpp"

#include <unsupported/Eigen/AutoDiff>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace alspg::models {

std::string_view to_string(ContactMode mode) {
  switch (mode) {
    case ContactMode::Sticking: return "sticking";
    case ContactMode::SlidingUp: return "sliding_up";
    case ContactMode::SlidingDown: return "sliding_down";
    case ContactMode::Separation: return "separation";
  }
  return "unknown";
}

double rectangle_limit_surface_ratio(double a, double b) {
  const double d = std::hypot(a, b);
  // Integral of |r| over one quadrant [0, a] x [0, b], divided by its area.
  const double integral =
      (2.0 * a * b * d + a * a * a * std::log((b + d) / a) + b * b * b * std::log((a + d) / b)) / 6.0;
  return integral / (a * b);
}

double wrap_angle(double theta) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(theta + std::numbers::pi, two_pi);
  if (w <= 0.0) w += two_pi;
  return w - std::numbers::pi;
}

namespace {

// Continuous-time vector field with the contact mode fixed.
template <typename S>
Eigen::Matrix<S, 4, 1> vector_field(const Eigen::Matrix<S, 4, 1> &x, const Eigen::Matrix<S, 2, 1> &u,
                                    ContactMode mode, double px, double c, double mu) {
  using std::cos;
  using std::sin;
  const S py = x[3];
  const S &un = u[0];
  const S &ut = u[1];
  const double c2 = c * c;
  const S d = c2 + px * px + py * py;

  S ut_eff = ut;
  switch (mode) {
    case ContactMode::Sticking: break;
    case ContactMode::SlidingUp:
      ut_eff = un * (mu * (c2 + px * px) - px * py) / (c2 + py * py - mu * px * py);
      break;
    case ContactMode::SlidingDown:
      ut_eff = un * (-mu * (c2 + px * px) - px * py) / (c2 + py * py + mu * px * py);
      break;
    case ContactMode::Separation: {
      Eigen::Matrix<S, 4, 1> out;
      out << S(0.0) * un, S(0.0) * un, S(0.0) * un, ut;
      return out;
    }
  }
  const S vx = ((c2 + px * px) * un + px * py * ut_eff) / d;
  const S vy = (px * py * un + (c2 + py * py) * ut_eff) / d;
  const S omega = (px * ut_eff - py * un) / d;
  const S th = x[2];
  Eigen::Matrix<S, 4, 1> out;
  out << cos(th) * vx - sin(th) * vy, sin(th) * vx + cos(th) * vy, omega, ut - ut_eff;
  return out;
}

}  // namespace

PusherSlider::PusherSlider(PusherSliderParams params) : params_(std::move(params)) {
  if (!(params_.half_length > 0.0 && params_.half_width > 0.0)) {
    throw std::invalid_argument("PusherSlider: slider dimensions must be positive");
  }
  if (!(params_.surface_friction > 0.0 && params_.contact_friction > 0.0)) {
    throw std::invalid_argument("PusherSlider: friction coefficients must be positive");
  }
  if (!(params_.dt > 0.0)) throw std::invalid_argument("PusherSlider: dt > 0");
  c_ = params_.limit_surface_c ? *params_.limit_surface_c
                               : rectangle_limit_surface_ratio(params_.half_length, params_.half_width);
  if (!(c_ > 0.0)) throw std::invalid_argument("PusherSlider: limit surface ratio must be positive");
  // Keeps the motion-cone denominators positive over the whole face.
  if (!(c_ * c_ > params_.contact_friction * params_.half_length * params_.half_width)) {
    throw std::invalid_argument("PusherSlider: contact friction too large for the limit surface");
  }
}

std::pair<double, double> PusherSlider::motion_cone(double py) const {
  const double px = -params_.half_length;
  const double mu = params_.contact_friction;
  const double c2 = c_ * c_;
  const double upper = (mu * (c2 + px * px) - px * py) / (c2 + py * py - mu * px * py);
  const double lower = (-mu * (c2 + px * px) - px * py) / (c2 + py * py + mu * px * py);
  return {upper, lower};
}

ContactMode PusherSlider::mode(const Vector &x, const Vector &u) const {
  require_dim(x.size(), 4, "PusherSlider state");
  require_dim(u.size(), 2, "PusherSlider control");
  if (u[0] <= 0.0) return ContactMode::Separation;
  const auto [upper, lower] = motion_cone(x[3]);
  if (u[1] > upper * u[0]) return ContactMode::SlidingUp;
  if (u[1] < lower * u[0]) return ContactMode::SlidingDown;
  return ContactMode::Sticking;
}

Vector PusherSlider::step(const Vector &x, const Vector &u, PushStepInfo &info) const {
  info.mode = mode(x, u);
  const Eigen::Vector4d xs = x;
  const Eigen::Vector2d us = u;
  const Eigen::Vector4d dx =
      vector_field<double>(xs, us, info.mode, -params_.half_length, c_, params_.contact_friction);
  Vector next = x + params_.dt * Vector(dx);
  next[2] = wrap_angle(next[2]);
  const double hw = params_.half_width;
  info.edge_clamped = next[3] > hw || next[3] < -hw;
  next[3] = std::clamp(next[3], -hw, hw);
  return next;
}

Vector PusherSlider::step(const Vector &x, const Vector &u) const {
  PushStepInfo info;
  return step(x, u, info);
}

void PusherSlider::jacobians(const Vector &x, const Vector &u, Matrix &a, Matrix &b) const {
  using Ad = Eigen::AutoDiffScalar<Eigen::Matrix<double, 6, 1>>;
  const ContactMode m = mode(x, u);
  Eigen::Matrix<Ad, 4, 1> xa;
  Eigen::Matrix<Ad, 2, 1> ua;
  for (int i = 0; i < 4; ++i) xa[i] = Ad(x[i], 6, i);
  for (int i = 0; i < 2; ++i) ua[i] = Ad(u[i], 6, 4 + i);
  const Eigen::Matrix<Ad, 4, 1> f = vector_field<Ad>(xa, ua, m, -params_.half_length, c_, params_.contact_friction);

  Eigen::Matrix<double, 4, 6> jac;
  for (int r = 0; r < 4; ++r) jac.row(r) = f[r].derivatives().transpose();
  a = Matrix::Identity(4, 4) + params_.dt * jac.leftCols<4>();
  b = params_.dt * jac.rightCols<2>();

  // The clamp on the contact coordinate is flat outside the face.
  const double py_next = x[3] + params_.dt * f[3].value();
  if (py_next > params_.half_width || py_next < -params_.half_width) {
    a.row(3).setZero();
    b.row(3).setZero();
  }
}

}  // namespace alspg::models
