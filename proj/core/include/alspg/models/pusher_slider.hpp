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

#include "alspg/shooting.hpp"

#include <optional>
#include <string_view>

namespace alspg::models {

struct PusherSliderParams {
  /// Half extent of the slider along its body x axis. The pusher acts on the
  /// face x = -half_length.
  double half_length = 0.045;
  /// Half extent along the body y axis; the contact coordinate lives in
  /// [-half_width, half_width].
  double half_width = 0.045;
  /// Support friction. Under uniform pressure it scales the limit surface
  /// uniformly and drops out of the quasi-static velocity map.
  double surface_friction = 0.35;
  double contact_friction = 0.3;
  /// Limit-surface ratio m_max / f_max. Derived from the footprint under
  /// uniform pressure when unset.
  std::optional<double> limit_surface_c;
  double dt = 0.05;
};

enum class ContactMode { Sticking, SlidingUp, SlidingDown, Separation };

std::string_view to_string(ContactMode mode);

struct PushStepInfo {
  ContactMode mode = ContactMode::Sticking;
  /// The contact coordinate left the face and was clamped back onto it.
  bool edge_clamped = false;
};

/// Quasi-static pusher-slider with an ellipsoidal limit surface and a single
/// point pusher on one face.
///
/// State (x, y, theta, p_y): slider pose in the world and contact position
/// along the pushed face. Control (u_n, u_t): pusher velocity in the slider
/// frame, normal (into the face) and tangential. Explicit Euler step.
class PusherSlider final : public DynamicsModel {
 public:
  explicit PusherSlider(PusherSliderParams params = {});

  Index state_dim() const override { return 4; }
  Index control_dim() const override { return 2; }
  double dt() const override { return params_.dt; }
  Vector step(const Vector &x, const Vector &u) const override;
  /// Jacobians of the step with the contact mode frozen at (x, u).
  void jacobians(const Vector &x, const Vector &u, Matrix &a, Matrix &b) const override;

  Vector step(const Vector &x, const Vector &u, PushStepInfo &info) const;
  ContactMode mode(const Vector &x, const Vector &u) const;
  /// Tangential-to-normal pusher velocity ratios bounding the motion cone at
  /// contact coordinate p_y: (upper, lower).
  std::pair<double, double> motion_cone(double py) const;

  double c() const { return c_; }
  const PusherSliderParams &params() const { return params_; }

 private:
  PusherSliderParams params_;
  double c_;
};

/// Mean distance from the center over a 2a x 2b rectangle: m_max / f_max for
/// a uniform pressure distribution.
double rectangle_limit_surface_ratio(double half_length, double half_width);

double wrap_angle(double theta);

}  // namespace alspg::models
