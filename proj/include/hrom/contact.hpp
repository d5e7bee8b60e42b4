#pragma once

#include "hrom/types.hpp"

namespace hrom
{

/// Compliant flat ground with Stribeck friction.
struct GroundParams
{
  double stiffness = 10000.0;  // k_gz [N/m]
  double damping = 100.0;      // k_dz [N s/m]
  double mu_coulomb = 0.2;
  double mu_static = 0.25;
  double mu_viscous = 1.0;     // [N s/m]
  double stribeck_velocity = 0.1;
  double height = 0.0;

  void validate() const;
};

/// Stribeck blend factor: mu_c - (mu_c - mu_s) exp(-v^2 / v_s^2).
double stribeck_factor(double tangential_speed, const GroundParams & ground);

/// Contact force on a single foot. Zero when the foot is above the ground plane.
Vec3 grf_for_foot(const Vec3 & foot_pos, const Vec3 & foot_vel, const GroundParams & ground);

GrfSet grf_all(const RobotState & state, const ModelParams & model, const GroundParams & ground);

} // namespace hrom
