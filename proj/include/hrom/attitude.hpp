#pragma once

#include <stdexcept>

#include "hrom/types.hpp"

namespace hrom
{

/// Diagonal PD attitude gains on (roll, pitch, yaw).
struct AttitudeGains
{
  Vec3 kp = Vec3(60.0, 60.0, 0.0);
  Vec3 kd = Vec3(8.0, 8.0, 0.0);

  void validate() const;
};

/// Raised when Euler-angle extraction approaches gimbal lock.
class AttitudeSingularity : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Moment demand Kp (ref - rpy) - Kd rpy_dot. Throws AttitudeSingularity within `singular_margin`
/// of pitch = +-pi/2.
Vec3 attitude_wrench(const Vec3 & rpy,
                     const Vec3 & rpy_rate,
                     const Vec3 & rpy_ref,
                     const AttitudeGains & gains,
                     double singular_margin = 1e-3);

/// 3x4 map from thruster forces to body moments.
Eigen::Matrix<double, 3, 4> thruster_moment_map(const ModelParams & params);

struct ThrustAllocation
{
  Vec4 thrusts = Vec4::Zero();
  /// Moment demand minus the moment actually produced by the clamped thrusts.
  Vec3 residual = Vec3::Zero();
};

/// Least-squares roll/pitch allocation onto the four thrusters, clamped to [0, max_thrust]. Yaw is
/// not producible by upward-only thrusters and is left in the residual.
ThrustAllocation allocate_thrusts(const Vec3 & moment_demand, const ModelParams & params);

} // namespace hrom
