#include "hrom/attitude.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hrom
{

void AttitudeGains::validate() const
{
  if((kp.array() < 0.0).any() || (kd.array() < 0.0).any() || !kp.allFinite() || !kd.allFinite())
    throw std::invalid_argument("attitude gains must be finite and nonnegative");
}

Vec3 attitude_wrench(const Vec3 & rpy,
                     const Vec3 & rpy_rate,
                     const Vec3 & rpy_ref,
                     const AttitudeGains & gains,
                     double singular_margin)
{
  if(std::abs(rpy.y()) >= 0.5 * std::numbers::pi - singular_margin)
    throw AttitudeSingularity("pitch " + std::to_string(rpy.y()) + " rad is at the Euler singularity");
  return gains.kp.cwiseProduct(rpy_ref - rpy) - gains.kd.cwiseProduct(rpy_rate);
}

Eigen::Matrix<double, 3, 4> thruster_moment_map(const ModelParams & params)
{
  Eigen::Matrix<double, 3, 4> a;
  for(std::size_t i = 0; i < kNumLegs; ++i)
    a.col(static_cast<Eigen::Index>(i)) = params.thruster_offsets[i].cross(Vec3::UnitZ());
  return a;
}

ThrustAllocation allocate_thrusts(const Vec3 & demand, const ModelParams & params)
{
  const Eigen::Matrix<double, 3, 4> a = thruster_moment_map(params);
  const Eigen::Matrix<double, 2, 4> roll_pitch = a.topRows<2>();

  ThrustAllocation out;
  const Vec4 raw = roll_pitch.completeOrthogonalDecomposition().solve(demand.head<2>());
  out.thrusts = raw.cwiseMax(0.0).cwiseMin(params.max_thrust);
  out.residual = demand - a * out.thrusts;
  return out;
}

} // namespace hrom
