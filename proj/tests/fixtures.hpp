#pragma once

#include <random>

#include "hrom/dynamics.hpp"
#include "hrom/rotation.hpp"
#include "hrom/types.hpp"

namespace hrom::test
{

inline Vec3 random_vec(std::mt19937_64 & rng, double lo, double hi)
{
  std::uniform_real_distribution<double> u(lo, hi);
  return {u(rng), u(rng), u(rng)};
}

inline RobotState random_state(std::mt19937_64 & rng)
{
  std::uniform_real_distribution<double> ang(-0.6, 0.6);
  std::uniform_real_distribution<double> len(0.2, 0.4);
  RobotState s;
  s.pose.position = random_vec(rng, -0.5, 0.5);
  s.pose.rotation = from_euler_zyx(random_vec(rng, -0.5, 0.5));
  s.twist.linear = random_vec(rng, -1.0, 1.0);
  s.twist.angular = random_vec(rng, -1.0, 1.0);
  for(LegId leg : kAllLegs) s.legs.set(leg, {ang(rng), ang(rng), len(rng)});
  for(int i = 0; i < 12; ++i) s.legs.rate(i) = std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
  return s;
}

// Rotation along the body angular velocity over time h.
inline Mat3 advance_rotation(const Mat3 & r, const Vec3 & omega, double h)
{
  const double angle = omega.norm() * h;
  if(angle == 0.0) return r;
  return r * Eigen::AngleAxisd(angle, omega.normalized()).toRotationMatrix();
}

// State propagated along its own velocities by h, with the given joint accelerations.
inline RobotState drift(const RobotState & s, double h, const Vec12 & qdd = Vec12::Zero())
{
  RobotState out = s;
  out.pose.position += h * s.twist.linear;
  out.pose.rotation = advance_rotation(s.pose.rotation, s.twist.angular, h);
  out.legs.position += h * s.legs.rate + 0.5 * h * h * qdd;
  out.legs.rate += h * qdd;
  return out;
}

} // namespace hrom::test
