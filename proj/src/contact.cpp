#include "hrom/contact.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hrom/dynamics.hpp"

namespace hrom
{

void GroundParams::validate() const
{
  if(!(stiffness > 0.0)) throw std::invalid_argument("ground.stiffness must be positive");
  if(!(damping >= 0.0)) throw std::invalid_argument("ground.damping must be nonnegative");
  if(!(mu_coulomb > 0.0 && mu_coulomb <= mu_static))
    throw std::invalid_argument("ground friction must satisfy 0 < mu_coulomb <= mu_static");
  if(!(mu_viscous >= 0.0)) throw std::invalid_argument("ground.mu_viscous must be nonnegative");
  if(!(stribeck_velocity > 0.0)) throw std::invalid_argument("ground.stribeck_velocity must be positive");
  if(!std::isfinite(height)) throw std::invalid_argument("ground.height must be finite");
}

double stribeck_factor(double speed, const GroundParams & g)
{
  const double ratio = speed / g.stribeck_velocity;
  return g.mu_coulomb - (g.mu_coulomb - g.mu_static) * std::exp(-ratio * ratio);
}

namespace
{

double sgn(double x) { return static_cast<double>((x > 0.0) - (x < 0.0)); }

} // namespace

Vec3 grf_for_foot(const Vec3 & pos, const Vec3 & vel, const GroundParams & g)
{
  const double z = pos.z() - g.height;
  if(z > 0.0) return Vec3::Zero();

  // Unilateral: the damper may not pull the foot into the ground.
  const double normal = std::max(0.0, -g.stiffness * z - g.damping * vel.z());
  Vec3 u;
  for(int a = 0; a < 2; ++a)
  {
    const double v = vel(a);
    u(a) = -stribeck_factor(std::abs(v), g) * normal * sgn(v) - g.mu_viscous * v;
  }
  u.z() = normal;
  return u;
}

GrfSet grf_all(const RobotState & state, const ModelParams & model, const GroundParams & ground)
{
  GrfSet out;
  for(LegId leg : kAllLegs)
  {
    const std::size_t i = index(leg);
    const Vec3 p = forward_kinematics(state, model, leg);
    out.penetration[i] = p.z() - ground.height;
    out.in_contact[i] = out.penetration[i] <= 0.0;
    if(out.in_contact[i]) out.force[i] = grf_for_foot(p, foot_velocity(state, model, leg), ground);
  }
  return out;
}

} // namespace hrom
