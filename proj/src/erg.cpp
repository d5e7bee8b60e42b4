#include "hrom/erg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "hrom/rotation.hpp"

namespace hrom
{

void FrictionConstraint::validate() const
{
  if(!(mu_static > 0.0)) throw std::invalid_argument("erg.mu_static must be positive");
  if(!(min_normal >= 0.0)) throw std::invalid_argument("erg.min_normal must be nonnegative");
}

void ErgParams::validate() const
{
  if(!(kappa > 0.0)) throw std::invalid_argument("erg.kappa must be positive");
  if(!(margin_scale > 0.0)) throw std::invalid_argument("erg.margin_scale must be positive");
  if(!(eta > 0.0)) throw std::invalid_argument("erg.eta must be positive");
  if(!(horizon > 0.0)) throw std::invalid_argument("erg.horizon must be positive");
}

namespace
{

constexpr double kMinSupportLength = 1e-6;
constexpr double kMinRcond = 1e-12;

} // namespace

GrfPrediction predicted_grf(const RobotState & state,
                            const std::array<Vec3, 2> & feet,
                            const Wrench & thrust,
                            const Vec3 & velocity_command,
                            const ModelParams & params,
                            double horizon)
{
  GrfPrediction out;
  const Vec3 r1 = feet[0] - state.pose.position;
  const Vec3 r2 = feet[1] - state.pose.position;
  const Vec3 line = r2 - r1;
  if(line.norm() < kMinSupportLength) return out;
  const Vec3 e = line.normalized();

  // Orthonormal pair spanning the plane normal to the support line.
  const Vec3 seed = std::abs(e.z()) < 0.9 ? Vec3::UnitZ() : Vec3::UnitX();
  const Vec3 n1 = e.cross(seed).normalized();
  const Vec3 n2 = e.cross(n1);

  const Vec3 thrust_force = thrust.force_frame == Frame::World ? thrust.force : Vec3(state.pose.rotation * thrust.force);
  const Vec3 thrust_moment = state.pose.rotation * thrust.moment;
  const Vec3 accel = (velocity_command - state.twist.linear) / horizon;

  Mat6 a = Mat6::Zero();
  Vec6 b;
  a.block<3, 3>(0, 0).setIdentity();
  a.block<3, 3>(0, 3).setIdentity();
  b.head<3>() = params.mass * (accel - params.gravity) - thrust_force;

  const Mat3 s1 = skew(r1);
  const Mat3 s2 = skew(r2);
  a.block<1, 3>(3, 0) = n1.transpose() * s1;
  a.block<1, 3>(3, 3) = n1.transpose() * s2;
  a.block<1, 3>(4, 0) = n2.transpose() * s1;
  a.block<1, 3>(4, 3) = n2.transpose() * s2;
  b(3) = -n1.dot(thrust_moment);
  b(4) = -n2.dot(thrust_moment);

  a.block<1, 3>(5, 0) = e.transpose();
  a.block<1, 3>(5, 3) = -e.transpose();
  b(5) = 0.0;

  const Eigen::PartialPivLU<Mat6> lu(a);
  out.rcond = lu.rcond();
  if(!(out.rcond > kMinRcond)) return out;

  const Vec6 x = lu.solve(b);
  if(!x.allFinite()) return out;
  out.forces[0] = x.head<3>();
  out.forces[1] = x.tail<3>();
  out.valid = true;
  return out;
}

namespace
{

double sgn(double x) { return static_cast<double>((x > 0.0) - (x < 0.0)); }

} // namespace

Vec3 friction_rows(const Vec3 & u, const FrictionConstraint & c)
{
  Mat3 jr;
  jr << -sgn(u.x()), 0.0, c.mu_static,
        0.0, -sgn(u.y()), c.mu_static,
        0.0, 0.0, 1.0;
  return jr * u + Vec3(0.0, 0.0, -c.min_normal);
}

double constraint_margin(const Vec3 & force, const FrictionConstraint & constraint)
{
  return friction_rows(force, constraint).minCoeff();
}

double constraint_margin(const std::array<Vec3, 2> & forces, const FrictionConstraint & constraint)
{
  return std::min(constraint_margin(forces[0], constraint), constraint_margin(forces[1], constraint));
}

ErgState governor_update(const ErgState & erg, double margin, double dt, const ErgParams & params)
{
  ErgState out = erg;
  out.margin = margin;

  const Vec3 gap = erg.desired - erg.applied;
  const double distance = gap.norm();
  const double safety = std::clamp(margin / params.margin_scale, 0.0, 1.0);
  if(distance == 0.0 || safety == 0.0) return out;

  const Vec3 attraction = gap / std::max(distance, params.eta);
  const Vec3 step = params.kappa * safety * attraction * dt;
  out.applied = step.norm() >= distance ? erg.desired : Vec3(erg.applied + step);
  return out;
}

ReferenceGovernor::ReferenceGovernor(ErgParams params, FrictionConstraint constraint, ModelParams model)
: params_(params), constraint_(constraint), model_(std::move(model))
{
}

void ReferenceGovernor::reset(const Vec3 & desired, const Vec3 & applied)
{
  state_ = ErgState{desired, applied, 0.0};
  last_valid_ = GrfPrediction{};
}

GrfPrediction ReferenceGovernor::predict(const RobotState & state,
                                         const std::array<Vec3, 2> & feet,
                                         const Wrench & thrust,
                                         const Vec3 & command,
                                         bool & singular)
{
  GrfPrediction p = predicted_grf(state, feet, thrust, command, model_, params_.horizon);
  singular = !p.valid;
  if(p.valid) return p;
  return last_valid_;
}

ReferenceGovernor::Step ReferenceGovernor::update(const RobotState & state,
                                                  const std::array<Vec3, 2> & feet,
                                                  const Wrench & thrust,
                                                  double dt)
{
  Step out;
  out.prediction = predict(state, feet, thrust, state_.applied, out.singular);
  if(!out.singular) last_valid_ = out.prediction;
  out.margin = out.prediction.valid ? constraint_margin(out.prediction.forces, constraint_) : 0.0;

  const ErgState candidate = governor_update(state_, out.margin, dt, params_);
  state_.margin = out.margin;
  if(candidate.applied == state_.applied) return out;

  bool singular = false;
  const GrfPrediction check = predict(state, feet, thrust, candidate.applied, singular);
  if(!singular && constraint_margin(check.forces, constraint_) >= 0.0)
  {
    state_.applied = candidate.applied;
    out.accepted = true;
  }
  return out;
}

} // namespace hrom
