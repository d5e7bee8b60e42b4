#include "hrom/gait.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "hrom/dynamics.hpp"

namespace hrom
{

void GaitSchedule::validate() const
{
  if(!(cycle_period > 0.0)) throw std::invalid_argument("gait.cycle_period must be positive");
  if(!(swing_height >= 0.0)) throw std::invalid_argument("gait.swing_height must be nonnegative");
  if(!(velocity_gain >= 0.0)) throw std::invalid_argument("gait.velocity_gain must be nonnegative");
  if(!(standing_height > 0.0)) throw std::invalid_argument("gait.standing_height must be positive");
  if(!(reference_tracking >= 0.0)) throw std::invalid_argument("gait.reference_tracking must be nonnegative");
}

StancePhase stance_pair(double t, const GaitSchedule & sched)
{
  const double half = sched.stance_duration();
  const double cycles = t / half;
  auto k = static_cast<std::int64_t>(std::floor(cycles));
  double phase = cycles - static_cast<double>(k);
  if(phase >= 1.0)
  {
    phase = 0.0;
    ++k;
  }

  StancePhase out;
  out.half_cycle = k;
  out.phase = phase;
  if(k % 2 == 0)
  {
    out.stance = {LegId::FR, LegId::BL};
    out.swing = {LegId::FL, LegId::BR};
  }
  else
  {
    out.stance = {LegId::FL, LegId::BR};
    out.swing = {LegId::FR, LegId::BL};
  }
  return out;
}

bool in_stance(const StancePhase & phase, LegId leg)
{
  return phase.stance[0] == leg || phase.stance[1] == leg;
}

Vec3 swing_foot_target(const RobotState & state,
                       const ModelParams & params,
                       LegId leg,
                       const Vec3 & applied_velocity,
                       const GaitSchedule & sched,
                       double ground_height)
{
  Vec3 target = state.pose.position + state.pose.rotation * params.hip_offsets[index(leg)];
  Vec3 offset = 0.5 * sched.stance_duration() * applied_velocity
                + sched.velocity_gain * (state.twist.linear - applied_velocity);
  target.head<2>() += offset.head<2>();
  target.z() = ground_height;
  return target;
}

SwingPoint swing_trajectory(double phase, const Vec3 & liftoff, const Vec3 & target, double height, double duration)
{
  const double s = std::clamp(phase, 0.0, 1.0);
  const double rate = 1.0 / duration;

  // Horizontal: smoothstep 3s^2 - 2s^3, zero velocity at both ends.
  const double blend = s * s * (3.0 - 2.0 * s);
  const double blend_d = 6.0 * s * (1.0 - s);
  const double blend_dd = 6.0 - 12.0 * s;

  SwingPoint out;
  const Vec3 delta = target - liftoff;
  out.position = liftoff + blend * delta;
  out.velocity = blend_d * rate * delta;
  out.acceleration = blend_dd * rate * rate * delta;

  // Vertical: base + (apex - base) sin^2(pi s), with the base switching from the liftoff height to
  // the target height at the apex. Both halves have zero slope at s = 0.5, so the arc is C1.
  const double apex = std::max(liftoff.z(), target.z()) + height;
  const double base = s <= 0.5 ? liftoff.z() : target.z();
  const double rise = apex - base;
  const double arg = std::numbers::pi * s;
  const double sin2 = std::sin(arg) * std::sin(arg);
  const double sin2_d = std::numbers::pi * std::sin(2.0 * arg);
  const double sin2_dd = 2.0 * std::numbers::pi * std::numbers::pi * std::cos(2.0 * arg);
  out.position.z() = base + rise * sin2;
  out.velocity.z() = rise * sin2_d * rate;
  out.acceleration.z() = rise * sin2_dd * rate * rate;
  return out;
}

IkResult inverse_kinematics(const Vec3 & target, const BodyPose & pose, const ModelParams & params, LegId leg)
{
  const Vec3 d = pose.rotation.transpose() * (target - pose.position) - params.hip_offsets[index(leg)];
  const double reach = d.norm();

  IkResult out;
  if(reach < 1e-9)
  {
    out.coords = {0.0, 0.0, params.min_leg_length};
    out.status = IkStatus::Degenerate;
    return out;
  }

  out.coords.length = reach;
  out.coords.frontal = std::asin(std::clamp(d.y() / reach, -1.0, 1.0));
  out.coords.sagittal = std::atan2(-d.x(), -d.z());

  constexpr double half_pi = 0.5 * std::numbers::pi;
  if(reach < params.min_leg_length || reach > params.max_leg_length || std::abs(out.coords.sagittal) > half_pi)
  {
    out.coords.length = std::clamp(reach, params.min_leg_length, params.max_leg_length);
    out.coords.sagittal = std::clamp(out.coords.sagittal, -half_pi, half_pi);
    out.status = IkStatus::Clamped;
  }
  return out;
}

Vec12 joint_command(const JointReference & ref, const LegJoints & legs, const JointGains & gains)
{
  return ref.accel + gains.kp * (ref.position - legs.position) + gains.kd * (ref.rate - legs.rate);
}

GaitPlanner::GaitPlanner(GaitSchedule schedule, JointGains gains, ModelParams params, double ground_height)
: schedule_(std::move(schedule)), gains_(gains), params_(std::move(params)), ground_height_(ground_height)
{
}

void GaitPlanner::reset(const RobotState & state)
{
  reference_.position = state.pose.position;
  reference_.position.z() = ground_height_ + schedule_.standing_height;
  reference_.rotation = Mat3::Identity();
  for(LegId leg : kAllLegs)
  {
    Vec3 foot = forward_kinematics(state, params_, leg);
    foot.z() = ground_height_;
    anchors_[index(leg)] = foot;
    liftoff_[index(leg)] = foot;
    last_target_[index(leg)] = foot;
  }
  half_cycle_ = 0;
}

GaitPlanner::Output GaitPlanner::update(double t, const RobotState & state, const Vec3 & applied_velocity, double dt)
{
  Output out;
  out.phase = stance_pair(t, schedule_);

  if(out.phase.half_cycle != half_cycle_)
  {
    for(LegId leg : kAllLegs)
    {
      const std::size_t i = index(leg);
      if(in_stance(out.phase, leg))
        anchors_[i] = last_target_[i];
      else
        liftoff_[i] = anchors_[i];
    }
    half_cycle_ = out.phase.half_cycle;
  }

  // Stance reference frame: advances with the applied velocity, leaks toward the real body.
  Vec3 ref_velocity = Vec3::Zero();
  ref_velocity.head<2>() = applied_velocity.head<2>()
                           + schedule_.reference_tracking
                                 * (state.pose.position.head<2>() - reference_.position.head<2>());
  reference_.position += dt * ref_velocity;

  const Mat3 & rot = reference_.rotation;
  for(LegId leg : kAllLegs)
  {
    const std::size_t i = index(leg);
    SwingPoint foot{anchors_[i], Vec3::Zero(), Vec3::Zero()};
    if(!in_stance(out.phase, leg))
    {
      const Vec3 td = swing_foot_target(state, params_, leg, applied_velocity, schedule_, ground_height_);
      foot = swing_trajectory(out.phase.phase, liftoff_[i], td, schedule_.swing_height, schedule_.swing_duration());
      last_target_[i] = td;
    }
    out.foot_targets[i] = foot.position;

    const IkResult ik = inverse_kinematics(foot.position, reference_, params_, leg);
    if(ik.status != IkStatus::Ok) out.ik_flags |= 1 << i;

    const Mat3 jac = leg_jacobian(ik.coords);
    const Eigen::PartialPivLU<Mat3> lu(jac);
    const Vec3 qd = lu.solve(rot.transpose() * (foot.velocity - ref_velocity));
    const Vec3 qdd = lu.solve(rot.transpose() * foot.acceleration);

    out.reference.position.segment<3>(3 * i) = ik.coords.vector();
    out.reference.rate.segment<3>(3 * i) = qd;
    out.reference.accel.segment<3>(3 * i) = qdd;
  }

  out.joint_accel = joint_command(out.reference, state.legs, gains_);
  return out;
}

} // namespace hrom
