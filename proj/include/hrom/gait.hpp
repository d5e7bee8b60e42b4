#pragma once

#include <array>
#include <cstdint>

#include "hrom/types.hpp"

namespace hrom
{

/// Trot schedule. One full cycle lasts `cycle_period`; each diagonal pair is in stance for half of it.
struct GaitSchedule
{
  double cycle_period = 0.8;
  double swing_height = 0.05;
  /// Raibert velocity-error gain k_v [s].
  double velocity_gain = 0.03;
  /// Standing height of the body origin above the ground plane [m].
  double standing_height = 0.30;
  /// Rate at which the stance reference frame is pulled back onto the body [1/s].
  double reference_tracking = 1.0;

  double stance_duration() const { return 0.5 * cycle_period; }
  double swing_duration() const { return 0.5 * cycle_period; }

  void validate() const;
};

struct StancePhase
{
  std::array<LegId, 2> stance;
  std::array<LegId, 2> swing;
  /// Normalized time within the current half cycle, in [0, 1).
  double phase = 0.0;
  std::int64_t half_cycle = 0;
};

StancePhase stance_pair(double t, const GaitSchedule & sched);

bool in_stance(const StancePhase & phase, LegId leg);

/// Raibert touchdown target on the ground plane for a swinging leg.
Vec3 swing_foot_target(const RobotState & state,
                       const ModelParams & params,
                       LegId leg,
                       const Vec3 & applied_velocity,
                       const GaitSchedule & sched,
                       double ground_height);

struct SwingPoint
{
  Vec3 position;
  Vec3 velocity;
  Vec3 acceleration;
};

/// Cubic blend in the ground plane and a raised sine arc in height. Time derivatives assume the
/// phase advances uniformly over `duration` seconds.
SwingPoint swing_trajectory(double phase, const Vec3 & liftoff, const Vec3 & target, double height, double duration);

enum class IkStatus
{
  Ok,
  Clamped,
  Degenerate
};

struct IkResult
{
  LegCoords coords;
  IkStatus status = IkStatus::Ok;
};

/// Inverse of forward_kinematics for a given body pose.
IkResult inverse_kinematics(const Vec3 & foot_target_world, const BodyPose & pose, const ModelParams & params, LegId leg);

inline IkResult inverse_kinematics(const Vec3 & foot_target_world,
                                   const RobotState & state,
                                   const ModelParams & params,
                                   LegId leg)
{
  return inverse_kinematics(foot_target_world, state.pose, params, leg);
}

struct JointReference
{
  Vec12 position = Vec12::Zero();
  Vec12 rate = Vec12::Zero();
  Vec12 accel = Vec12::Zero();
};

struct JointGains
{
  double kp = 400.0;
  double kd = 40.0;
};

/// PD tracking with acceleration feedforward: u_L = qdd_ref + Kp (q_ref - q) + Kd (qd_ref - qd).
Vec12 joint_command(const JointReference & ref, const LegJoints & legs, const JointGains & gains);

/// Stateful trot planner producing joint references and joint acceleration commands.
///
/// Stance feet are held at their touchdown points expressed against a reference body frame that
/// advances with the applied velocity. Any lag of the real body behind that frame shows up as foot
/// slip, which the friction model turns into propulsion.
class GaitPlanner
{
public:
  GaitPlanner(GaitSchedule schedule, JointGains gains, ModelParams params, double ground_height);

  void reset(const RobotState & state);

  struct Output
  {
    StancePhase phase;
    JointReference reference;
    Vec12 joint_accel = Vec12::Zero();
    std::array<Vec3, kNumLegs> foot_targets;
    int ik_flags = 0;
  };

  Output update(double t, const RobotState & state, const Vec3 & applied_velocity, double dt);

  const BodyPose & reference_pose() const { return reference_; }
  const std::array<Vec3, kNumLegs> & anchors() const { return anchors_; }

private:
  GaitSchedule schedule_;
  JointGains gains_;
  ModelParams params_;
  double ground_height_;

  BodyPose reference_;
  std::array<Vec3, kNumLegs> anchors_;
  std::array<Vec3, kNumLegs> liftoff_;
  std::array<Vec3, kNumLegs> last_target_;
  std::int64_t half_cycle_ = 0;
};

} // namespace hrom
