#pragma once

#include <array>
#include <cstddef>
#include <string_view>

#include <Eigen/Dense>

namespace hrom
{

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Vec12 = Eigen::Matrix<double, 12, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Mat36 = Eigen::Matrix<double, 3, 6>;

inline constexpr std::size_t kNumLegs = 4;

enum class LegId : std::size_t
{
  FR = 0,
  FL = 1,
  BR = 2,
  BL = 3
};

inline constexpr std::array<LegId, kNumLegs> kAllLegs{LegId::FR, LegId::FL, LegId::BR, LegId::BL};

constexpr std::size_t index(LegId leg) { return static_cast<std::size_t>(leg); }

constexpr std::string_view name(LegId leg)
{
  switch(leg)
  {
    case LegId::FR: return "FR";
    case LegId::FL: return "FL";
    case LegId::BR: return "BR";
    case LegId::BL: return "BL";
  }
  return "?";
}

/// Position and orientation of the body. `rotation` maps body-frame vectors into the world frame.
struct BodyPose
{
  Vec3 position = Vec3::Zero();
  Mat3 rotation = Mat3::Identity();
};

/// Linear velocity is expressed in the world frame, angular velocity in the body frame.
struct BodyTwist
{
  Vec3 linear = Vec3::Zero();
  Vec3 angular = Vec3::Zero();

  Vec6 stacked() const
  {
    Vec6 v;
    v << linear, angular;
    return v;
  }
};

/// Joint coordinates of a single leg: hip-frontal angle, hip-sagittal angle, leg length.
struct LegCoords
{
  double frontal = 0.0;
  double sagittal = 0.0;
  double length = 0.0;

  Vec3 vector() const { return {frontal, sagittal, length}; }
  static LegCoords from(const Vec3 & v) { return {v.x(), v.y(), v.z()}; }
};

/// Joint coordinates of all legs, packed as [gamma, phi, length] per leg in FR, FL, BR, BL order.
struct LegJoints
{
  Vec12 position = Vec12::Zero();
  Vec12 rate = Vec12::Zero();

  LegCoords coords(LegId leg) const { return LegCoords::from(position.segment<3>(3 * index(leg))); }
  Vec3 coord_rates(LegId leg) const { return rate.segment<3>(3 * index(leg)); }
  void set(LegId leg, const LegCoords & q) { position.segment<3>(3 * index(leg)) = q.vector(); }
};

struct RobotState
{
  BodyPose pose;
  BodyTwist twist;
  LegJoints legs;
};

/// Time derivative of a RobotState.
struct StateDerivative
{
  Vec3 position_rate = Vec3::Zero();
  Mat3 rotation_rate = Mat3::Zero();
  Vec3 linear_accel = Vec3::Zero();
  Vec3 angular_accel = Vec3::Zero();
  Vec12 joint_rate = Vec12::Zero();
  Vec12 joint_accel = Vec12::Zero();
};

struct ModelParams
{
  double mass = 8.0;
  Mat3 inertia = Eigen::Vector3d(0.08, 0.30, 0.30).asDiagonal();
  std::array<Vec3, kNumLegs> hip_offsets{Vec3(0.15, -0.10, 0.0), Vec3(0.15, 0.10, 0.0), Vec3(-0.15, -0.10, 0.0),
                                         Vec3(-0.15, 0.10, 0.0)};
  std::array<Vec3, kNumLegs> thruster_offsets{Vec3(0.15, -0.15, 0.0), Vec3(0.15, 0.15, 0.0), Vec3(-0.15, -0.15, 0.0),
                                              Vec3(-0.15, 0.15, 0.0)};
  Vec3 gravity = Vec3(0.0, 0.0, -9.81);
  double max_thrust = 19.62;
  double min_leg_length = 0.15;
  double max_leg_length = 0.45;

  /// Throws std::invalid_argument describing the first violated invariant.
  void validate() const;
};

enum class Frame
{
  World,
  Body
};

/// Force and moment pair. The force is expressed in `force_frame`; the moment is always about the
/// body origin in the body frame, matching the rotational equations of motion.
struct Wrench
{
  Vec3 force = Vec3::Zero();
  Vec3 moment = Vec3::Zero();
  Frame force_frame = Frame::World;
};

/// Per-foot ground reaction forces in the world frame.
struct GrfSet
{
  std::array<Vec3, kNumLegs> force{Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), Vec3::Zero()};
  std::array<bool, kNumLegs> in_contact{false, false, false, false};
  /// Foot height relative to the ground plane; negative when penetrating.
  std::array<double, kNumLegs> penetration{0.0, 0.0, 0.0, 0.0};
};

} // namespace hrom
