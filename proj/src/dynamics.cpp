#include "hrom/dynamics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hrom/rotation.hpp"

namespace hrom
{

void ModelParams::validate() const
{
  if(!(mass > 0.0)) throw std::invalid_argument("model.mass must be positive");
  if(!inertia.allFinite() || (inertia - inertia.transpose()).norm() > 1e-12 * inertia.norm())
    throw std::invalid_argument("model.inertia must be symmetric");
  Eigen::SelfAdjointEigenSolver<Mat3> eig(inertia);
  if(eig.eigenvalues().minCoeff() <= 0.0) throw std::invalid_argument("model.inertia must be positive definite");
  if(!gravity.allFinite()) throw std::invalid_argument("model.gravity must be finite");
  if(!(max_thrust >= 0.0)) throw std::invalid_argument("model.max_thrust must be nonnegative");
  if(!(min_leg_length > 0.0 && min_leg_length < max_leg_length))
    throw std::invalid_argument("model leg length limits must satisfy 0 < min < max");
  for(const auto & v : hip_offsets)
    if(!v.allFinite()) throw std::invalid_argument("model.hip_offsets must be finite");
  for(const auto & v : thruster_offsets)
    if(!v.allFinite()) throw std::invalid_argument("model.thruster_offsets must be finite");
}

Vec3 leg_vector(const LegCoords & q)
{
  const double cg = std::cos(q.frontal);
  const double sg = std::sin(q.frontal);
  const double cp = std::cos(q.sagittal);
  const double sp = std::sin(q.sagittal);
  return {-q.length * sp * cg, q.length * sg, -q.length * cp * cg};
}

Mat3 leg_jacobian(const LegCoords & q)
{
  const double cg = std::cos(q.frontal);
  const double sg = std::sin(q.frontal);
  const double cp = std::cos(q.sagittal);
  const double sp = std::sin(q.sagittal);
  const double l = q.length;
  Mat3 j;
  j << l * sp * sg, -l * cp * cg, -sp * cg,
       l * cg, 0.0, sg,
       l * cp * sg, l * sp * cg, -cp * cg;
  return j;
}

Vec3 foot_offset(const RobotState & state, const ModelParams & params, LegId leg)
{
  return params.hip_offsets[index(leg)] + leg_vector(state.legs.coords(leg));
}

Vec3 forward_kinematics(const RobotState & state, const ModelParams & params, LegId leg)
{
  return state.pose.position + state.pose.rotation * foot_offset(state, params, leg);
}

namespace
{

Vec3 foot_offset_rate(const RobotState & state, LegId leg)
{
  return leg_jacobian(state.legs.coords(leg)) * state.legs.coord_rates(leg);
}

} // namespace

Vec3 foot_velocity(const RobotState & state, const ModelParams & params, LegId leg)
{
  const Vec3 r = foot_offset(state, params, leg);
  const Mat3 & rot = state.pose.rotation;
  return state.twist.linear + rot * (state.twist.angular.cross(r) + foot_offset_rate(state, leg));
}

Mat36 foot_velocity_jacobian(const RobotState & state, const ModelParams & params, LegId leg)
{
  Mat36 b;
  b.leftCols<3>().setIdentity();
  b.rightCols<3>() = -state.pose.rotation * skew(foot_offset(state, params, leg));
  return b;
}

Vec3 foot_jacobian_rate_times_twist(const RobotState & state, const ModelParams & params, LegId leg)
{
  // d/dt(-R [r]x) w = R (w x (w x r) + w x r_dot)
  const Vec3 & w = state.twist.angular;
  const Vec3 r = foot_offset(state, params, leg);
  return state.pose.rotation * (w.cross(w.cross(r)) + w.cross(foot_offset_rate(state, leg)));
}

Mat6 mass_matrix(const ModelParams & params)
{
  Mat6 m = Mat6::Zero();
  m.topLeftCorner<3, 3>() = params.mass * Mat3::Identity();
  m.bottomRightCorner<3, 3>() = params.inertia;
  return m;
}

Vec6 bias_vector(const RobotState & state, const ModelParams & params)
{
  const Vec3 & w = state.twist.angular;
  Vec6 h;
  h << -params.mass * params.gravity, w.cross(params.inertia * w);
  return h;
}

Wrench thruster_wrench(const Vec4 & thrusts, const RobotState & state, const ModelParams & params)
{
  Wrench w;
  w.force_frame = Frame::World;
  Vec3 body_force = Vec3::Zero();
  for(std::size_t i = 0; i < kNumLegs; ++i)
  {
    const double f = thrusts(static_cast<Eigen::Index>(i));
    if(!(f >= 0.0 && f <= params.max_thrust))
      throw std::invalid_argument("thrust " + std::to_string(i) + " = " + std::to_string(f) + " outside [0, "
                                  + std::to_string(params.max_thrust) + "]");
    const Vec3 fi(0.0, 0.0, f);
    body_force += fi;
    w.moment += params.thruster_offsets[i].cross(fi);
  }
  w.force = state.pose.rotation * body_force;
  return w;
}

Vec6 generalized_force(const Wrench & wrench, const Mat3 & rotation)
{
  Vec6 g;
  g << (wrench.force_frame == Frame::World ? wrench.force : Vec3(rotation * wrench.force)), wrench.moment;
  return g;
}

Vec6 generalized_grf(const RobotState & state, const ModelParams & params, const GrfSet & grf)
{
  Vec6 total = Vec6::Zero();
  for(LegId leg : kAllLegs)
  {
    const Vec3 & u = grf.force[index(leg)];
    if(u.isZero(0.0)) continue;
    total += foot_velocity_jacobian(state, params, leg).transpose() * u;
  }
  return total;
}

StateDerivative dynamics_rhs(const RobotState & state,
                             const ModelParams & params,
                             const GrfSet & grf,
                             const Vec6 & thrust,
                             const Vec12 & joint_accel)
{
  const Vec6 rhs = generalized_grf(state, params, grf) + thrust - bias_vector(state, params);

  StateDerivative d;
  d.position_rate = state.twist.linear;
  d.rotation_rate = state.pose.rotation * skew(state.twist.angular);
  // M is block diagonal, so the solve splits into the two 3x3 blocks.
  d.linear_accel = rhs.head<3>() / params.mass;
  d.angular_accel = params.inertia.llt().solve(rhs.tail<3>());
  d.joint_rate = state.legs.rate;
  d.joint_accel = joint_accel;
  return d;
}

double mechanical_energy(const RobotState & state, const ModelParams & params)
{
  const Vec3 & v = state.twist.linear;
  const Vec3 & w = state.twist.angular;
  return 0.5 * params.mass * v.squaredNorm() + 0.5 * w.dot(params.inertia * w)
         - params.mass * params.gravity.dot(state.pose.position);
}

Vec3 angular_momentum_world(const RobotState & state, const ModelParams & params)
{
  return state.pose.rotation * (params.inertia * state.twist.angular);
}

StateVector pack(const RobotState & s)
{
  StateVector x;
  x.segment<3>(0) = s.pose.position;
  x.segment<9>(3) = Eigen::Map<const Eigen::Matrix<double, 9, 1>>(s.pose.rotation.data());
  x.segment<3>(12) = s.twist.linear;
  x.segment<3>(15) = s.twist.angular;
  x.segment<12>(18) = s.legs.position;
  x.segment<12>(30) = s.legs.rate;
  return x;
}

StateVector pack(const StateDerivative & d)
{
  StateVector x;
  x.segment<3>(0) = d.position_rate;
  x.segment<9>(3) = Eigen::Map<const Eigen::Matrix<double, 9, 1>>(d.rotation_rate.data());
  x.segment<3>(12) = d.linear_accel;
  x.segment<3>(15) = d.angular_accel;
  x.segment<12>(18) = d.joint_rate;
  x.segment<12>(30) = d.joint_accel;
  return x;
}

RobotState unpack(const StateVector & x)
{
  RobotState s;
  s.pose.position = x.segment<3>(0);
  s.pose.rotation = Eigen::Map<const Mat3>(x.segment<9>(3).data());
  s.twist.linear = x.segment<3>(12);
  s.twist.angular = x.segment<3>(15);
  s.legs.position = x.segment<12>(18);
  s.legs.rate = x.segment<12>(30);
  return s;
}

} // namespace hrom
