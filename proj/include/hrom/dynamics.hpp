#pragma once

#include "hrom/types.hpp"

namespace hrom
{

/// Hip-to-foot vector in the body frame: Ry(phi) Rx(gamma) [0, 0, -length].
Vec3 leg_vector(const LegCoords & q);

/// Partial derivatives of leg_vector with respect to (gamma, phi, length), one per column.
Mat3 leg_jacobian(const LegCoords & q);

/// Body-frame offset from the body origin to the foot.
Vec3 foot_offset(const RobotState & state, const ModelParams & params, LegId leg);

/// World-frame foot position.
Vec3 forward_kinematics(const RobotState & state, const ModelParams & params, LegId leg);

/// World-frame foot velocity including the contribution of the leg joint rates.
Vec3 foot_velocity(const RobotState & state, const ModelParams & params, LegId leg);

/// Sensitivity of the foot velocity to the body twist [p_dot; omega]: [I, -R [r]x].
Mat36 foot_velocity_jacobian(const RobotState & state, const ModelParams & params, LegId leg);

/// d/dt(foot_velocity_jacobian) * twist, i.e. the velocity-product part of the foot acceleration.
Vec3 foot_jacobian_rate_times_twist(const RobotState & state, const ModelParams & params, LegId leg);

/// blkdiag(m I3, I_B). Constant for the reduced-order model.
Mat6 mass_matrix(const ModelParams & params);

/// Gravity and gyroscopic terms, h = [-m g; omega x (I omega)].
Vec6 bias_vector(const RobotState & state, const ModelParams & params);

/// Wrench produced by four upward-only body-frame thrusters. Throws std::invalid_argument if any
/// thrust is negative or above params.max_thrust.
Wrench thruster_wrench(const Vec4 & thrusts, const RobotState & state, const ModelParams & params);

/// Generalized-force image [world force; body moment] of a wrench.
Vec6 generalized_force(const Wrench & wrench, const Mat3 & rotation);

/// Sum over feet of B_g^T u_g.
Vec6 generalized_grf(const RobotState & state, const ModelParams & params, const GrfSet & grf);

/// Full state derivative. `thrust` is the generalized thruster force (see generalized_force) and
/// `joint_accel` the commanded leg joint accelerations.
StateDerivative dynamics_rhs(const RobotState & state,
                             const ModelParams & params,
                             const GrfSet & grf,
                             const Vec6 & thrust,
                             const Vec12 & joint_accel);

double mechanical_energy(const RobotState & state, const ModelParams & params);
Vec3 angular_momentum_world(const RobotState & state, const ModelParams & params);

/// Flat state layout used by the integrator: [p, vec(R), p_dot, omega, q_L, q_L_dot].
inline constexpr int kStateSize = 42;
using StateVector = Eigen::Matrix<double, kStateSize, 1>;

StateVector pack(const RobotState & state);
StateVector pack(const StateDerivative & deriv);
RobotState unpack(const StateVector & x);

} // namespace hrom
