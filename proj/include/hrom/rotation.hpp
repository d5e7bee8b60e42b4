#pragma once

#include "hrom/types.hpp"

namespace hrom
{

Mat3 skew(const Vec3 & v);
Mat3 rot_x(double angle);
Mat3 rot_y(double angle);
Mat3 rot_z(double angle);

/// Nearest rotation matrix in the Frobenius sense (polar decomposition via SVD).
Mat3 nearest_rotation(const Mat3 & m);

/// Z-Y-X Euler angles returned as (roll, pitch, yaw) with R = Rz(yaw) Ry(pitch) Rx(roll).
Vec3 euler_zyx(const Mat3 & rotation);
Mat3 from_euler_zyx(const Vec3 & roll_pitch_yaw);

/// Maps Euler angle rates to body angular velocity: omega = E(rpy) * rpy_dot.
Mat3 euler_rate_to_body(const Vec3 & roll_pitch_yaw);

/// Euler angle rates for a body angular velocity. Singular at pitch = +-pi/2.
Vec3 euler_rates(const Vec3 & roll_pitch_yaw, const Vec3 & body_rate);

} // namespace hrom
