#include "hrom/rotation.hpp"

#include <algorithm>
#include <cmath>

namespace hrom
{

Mat3 skew(const Vec3 & v)
{
  Mat3 s;
  s << 0.0, -v.z(), v.y(), v.z(), 0.0, -v.x(), -v.y(), v.x(), 0.0;
  return s;
}

Mat3 rot_x(double angle)
{
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Mat3 r;
  r << 1.0, 0.0, 0.0, 0.0, c, -s, 0.0, s, c;
  return r;
}

Mat3 rot_y(double angle)
{
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Mat3 r;
  r << c, 0.0, s, 0.0, 1.0, 0.0, -s, 0.0, c;
  return r;
}

Mat3 rot_z(double angle)
{
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Mat3 r;
  r << c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0;
  return r;
}

Mat3 nearest_rotation(const Mat3 & m)
{
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 d = Mat3::Identity();
  d(2, 2) = (svd.matrixU() * svd.matrixV().transpose()).determinant() < 0.0 ? -1.0 : 1.0;
  return svd.matrixU() * d * svd.matrixV().transpose();
}

Vec3 euler_zyx(const Mat3 & r)
{
  const double pitch = std::asin(std::clamp(-r(2, 0), -1.0, 1.0));
  const double roll = std::atan2(r(2, 1), r(2, 2));
  const double yaw = std::atan2(r(1, 0), r(0, 0));
  return {roll, pitch, yaw};
}

Mat3 from_euler_zyx(const Vec3 & rpy)
{
  return rot_z(rpy.z()) * rot_y(rpy.y()) * rot_x(rpy.x());
}

Mat3 euler_rate_to_body(const Vec3 & rpy)
{
  const double cr = std::cos(rpy.x());
  const double sr = std::sin(rpy.x());
  const double cp = std::cos(rpy.y());
  const double sp = std::sin(rpy.y());
  Mat3 e;
  e << 1.0, 0.0, -sp, 0.0, cr, sr * cp, 0.0, -sr, cr * cp;
  return e;
}

Vec3 euler_rates(const Vec3 & rpy, const Vec3 & body_rate)
{
  return euler_rate_to_body(rpy).inverse() * body_rate;
}

} // namespace hrom
