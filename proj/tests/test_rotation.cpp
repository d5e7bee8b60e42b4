#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "fixtures.hpp"
#include "hrom/rotation.hpp"

using namespace hrom;

TEST_CASE("skew matches the cross product")
{
  std::mt19937_64 rng(1);
  for(int i = 0; i < 20; ++i)
  {
    const Vec3 a = test::random_vec(rng, -2, 2);
    const Vec3 b = test::random_vec(rng, -2, 2);
    CHECK((skew(a) * b - a.cross(b)).norm() < 1e-14);
  }
}

TEST_CASE("elementary rotations agree with angle-axis")
{
  const double a = 0.7;
  CHECK(rot_x(a).isApprox(Eigen::AngleAxisd(a, Vec3::UnitX()).toRotationMatrix(), 1e-14));
  CHECK(rot_y(a).isApprox(Eigen::AngleAxisd(a, Vec3::UnitY()).toRotationMatrix(), 1e-14));
  CHECK(rot_z(a).isApprox(Eigen::AngleAxisd(a, Vec3::UnitZ()).toRotationMatrix(), 1e-14));
}

TEST_CASE("euler angles round trip away from gimbal lock")
{
  std::mt19937_64 rng(2);
  for(int i = 0; i < 200; ++i)
  {
    Vec3 rpy = test::random_vec(rng, -3.0, 3.0);
    rpy.y() = std::uniform_real_distribution<double>(-1.4, 1.4)(rng);
    const Mat3 r = from_euler_zyx(rpy);
    CHECK(r.isApprox(rot_z(rpy.z()) * rot_y(rpy.y()) * rot_x(rpy.x()), 1e-14));
    CHECK((euler_zyx(r) - rpy).norm() < 1e-12);
  }
}

TEST_CASE("nearest rotation restores orthonormality")
{
  std::mt19937_64 rng(3);
  const Mat3 r = from_euler_zyx(Vec3(0.3, -0.2, 1.1));
  Mat3 noisy = r;
  for(int i = 0; i < 9; ++i) noisy.data()[i] += 1e-4 * std::normal_distribution<double>()(rng);
  const Mat3 fixed = nearest_rotation(noisy);
  CHECK((fixed.transpose() * fixed - Mat3::Identity()).norm() < 1e-12);
  CHECK(std::abs(fixed.determinant() - 1.0) < 1e-12);
  CHECK((fixed - r).norm() < 1e-3);
  CHECK(nearest_rotation(r).isApprox(r, 1e-14));
}

TEST_CASE("euler rates reproduce the rotation derivative")
{
  std::mt19937_64 rng(4);
  for(int i = 0; i < 50; ++i)
  {
    const Vec3 rpy = test::random_vec(rng, -1.0, 1.0);
    const Vec3 omega = test::random_vec(rng, -2.0, 2.0);
    const Vec3 rates = euler_rates(rpy, omega);
    CHECK((euler_rate_to_body(rpy) * rates - omega).norm() < 1e-12);

    const double h = 1e-6;
    const Mat3 dr = (from_euler_zyx(rpy + h * rates) - from_euler_zyx(rpy - h * rates)) / (2 * h);
    CHECK((dr - from_euler_zyx(rpy) * skew(omega)).norm() < 1e-7);
  }
}
