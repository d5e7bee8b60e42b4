#include <numbers>

#include <doctest.h>

#include "hrom/attitude.hpp"

using namespace hrom;

TEST_CASE("PD law damps the angle rate")
{
  AttitudeGains g;
  const Vec3 m = attitude_wrench(Vec3(0.1, -0.05, 0.3), Vec3(0.5, 0.2, 1.0), Vec3::Zero(), g);
  CHECK(m.x() == doctest::Approx(-60.0 * 0.1 - 8.0 * 0.5));
  CHECK(m.y() == doctest::Approx(60.0 * 0.05 - 8.0 * 0.2));
  CHECK(m.z() == 0.0);
}

TEST_CASE("gimbal lock is reported")
{
  AttitudeGains g;
  CHECK_THROWS_AS(attitude_wrench(Vec3(0, 0.5 * std::numbers::pi, 0), Vec3::Zero(), Vec3::Zero(), g),
                  AttitudeSingularity);
  CHECK_NOTHROW(attitude_wrench(Vec3(0, 1.5, 0), Vec3::Zero(), Vec3::Zero(), g));
}

TEST_CASE("moment map is r x z")
{
  ModelParams p;
  const auto a = thruster_moment_map(p);
  CHECK(a.col(0).isApprox(Vec3(-0.15, -0.15, 0.0)));
  CHECK(a.row(2).isZero());
}

TEST_CASE("allocation realizes feasible roll and pitch demands")
{
  ModelParams p;
  const auto a = thruster_moment_map(p);
  // Positive thrusts exist for this demand: push with the left pair only.
  const Vec4 t(0.0, 10.0, 0.0, 10.0);
  const Vec3 demand = a * t;
  const ThrustAllocation alloc = allocate_thrusts(demand, p);
  CHECK((alloc.thrusts.array() >= 0.0).all());
  CHECK((alloc.thrusts.array() <= p.max_thrust).all());
  // The minimum-norm solution is differential, so clamping keeps half of the demand.
  CHECK(alloc.residual.head<2>().norm() <= demand.head<2>().norm() + 1e-12);
  CHECK((a * alloc.thrusts + alloc.residual - demand).norm() < 1e-12);
}

TEST_CASE("yaw demand stays in the residual")
{
  ModelParams p;
  const ThrustAllocation alloc = allocate_thrusts(Vec3(0, 0, 2.0), p);
  CHECK(alloc.thrusts.isZero());
  CHECK(alloc.residual.z() == doctest::Approx(2.0));
}

TEST_CASE("allocation saturates at the thrust limit")
{
  ModelParams p;
  const ThrustAllocation alloc = allocate_thrusts(Vec3(1000.0, 0, 0), p);
  CHECK(alloc.thrusts.maxCoeff() == doctest::Approx(p.max_thrust));
  CHECK(alloc.thrusts.minCoeff() == 0.0);
}
