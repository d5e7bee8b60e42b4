#include <cmath>
#include <random>

#include <doctest.h>

#include "fixtures.hpp"
#include "hrom/erg.hpp"

using namespace hrom;

namespace
{

RobotState standing()
{
  RobotState s;
  s.pose.position = Vec3(0, 0, 0.3);
  return s;
}

const std::array<Vec3, 2> kDiagonal{Vec3(0.15, -0.10, 0.0), Vec3(-0.15, 0.10, 0.0)};

} // namespace

TEST_CASE("static two-point support shares the weight equally")
{
  ModelParams p;
  const GrfPrediction g = predicted_grf(standing(), kDiagonal, Wrench{}, Vec3::Zero(), p, 0.2);
  REQUIRE(g.valid);
  for(const Vec3 & f : g.forces)
  {
    CHECK(f.z() == doctest::Approx(39.24));
    CHECK(std::abs(f.x()) < 1e-12);
    CHECK(std::abs(f.y()) < 1e-12);
  }
}

TEST_CASE("prediction satisfies force balance and moment balance off the support line")
{
  std::mt19937_64 rng(30);
  ModelParams p;
  for(int i = 0; i < 50; ++i)
  {
    RobotState s = standing();
    s.pose.position += test::random_vec(rng, -0.03, 0.03);
    s.twist.linear = test::random_vec(rng, -0.2, 0.2);
    const std::array<Vec3, 2> feet{kDiagonal[0] + test::random_vec(rng, -0.05, 0.05).cwiseProduct(Vec3(1, 1, 0)),
                                   kDiagonal[1] + test::random_vec(rng, -0.05, 0.05).cwiseProduct(Vec3(1, 1, 0))};
    Wrench thrust;
    thrust.force = Vec3(0, 0, 10.0);
    thrust.moment = test::random_vec(rng, -0.5, 0.5);
    thrust.force_frame = Frame::Body;
    const Vec3 cmd(0.2, 0.0, 0.0);
    const GrfPrediction g = predicted_grf(s, feet, thrust, cmd, p, 0.2);
    REQUIRE(g.valid);

    const Vec3 accel = (cmd - s.twist.linear) / 0.2;
    const Vec3 net = g.forces[0] + g.forces[1] + s.pose.rotation * thrust.force + p.mass * p.gravity;
    CHECK((net - p.mass * accel).norm() < 1e-9);

    const Vec3 r1 = feet[0] - s.pose.position;
    const Vec3 r2 = feet[1] - s.pose.position;
    const Vec3 moment = r1.cross(g.forces[0]) + r2.cross(g.forces[1]) + s.pose.rotation * thrust.moment;
    const Vec3 e = (r2 - r1).normalized();
    CHECK((moment - e * e.dot(moment)).norm() < 1e-9);
    CHECK(std::abs(e.dot(g.forces[0] - g.forces[1])) < 1e-9);
  }
}

TEST_CASE("coincident feet give no prediction")
{
  ModelParams p;
  const GrfPrediction g = predicted_grf(standing(), {Vec3::Zero(), Vec3::Zero()}, Wrench{}, Vec3::Zero(), p, 0.2);
  CHECK_FALSE(g.valid);
}

TEST_CASE("friction rows")
{
  FrictionConstraint c;
  const Vec3 rows = friction_rows(Vec3(2.0, -3.0, 40.0), c);
  CHECK(rows(0) == doctest::Approx(10.0 - 2.0));
  CHECK(rows(1) == doctest::Approx(10.0 - 3.0));
  CHECK(rows(2) == doctest::Approx(35.0));
  CHECK(constraint_margin(Vec3(2.0, -3.0, 40.0), c) == doctest::Approx(7.0));
  CHECK(constraint_margin(Vec3(12.0, 0.0, 40.0), c) == doctest::Approx(-2.0));
  CHECK(constraint_margin(std::array<Vec3, 2>{Vec3(0, 0, 40), Vec3(0, 0, 3)}, c) == doctest::Approx(-2.0));
}

TEST_CASE("governor invariants")
{
  std::mt19937_64 rng(31);
  ErgParams params;
  std::uniform_real_distribution<double> margin(-5.0, 20.0);
  for(int i = 0; i < 1000; ++i)
  {
    ErgState s;
    s.desired = test::random_vec(rng, -1.0, 1.0);
    s.applied = test::random_vec(rng, -1.0, 1.0);
    const double m = margin(rng);
    const double dt = 5e-4;
    const ErgState n = governor_update(s, m, dt, params);
    const double before = (s.desired - s.applied).norm();
    const double after = (n.desired - n.applied).norm();
    CHECK(n.desired == s.desired);
    CHECK(n.margin == m);
    CHECK(after <= before + 1e-15);
    CHECK((n.applied - s.applied).norm() <= params.kappa * dt + 1e-15);
    if(m <= 0.0) CHECK(n.applied == s.applied);
    // Motion is along the straight line to the desired reference.
    const Vec3 moved = n.applied - s.applied;
    if(moved.norm() > 0.0) CHECK(moved.normalized().dot((s.desired - s.applied).normalized()) == doctest::Approx(1.0));
  }
}

TEST_CASE("governor reaches the desired reference without overshoot")
{
  ErgParams params;
  ErgState s;
  s.desired = Vec3(0.2, 0, 0);
  int steps = 0;
  while(s.applied != s.desired && steps < 10000)
  {
    s = governor_update(s, 100.0, 5e-4, params);
    CHECK(s.applied.x() <= 0.2);
    ++steps;
  }
  CHECK(s.applied == s.desired);
  CHECK(steps == 200);
}

TEST_CASE("reference governor refuses a reference that would violate friction")
{
  ModelParams model;
  ErgParams params;
  params.kappa = 1000.0;  // a single step would jump straight to the desired reference
  FrictionConstraint c;
  ReferenceGovernor gov(params, c, model);
  gov.reset(Vec3(2.0, 0, 0), Vec3::Zero());
  const ReferenceGovernor::Step step = gov.update(standing(), kDiagonal, Wrench{}, 5e-4);
  CHECK(step.margin > 0.0);
  CHECK_FALSE(step.accepted);
  CHECK(gov.state().applied.isZero());

  gov.reset(Vec3(0.05, 0, 0), Vec3::Zero());
  const ReferenceGovernor::Step ok = gov.update(standing(), kDiagonal, Wrench{}, 5e-4);
  CHECK(ok.accepted);
  CHECK(gov.state().applied.x() > 0.0);
}

TEST_CASE("reference governor holds the last prediction through a singular support")
{
  ModelParams model;
  ReferenceGovernor gov(ErgParams{}, FrictionConstraint{}, model);
  gov.reset(Vec3(0.2, 0, 0), Vec3::Zero());
  const ReferenceGovernor::Step first = gov.update(standing(), kDiagonal, Wrench{}, 5e-4);
  REQUIRE_FALSE(first.singular);
  const ReferenceGovernor::Step second = gov.update(standing(), {Vec3::Zero(), Vec3::Zero()}, Wrench{}, 5e-4);
  CHECK(second.singular);
  CHECK(second.prediction.forces[0] == first.prediction.forces[0]);
}
