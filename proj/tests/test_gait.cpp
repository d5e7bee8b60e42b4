#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "fixtures.hpp"
#include "hrom/dynamics.hpp"
#include "hrom/gait.hpp"

using namespace hrom;

TEST_CASE("diagonal pairs alternate every half cycle")
{
  GaitSchedule sched;
  const StancePhase a = stance_pair(0.1, sched);
  CHECK(a.half_cycle == 0);
  CHECK(a.phase == doctest::Approx(0.25));
  CHECK(in_stance(a, LegId::FR));
  CHECK(in_stance(a, LegId::BL));
  CHECK_FALSE(in_stance(a, LegId::FL));

  const StancePhase b = stance_pair(0.5, sched);
  CHECK(b.half_cycle == 1);
  CHECK(in_stance(b, LegId::FL));
  CHECK(in_stance(b, LegId::BR));

  const StancePhase c = stance_pair(0.8, sched);
  CHECK(c.half_cycle == 2);
  CHECK(c.phase == doctest::Approx(0.0));
  CHECK(in_stance(c, LegId::FR));
}

TEST_CASE("raibert target")
{
  GaitSchedule sched;
  ModelParams params;
  RobotState s;
  s.pose.position = Vec3(1.0, 0.0, 0.3);
  s.twist.linear = Vec3(0.1, 0.0, 0.0);
  const Vec3 target = swing_foot_target(s, params, LegId::FR, Vec3(0.2, 0, 0), sched, 0.0);
  CHECK(target.x() == doctest::Approx(1.15 + 0.2 * 0.2 + 0.03 * (0.1 - 0.2)));
  CHECK(target.y() == doctest::Approx(-0.10));
  CHECK(target.z() == 0.0);
}

TEST_CASE("swing trajectory endpoints and apex")
{
  const Vec3 a(0, 0, 0);
  const Vec3 b(0.1, 0.02, 0.01);
  const SwingPoint start = swing_trajectory(0.0, a, b, 0.05, 0.4);
  const SwingPoint end = swing_trajectory(1.0, a, b, 0.05, 0.4);
  const SwingPoint mid = swing_trajectory(0.5, a, b, 0.05, 0.4);
  CHECK((start.position - a).norm() < 1e-15);
  CHECK((end.position - b).norm() < 1e-12);
  CHECK(start.velocity.norm() < 1e-12);
  CHECK(end.velocity.norm() < 1e-12);
  CHECK(mid.position.z() == doctest::Approx(0.06));
}

TEST_CASE("swing trajectory derivatives match finite differences")
{
  const Vec3 a(0.1, -0.1, 0.0);
  const Vec3 b(0.25, -0.08, 0.0);
  const double duration = 0.4;
  const double h = 1e-6;
  for(double s : {0.1, 0.3, 0.45, 0.55, 0.8})
  {
    const SwingPoint p = swing_trajectory(s, a, b, 0.05, duration);
    const SwingPoint plus = swing_trajectory(s + h, a, b, 0.05, duration);
    const SwingPoint minus = swing_trajectory(s - h, a, b, 0.05, duration);
    CHECK(((plus.position - minus.position) / (2 * h * duration) - p.velocity).norm() < 1e-6);
    CHECK(((plus.velocity - minus.velocity) / (2 * h * duration) - p.acceleration).norm() < 1e-4);
  }
}

TEST_CASE("inverse kinematics inverts forward kinematics")
{
  std::mt19937_64 rng(20);
  ModelParams params;
  std::uniform_real_distribution<double> ang(-1.0, 1.0);
  std::uniform_real_distribution<double> len(0.16, 0.44);
  double worst = 0.0;
  for(int i = 0; i < 1000; ++i)
  {
    RobotState s = test::random_state(rng);
    const LegId leg = kAllLegs[static_cast<std::size_t>(i % 4)];
    s.legs.set(leg, {ang(rng), ang(rng), len(rng)});
    const Vec3 target = forward_kinematics(s, params, leg);
    const IkResult ik = inverse_kinematics(target, s, params, leg);
    REQUIRE(ik.status == IkStatus::Ok);
    RobotState t = s;
    t.legs.set(leg, ik.coords);
    worst = std::max(worst, (forward_kinematics(t, params, leg) - target).norm());
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("unreachable targets are clamped and flagged")
{
  ModelParams params;
  BodyPose pose;
  pose.position = Vec3(0, 0, 1.0);
  const IkResult far = inverse_kinematics(Vec3(0.15, -0.1, 0.0), pose, params, LegId::FR);
  CHECK(far.status == IkStatus::Clamped);
  CHECK(far.coords.length == params.max_leg_length);

  const IkResult at_hip = inverse_kinematics(Vec3(0.15, -0.1, 1.0), pose, params, LegId::FR);
  CHECK(at_hip.status == IkStatus::Degenerate);
}

TEST_CASE("joint command is PD with feedforward")
{
  JointReference ref;
  ref.position.setConstant(1.0);
  ref.rate.setConstant(0.5);
  ref.accel.setConstant(2.0);
  LegJoints legs;
  const Vec12 u = joint_command(ref, legs, JointGains{400.0, 40.0});
  CHECK(u(0) == doctest::Approx(2.0 + 400.0 + 20.0));
}

TEST_CASE("planner holds stance feet and keeps the standing posture at zero velocity")
{
  ModelParams params;
  GaitSchedule sched;
  GaitPlanner planner(sched, JointGains{}, params, 0.0);
  RobotState s;
  s.pose.position = Vec3(0, 0, 0.3);
  for(LegId leg : kAllLegs) s.legs.set(leg, {0.0, 0.0, 0.3});
  planner.reset(s);

  const GaitPlanner::Output out = planner.update(0.0, s, Vec3::Zero(), 5e-4);
  CHECK(out.ik_flags == 0);
  for(LegId leg : out.phase.stance)
  {
    const LegCoords q = LegCoords::from(out.reference.position.segment<3>(3 * index(leg)));
    CHECK(q.length == doctest::Approx(0.3));
    CHECK(std::abs(q.sagittal) < 1e-12);
    CHECK(std::abs(q.frontal) < 1e-12);
  }

  const GaitPlanner::Output mid = planner.update(0.2, s, Vec3::Zero(), 5e-4);
  for(LegId leg : mid.phase.swing)
    CHECK(mid.foot_targets[index(leg)].z() == doctest::Approx(sched.swing_height));
}

TEST_CASE("swing legs land on their touchdown targets at the half cycle")
{
  ModelParams params;
  GaitSchedule sched;
  GaitPlanner planner(sched, JointGains{}, params, 0.0);
  RobotState s;
  s.pose.position = Vec3(0, 0, 0.3);
  for(LegId leg : kAllLegs) s.legs.set(leg, {0.0, 0.0, 0.3});
  planner.reset(s);
  const Vec3 v(0.2, 0, 0);
  GaitPlanner::Output last;
  for(double t = 0.0; t < 0.4 - 1e-9; t += 5e-4) last = planner.update(t, s, v, 5e-4);
  const GaitPlanner::Output next = planner.update(0.4, s, v, 5e-4);
  for(LegId leg : next.phase.stance)
    CHECK((planner.anchors()[index(leg)] - last.foot_targets[index(leg)]).norm() < 1e-6);
}
