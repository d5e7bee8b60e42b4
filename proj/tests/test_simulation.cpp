#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "hrom/simulation.hpp"

using namespace hrom;

namespace
{

std::string slurp(const std::filesystem::path & p)
{
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

} // namespace

TEST_CASE("initial posture rests on the ground")
{
  SimConfig c;
  const RobotState s = initial_state(c);
  for(LegId leg : kAllLegs) CHECK(std::abs(forward_kinematics(s, c.model, leg).z()) < 1e-15);
}

TEST_CASE("standing still settles under the weight")
{
  SimConfig c;
  c.duration = 1.0;
  c.desired_velocity.setZero();
  const RunResult r = run_scenario(c);
  REQUIRE_FALSE(r.fault);
  CHECK(r.metrics.max_xy_drift < 0.01);
  CHECK(r.metrics.mean_true_normal == doctest::Approx(78.48).epsilon(0.05));
}

TEST_CASE("marching in place does not wander")
{
  SimConfig c;
  c.desired_velocity.setZero();
  const RunResult r = run_scenario(c);
  REQUIRE_FALSE(r.fault);
  CHECK(r.metrics.max_xy_drift < 0.05);
  CHECK(r.metrics.min_margin > 0.0);
}

TEST_CASE("nominal walk moves forward within the friction limits")
{
  SimConfig c;
  const RunResult r = run_scenario(c);
  REQUIRE_FALSE(r.fault);
  CHECK(r.metrics.final_applied_speed == doctest::Approx(0.2));
  CHECK(r.metrics.mean_forward_speed > 0.1);
  CHECK(r.metrics.min_margin >= -0.5);
  CHECK(r.metrics.max_friction_excess <= 0.5);
  CHECK(r.metrics.observer_rms_normal < r.metrics.constrained_rms_normal);
}

TEST_CASE("logging interval and metadata")
{
  SimConfig c;
  c.duration = 0.1;
  const auto path = std::filesystem::temp_directory_path() / "hrom_test_sim.csv";
  const RunResult r = run_to_csv(c, path);
  CHECK(r.rows_logged == 20);
  const CsvTable t = read_csv(path);
  CHECK(t.rows.size() == 20);
  bool has_hash = false;
  for(const auto & [k, v] : t.metadata) has_hash |= (k == "config_hash");
  CHECK(has_hash);
  CHECK(t.rows[0][0] == doctest::Approx(10 * c.dt));

  c.full_rate = true;
  CHECK(run_to_csv(c, path).rows_logged == 200);
  std::filesystem::remove(path);
}

TEST_CASE("identical configs give identical logs")
{
  SimConfig c;
  c.duration = 1.0;
  c.observer.twist_noise = 1e-3;
  c.seed = 9;
  const auto a = std::filesystem::temp_directory_path() / "hrom_test_det_a.csv";
  const auto b = std::filesystem::temp_directory_path() / "hrom_test_det_b.csv";
  run_to_csv(c, a);
  run_to_csv(c, b);
  CHECK(slurp(a) == slurp(b));

  c.seed = 10;
  run_to_csv(c, b);
  CHECK(slurp(a) != slurp(b));
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

TEST_CASE("a diverging run stops with a fault record")
{
  SimConfig c;
  c.duration = 5.0;
  c.dt = 0.01;
  c.ground.stiffness = 1e7;  // far beyond the explicit stability limit at this step
  const auto path = std::filesystem::temp_directory_path() / "hrom_test_fault.csv";
  const RunResult r = run_to_csv(c, path);
  REQUIRE(r.fault);
  CHECK(r.fault->kind == FaultKind::NonFinite);
  const std::string text = slurp(path);
  CHECK(text.find("fault") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("simulation rejects an invalid config")
{
  SimConfig c;
  c.dt = 0.0;
  CHECK_THROWS_AS(Simulation{c}, ConfigError);
}
