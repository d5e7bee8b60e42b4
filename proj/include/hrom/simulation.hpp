#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "hrom/config.hpp"
#include "hrom/csv_log.hpp"
#include "hrom/dynamics.hpp"
#include "hrom/erg.hpp"
#include "hrom/estimation.hpp"
#include "hrom/gait.hpp"

namespace hrom
{

enum class FaultKind
{
  NonFinite,
  EulerSingularity,
  BelowGround
};

std::string_view to_string(FaultKind kind);

struct SimFault
{
  FaultKind kind = FaultKind::NonFinite;
  double time = 0.0;
  std::string message;
};

class SimFaultError : public std::runtime_error
{
public:
  explicit SimFaultError(SimFault fault) : std::runtime_error(fault.message), fault_(std::move(fault)) {}
  const SimFault & fault() const { return fault_; }

private:
  SimFault fault_;
};

/// One integration step with the control inputs held: thrusts and joint accelerations are constant
/// across the RK4 stages, contact forces are re-evaluated at every stage. The rotation is projected
/// back onto SO(3) afterwards.
RobotState integrate_step(const RobotState & state,
                          const ModelParams & model,
                          const GroundParams & ground,
                          const Vec4 & thrusts,
                          const Vec12 & joint_accel,
                          double dt);

/// Standing posture: body at the standing height, legs vertical, feet touching the ground.
RobotState initial_state(const SimConfig & config);

/// Closed-loop simulation: governor, gait planner, attitude control, plant, and both estimators.
/// Estimators see states, thruster inputs, and model parameters only.
class Simulation
{
public:
  explicit Simulation(SimConfig config);

  /// Advances one control period. Throws SimFaultError.
  void step();

  const RobotState & state() const { return state_; }
  double time() const { return time_; }
  std::size_t steps() const { return steps_; }
  const SimConfig & config() const { return config_; }

  /// Snapshot of the most recent step for logging.
  const LogRecord & record() const { return record_; }

  /// Predicted stance normal forces at the most recent step (sum over both feet).
  double predicted_normal_sum() const { return predicted_normal_sum_; }
  const ErgState & governor_state() const { return governor_.state(); }

private:
  SimConfig config_;
  RobotState state_;
  double time_ = 0.0;
  std::size_t steps_ = 0;

  ReferenceGovernor governor_;
  GaitPlanner planner_;
  ObserverState observer_;
  Mat6 mass_;
  Vec4 thrusts_ = Vec4::Zero();
  std::mt19937_64 rng_;
  std::normal_distribution<double> noise_{0.0, 1.0};

  LogRecord record_;
  double predicted_normal_sum_ = 0.0;
};

struct RunMetrics
{
  std::size_t steps = 0;
  double simulated_time = 0.0;
  double mean_forward_speed = 0.0;
  /// Smallest governor constraint margin over all steps [N].
  double min_margin = 0.0;
  /// Largest excess of |u_x| or |u_y| over mu_s u_z among true in-contact foot forces [N].
  double max_friction_excess = 0.0;
  double max_xy_drift = 0.0;
  /// Normal-direction generalized force RMS errors after the transient window [N].
  double observer_rms_normal = 0.0;
  double constrained_rms_normal = 0.0;
  double peak_normal = 0.0;
  double mean_predicted_normal = 0.0;
  double mean_true_normal = 0.0;
  double final_applied_speed = 0.0;
  /// Wall-clock time of control, integration, and estimation per step, excluding logging [s].
  double mean_step_seconds = 0.0;
  double p50_step_seconds = 0.0;
  double p99_step_seconds = 0.0;
};

struct RunResult
{
  RunMetrics metrics;
  std::optional<SimFault> fault;
  std::size_t rows_logged = 0;
};

using LogSink = std::function<void(const LogRecord &)>;

inline constexpr double kEstimatorTransient = 0.05;

/// Runs the configured scenario, emitting a record every config.log_interval() steps.
RunResult run_scenario(const SimConfig & config, const LogSink & sink = {});

/// Runs a scenario straight into a CSV file with config metadata.
RunResult run_to_csv(const SimConfig & config, const std::filesystem::path & path);

struct BenchResult
{
  std::size_t steps = 0;
  double mean_seconds = 0.0;
  double p50_seconds = 0.0;
  double p95_seconds = 0.0;
  double p99_seconds = 0.0;
  double max_seconds = 0.0;
};

/// Times `steps` closed-loop steps of the configured scenario without logging.
BenchResult bench(const SimConfig & config, std::size_t steps);

inline constexpr const char * kVersion = "1.0.0";

} // namespace hrom
