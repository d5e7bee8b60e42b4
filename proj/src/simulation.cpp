#include "hrom/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "hrom/attitude.hpp"
#include "hrom/contact.hpp"
#include "hrom/integrator.hpp"
#include "hrom/rotation.hpp"

namespace hrom
{

std::string_view to_string(FaultKind kind)
{
  switch(kind)
  {
    case FaultKind::NonFinite: return "non_finite";
    case FaultKind::EulerSingularity: return "euler_singularity";
    case FaultKind::BelowGround: return "below_ground";
  }
  return "unknown";
}

RobotState integrate_step(const RobotState & state,
                          const ModelParams & model,
                          const GroundParams & ground,
                          const Vec4 & thrusts,
                          const Vec12 & joint_accel,
                          double dt)
{
  auto rhs = [&](const StateVector & x) -> StateVector {
    const RobotState s = unpack(x);
    const GrfSet grf = grf_all(s, model, ground);
    const Vec6 thrust = generalized_force(thruster_wrench(thrusts, s, model), s.pose.rotation);
    return pack(dynamics_rhs(s, model, grf, thrust, joint_accel));
  };
  RobotState next = unpack(rk4_step(rhs, pack(state), dt));
  next.pose.rotation = nearest_rotation(next.pose.rotation);
  return next;
}

RobotState initial_state(const SimConfig & config)
{
  RobotState s;
  s.pose.position = Vec3(0.0, 0.0, config.ground.height + config.gait.standing_height);
  for(LegId leg : kAllLegs)
  {
    const double hip_height = s.pose.position.z() + config.model.hip_offsets[index(leg)].z();
    s.legs.set(leg, LegCoords{0.0, 0.0, hip_height - config.ground.height});
  }
  return s;
}

namespace
{

SimConfig validated(SimConfig config)
{
  config.validate();
  return config;
}

} // namespace

Simulation::Simulation(SimConfig config)
: config_(validated(std::move(config))),
  state_(initial_state(config_)),
  governor_(config_.erg, config_.friction, config_.model),
  planner_(config_.gait, config_.joint_gains, config_.model, config_.ground.height),
  mass_(mass_matrix(config_.model)),
  rng_(config_.seed)
{
  governor_.reset(config_.desired_velocity, Vec3::Zero());
  planner_.reset(state_);
  observer_ = make_observer(config_.observer.gain, mass_, state_.twist.stacked(), bias_vector(state_, config_.model),
                            Vec6::Zero());
}

namespace
{

[[noreturn]] void fault(FaultKind kind, double t, const std::string & what)
{
  std::ostringstream msg;
  msg << to_string(kind) << " at t=" << t << " s: " << what;
  throw SimFaultError(SimFault{kind, t, msg.str()});
}

} // namespace

void Simulation::step()
{
  const ModelParams & model = config_.model;
  const double dt = config_.dt;

  // Governor against the current stance pair.
  const StancePhase phase = stance_pair(time_, config_.gait);
  const std::array<Vec3, 2> feet{forward_kinematics(state_, model, phase.stance[0]),
                                 forward_kinematics(state_, model, phase.stance[1])};
  const Wrench held_thrust = thruster_wrench(thrusts_, state_, model);
  const ReferenceGovernor::Step erg = governor_.update(state_, feet, held_thrust, dt);
  const Vec3 applied = governor_.state().applied;

  const GaitPlanner::Output gait = planner_.update(time_, state_, applied, dt);

  Vec3 rpy;
  Vec3 moment;
  try
  {
    rpy = euler_zyx(state_.pose.rotation);
    moment = attitude_wrench(rpy, euler_rates(rpy, state_.twist.angular), config_.attitude_reference, config_.attitude);
  }
  catch(const AttitudeSingularity & e)
  {
    fault(FaultKind::EulerSingularity, time_, e.what());
  }
  thrusts_ = allocate_thrusts(moment, model).thrusts;

  try
  {
    state_ = integrate_step(state_, model, config_.ground, thrusts_, gait.joint_accel, dt);
  }
  catch(const NonFiniteDerivative & e)
  {
    fault(FaultKind::NonFinite, time_, e.what());
  }
  time_ = static_cast<double>(++steps_) * dt;

  if(!pack(state_).allFinite()) fault(FaultKind::NonFinite, time_, "state is not finite");
  if(state_.pose.position.z() <= config_.ground.height) fault(FaultKind::BelowGround, time_, "body origin below ground");

  // Estimators: states, thruster inputs, model only.
  Vec6 twist = state_.twist.stacked();
  if(config_.observer.twist_noise > 0.0)
    for(int i = 0; i < 6; ++i) twist(i) += config_.observer.twist_noise * noise_(rng_);

  RobotState seen = state_;
  seen.twist.linear = twist.head<3>();
  seen.twist.angular = twist.tail<3>();
  const Vec6 bias = bias_vector(seen, model);
  const Vec6 thrust_gen = generalized_force(thruster_wrench(thrusts_, state_, model), state_.pose.rotation);
  observer_ = observer_step(observer_, twist, thrust_gen, bias, mass_, dt);

  std::vector<Mat36> jacobians;
  std::vector<Vec3> jacobian_rates;
  std::vector<LegId> contact_legs;
  for(LegId leg : kAllLegs)
  {
    if(forward_kinematics(seen, model, leg).z() > config_.ground.height) continue;
    contact_legs.push_back(leg);
    jacobians.push_back(foot_velocity_jacobian(seen, model, leg));
    jacobian_rates.push_back(foot_jacobian_rate_times_twist(seen, model, leg));
  }
  const PerFootForces observer_feet = per_foot_forces(observer_.residual, jacobians);
  const ConstrainedEstimate constrained = constrained_grf(thrust_gen, bias, mass_, jacobians, jacobian_rates);

  // Snapshot.
  const GrfSet truth = grf_all(state_, model, config_.ground);
  LogRecord & rec = record_;
  rec = LogRecord{};
  rec.time = time_;
  rec.position = state_.pose.position;
  rec.euler = euler_zyx(state_.pose.rotation);
  rec.linear_velocity = state_.twist.linear;
  rec.angular_velocity = state_.twist.angular;
  rec.applied_reference = applied;
  for(LegId leg : kAllLegs)
  {
    const std::size_t i = index(leg);
    rec.foot_position[i] = forward_kinematics(state_, model, leg);
    rec.true_grf[i] = truth.force[i];
    rec.contact[i] = truth.in_contact[i];
  }
  rec.true_generalized = generalized_grf(state_, model, truth);
  rec.residual = observer_.residual;
  for(std::size_t k = 0; k < contact_legs.size(); ++k)
  {
    const std::size_t i = index(contact_legs[k]);
    rec.observer_foot[i] = observer_feet.forces[k];
    rec.constrained_foot[i] = constrained.foot(k);
    rec.constrained_generalized += jacobians[k].transpose() * constrained.foot(k);
  }
  rec.thrusts = thrusts_;
  rec.margin = erg.margin;
  rec.stance_pair = static_cast<int>(phase.half_cycle % 2);
  predicted_normal_sum_ = erg.prediction.forces[0].z() + erg.prediction.forces[1].z();
}

namespace
{

double percentile(std::vector<double> sorted, double q)
{
  if(sorted.empty()) return 0.0;
  std::sort(sorted.begin(), sorted.end());
  const auto idx = static_cast<std::size_t>(std::clamp(q, 0.0, 1.0) * static_cast<double>(sorted.size() - 1));
  return sorted[idx];
}

std::size_t step_count(const SimConfig & config)
{
  return static_cast<std::size_t>(std::llround(config.duration / config.dt));
}

} // namespace

RunResult run_scenario(const SimConfig & config, const LogSink & sink)
{
  using clock = std::chrono::steady_clock;

  RunResult result;
  RunMetrics & m = result.metrics;
  Simulation sim(config);
  const Vec3 start = sim.state().pose.position;
  const std::size_t total = step_count(config);
  const int interval = config.log_interval();
  const double mu = config.friction.mu_static;

  std::vector<double> durations;
  durations.reserve(total);
  double obs_sq = 0.0;
  double cm_sq = 0.0;
  std::size_t err_samples = 0;
  double predicted_sum = 0.0;
  double true_sum = 0.0;
  m.min_margin = std::numeric_limits<double>::infinity();
  m.max_friction_excess = -std::numeric_limits<double>::infinity();

  for(std::size_t k = 0; k < total; ++k)
  {
    const auto t0 = clock::now();
    try
    {
      sim.step();
    }
    catch(const SimFaultError & e)
    {
      result.fault = e.fault();
      break;
    }
    durations.push_back(std::chrono::duration<double>(clock::now() - t0).count());

    const LogRecord & rec = sim.record();
    m.min_margin = std::min(m.min_margin, rec.margin);
    for(std::size_t i = 0; i < kNumLegs; ++i)
    {
      if(!rec.contact[i]) continue;
      const Vec3 & u = rec.true_grf[i];
      m.max_friction_excess =
          std::max({m.max_friction_excess, std::abs(u.x()) - mu * u.z(), std::abs(u.y()) - mu * u.z()});
    }
    m.max_xy_drift = std::max(m.max_xy_drift, (rec.position - start).head<2>().norm());
    m.peak_normal = std::max(m.peak_normal, rec.true_generalized(2));
    predicted_sum += sim.predicted_normal_sum();
    true_sum += rec.true_generalized(2);
    if(rec.time > kEstimatorTransient)
    {
      obs_sq += std::pow(rec.residual(2) - rec.true_generalized(2), 2);
      cm_sq += std::pow(rec.constrained_generalized(2) - rec.true_generalized(2), 2);
      ++err_samples;
    }

    if(sink && sim.steps() % static_cast<std::size_t>(interval) == 0)
    {
      sink(rec);
      ++result.rows_logged;
    }
  }

  m.steps = sim.steps();
  m.simulated_time = sim.time();
  if(m.steps > 0)
  {
    m.mean_forward_speed = (sim.state().pose.position.x() - start.x()) / sim.time();
    m.mean_predicted_normal = predicted_sum / static_cast<double>(m.steps);
    m.mean_true_normal = true_sum / static_cast<double>(m.steps);
    m.mean_step_seconds = std::accumulate(durations.begin(), durations.end(), 0.0) / static_cast<double>(durations.size());
    m.p50_step_seconds = percentile(durations, 0.5);
    m.p99_step_seconds = percentile(durations, 0.99);
  }
  else
  {
    m.min_margin = 0.0;
    m.max_friction_excess = 0.0;
  }
  if(!std::isfinite(m.max_friction_excess)) m.max_friction_excess = 0.0;
  if(err_samples > 0)
  {
    m.observer_rms_normal = std::sqrt(obs_sq / static_cast<double>(err_samples));
    m.constrained_rms_normal = std::sqrt(cm_sq / static_cast<double>(err_samples));
  }
  m.final_applied_speed = sim.governor_state().applied.x();
  return result;
}

RunResult run_to_csv(const SimConfig & config, const std::filesystem::path & path)
{
  std::ostringstream hash;
  hash << std::hex << config_hash(config);
  const std::vector<std::pair<std::string, std::string>> meta{
      {"hrom_sim_version", kVersion},
      {"config_hash", hash.str()},
      {"dt", format_double(config.dt)},
      {"log_interval", std::to_string(config.log_interval())},
      {"seed", std::to_string(config.seed)}};
  CsvLogWriter writer(path, meta);
  RunResult result = run_scenario(config, [&writer](const LogRecord & r) { writer.write(r); });
  if(result.fault)
    writer.comment("fault", std::string(to_string(result.fault->kind)) + " at t=" + format_double(result.fault->time));
  writer.flush();
  return result;
}

BenchResult bench(const SimConfig & config, std::size_t steps)
{
  using clock = std::chrono::steady_clock;
  Simulation sim(config);
  std::vector<double> durations;
  durations.reserve(steps);
  for(std::size_t k = 0; k < steps; ++k)
  {
    const auto t0 = clock::now();
    sim.step();
    durations.push_back(std::chrono::duration<double>(clock::now() - t0).count());
  }
  BenchResult out;
  out.steps = durations.size();
  if(durations.empty()) return out;
  out.mean_seconds = std::accumulate(durations.begin(), durations.end(), 0.0) / static_cast<double>(durations.size());
  out.p50_seconds = percentile(durations, 0.5);
  out.p95_seconds = percentile(durations, 0.95);
  out.p99_seconds = percentile(durations, 0.99);
  out.max_seconds = *std::max_element(durations.begin(), durations.end());
  return out;
}

} // namespace hrom
