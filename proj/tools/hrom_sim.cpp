// Command-line front end: run a scenario to CSV, validate a config, or time the control loop.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hrom/config.hpp"
#include "hrom/simulation.hpp"

namespace
{

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitFault = 3;

hrom::SimConfig load_or_default(const std::string & path)
{
  return path.empty() ? hrom::SimConfig{} : hrom::load_config(path);
}

void print_metrics(const hrom::RunMetrics & m)
{
  std::printf("steps                 %zu\n", m.steps);
  std::printf("simulated_time_s      %.4f\n", m.simulated_time);
  std::printf("mean_forward_speed    %.5f m/s\n", m.mean_forward_speed);
  std::printf("final_applied_speed   %.5f m/s\n", m.final_applied_speed);
  std::printf("min_governor_margin   %.5f N\n", m.min_margin);
  std::printf("max_friction_excess   %.5f N\n", m.max_friction_excess);
  std::printf("max_xy_drift          %.5f m\n", m.max_xy_drift);
  std::printf("observer_rms_normal   %.5f N\n", m.observer_rms_normal);
  std::printf("constrained_rms_normal %.5f N\n", m.constrained_rms_normal);
  std::printf("peak_normal           %.5f N\n", m.peak_normal);
  std::printf("mean_step_time        %.3f us\n", 1e6 * m.mean_step_seconds);
  std::printf("p99_step_time         %.3f us\n", 1e6 * m.p99_step_seconds);
}

} // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Reduced-order thruster-assisted quadruped simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::optional<double> duration;
  std::optional<std::string> out_path;
  std::optional<int> decimate;
  bool full_rate = false;
  std::optional<std::uint64_t> seed;

  auto * run = app.add_subcommand("run", "Run a scenario and write the CSV log");
  run->add_option("--config", config_path, "Scenario JSON file")->required();
  run->add_option("--duration", duration, "Override duration [s]");
  run->add_option("--out", out_path, "Output CSV path");
  run->add_option("--decimate", decimate, "Log every N steps");
  run->add_flag("--full-rate", full_rate, "Log every step");
  run->add_option("--seed", seed, "RNG seed");

  auto * validate = app.add_subcommand("validate", "Check a scenario file and print the effective config");
  validate->add_option("--config", config_path, "Scenario JSON file")->required();

  std::size_t bench_steps = 20000;
  auto * bench = app.add_subcommand("bench", "Report control-loop step wall time");
  bench->add_option("--config", config_path, "Scenario JSON file (defaults to the nominal scenario)");
  bench->add_option("--steps", bench_steps, "Number of steps to time");

  CLI11_PARSE(app, argc, argv);

  hrom::SimConfig config;
  try
  {
    config = load_or_default(config_path);
    if(duration) config.duration = *duration;
    if(out_path) config.output_path = *out_path;
    if(decimate) config.decimate = *decimate;
    if(full_rate) config.full_rate = true;
    if(seed) config.seed = *seed;
    config.validate();
  }
  catch(const hrom::ConfigError & e)
  {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  }

  if(*validate)
  {
    std::cout << hrom::config_to_string(config) << '\n';
    std::printf("config_hash %016llx\n", static_cast<unsigned long long>(hrom::config_hash(config)));
    return kExitOk;
  }

  if(*bench)
  {
    try
    {
      const hrom::BenchResult b = hrom::bench(config, bench_steps);
      std::printf("steps      %zu\n", b.steps);
      std::printf("mean_us    %.3f\n", 1e6 * b.mean_seconds);
      std::printf("p50_us     %.3f\n", 1e6 * b.p50_seconds);
      std::printf("p95_us     %.3f\n", 1e6 * b.p95_seconds);
      std::printf("p99_us     %.3f\n", 1e6 * b.p99_seconds);
      std::printf("max_us     %.3f\n", 1e6 * b.max_seconds);
      std::printf("rate_hz    %.1f\n", b.mean_seconds > 0.0 ? 1.0 / b.mean_seconds : 0.0);
    }
    catch(const hrom::SimFaultError & e)
    {
      std::cerr << "sim fault: " << e.what() << '\n';
      return kExitFault;
    }
    return kExitOk;
  }

  hrom::RunResult result;
  try
  {
    result = hrom::run_to_csv(config, config.output_path);
  }
  catch(const std::runtime_error & e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  print_metrics(result.metrics);
  std::printf("rows_logged           %zu -> %s\n", result.rows_logged, config.output_path.c_str());
  if(result.fault)
  {
    std::cerr << "sim fault: " << result.fault->message << '\n';
    return kExitFault;
  }
  return kExitOk;
}
