#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "hrom/attitude.hpp"
#include "hrom/contact.hpp"
#include "hrom/erg.hpp"
#include "hrom/gait.hpp"
#include "hrom/types.hpp"

namespace hrom
{

class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct ObserverParams
{
  Vec6 gain = Vec6::Constant(1000.0);
  /// Standard deviation of additive noise on the twist fed to the estimators (0 disables).
  double twist_noise = 0.0;
};

struct SimConfig
{
  double dt = 5e-4;
  double duration = 10.0;
  Vec3 desired_velocity = Vec3(0.2, 0.0, 0.0);
  Vec3 attitude_reference = Vec3::Zero();

  ModelParams model;
  GroundParams ground;
  GaitSchedule gait;
  JointGains joint_gains;
  AttitudeGains attitude;
  ErgParams erg;
  FrictionConstraint friction;
  ObserverParams observer;

  std::string output_path = "hrom_log.csv";
  int decimate = 10;
  bool full_rate = false;
  std::uint64_t seed = 0;

  /// Throws ConfigError naming the first invalid field.
  void validate() const;

  int log_interval() const { return full_rate ? 1 : decimate; }
};

/// Parses a JSON scenario file. Missing keys keep their defaults; unknown keys are rejected.
SimConfig load_config(const std::filesystem::path & path);
SimConfig config_from_string(const std::string & text);

/// Effective configuration as pretty-printed JSON with every field present.
std::string config_to_string(const SimConfig & config);

/// FNV-1a hash of the compact JSON form of the effective configuration.
std::uint64_t config_hash(const SimConfig & config);

} // namespace hrom
