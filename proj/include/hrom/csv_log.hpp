#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "hrom/types.hpp"

namespace hrom
{

/// One logged sample. Feet are ordered FR, FL, BR, BL throughout.
struct LogRecord
{
  double time = 0.0;
  Vec3 position = Vec3::Zero();
  Vec3 euler = Vec3::Zero();  // roll, pitch, yaw
  Vec3 linear_velocity = Vec3::Zero();
  Vec3 angular_velocity = Vec3::Zero();
  Vec3 applied_reference = Vec3::Zero();
  std::array<Vec3, kNumLegs> foot_position{};
  std::array<Vec3, kNumLegs> true_grf{};
  std::array<bool, kNumLegs> contact{};
  Vec6 true_generalized = Vec6::Zero();
  Vec6 residual = Vec6::Zero();
  std::array<Vec3, kNumLegs> observer_foot{};
  std::array<Vec3, kNumLegs> constrained_foot{};
  Vec6 constrained_generalized = Vec6::Zero();
  Vec4 thrusts = Vec4::Zero();
  double margin = 0.0;
  int stance_pair = 0;

  /// Column names, in the order produced by values().
  static const std::vector<std::string> & columns();
  std::vector<double> values() const;
};

/// Streams records to a CSV file: `#`-prefixed metadata lines, a header row, one row per record.
/// Numbers are written in shortest round-trip form.
class CsvLogWriter
{
public:
  CsvLogWriter(const std::filesystem::path & path, std::span<const std::pair<std::string, std::string>> metadata);

  void write(const LogRecord & record);
  /// Appends a `# key: value` line after the rows written so far.
  void comment(const std::string & key, const std::string & value);
  void flush();
  std::size_t rows() const { return rows_; }

private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::string line_;
  std::size_t rows_ = 0;
};

/// Writes a complete log. Throws std::runtime_error with the path on I/O failure.
void write_csv(std::span<const LogRecord> records,
               const std::filesystem::path & path,
               std::span<const std::pair<std::string, std::string>> metadata = {});

struct CsvTable
{
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

CsvTable read_csv(const std::filesystem::path & path);

std::string format_double(double value);

} // namespace hrom
