#include "hrom/csv_log.hpp"

#include <charconv>
#include <stdexcept>
#include <system_error>

namespace hrom
{

namespace
{

void add3(std::vector<std::string> & cols, const std::string & prefix)
{
  for(const char * axis : {"x", "y", "z"}) cols.push_back(prefix + "_" + axis);
}

void add_n(std::vector<std::string> & cols, const std::string & prefix, int n)
{
  for(int i = 0; i < n; ++i) cols.push_back(prefix + "_" + std::to_string(i));
}

std::vector<std::string> make_columns()
{
  std::vector<std::string> c{"time"};
  add3(c, "p");
  c.insert(c.end(), {"roll", "pitch", "yaw"});
  add3(c, "v");
  add3(c, "w");
  add3(c, "xw");
  for(LegId leg : kAllLegs) add3(c, "foot_" + std::string(name(leg)));
  for(LegId leg : kAllLegs) add3(c, "grf_" + std::string(name(leg)));
  for(LegId leg : kAllLegs) c.push_back("contact_" + std::string(name(leg)));
  add_n(c, "gen_true", 6);
  add_n(c, "residual", 6);
  for(LegId leg : kAllLegs) add3(c, "obs_" + std::string(name(leg)));
  for(LegId leg : kAllLegs) add3(c, "cm_" + std::string(name(leg)));
  add_n(c, "gen_cm", 6);
  add_n(c, "thrust", 4);
  c.push_back("margin");
  c.push_back("stance_pair");
  return c;
}

template<typename Derived>
void append(std::vector<double> & out, const Eigen::MatrixBase<Derived> & v)
{
  for(Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
}

} // namespace

const std::vector<std::string> & LogRecord::columns()
{
  static const std::vector<std::string> cols = make_columns();
  return cols;
}

std::vector<double> LogRecord::values() const
{
  std::vector<double> v;
  v.reserve(columns().size());
  v.push_back(time);
  append(v, position);
  append(v, euler);
  append(v, linear_velocity);
  append(v, angular_velocity);
  append(v, applied_reference);
  for(const auto & p : foot_position) append(v, p);
  for(const auto & f : true_grf) append(v, f);
  for(bool c : contact) v.push_back(c ? 1.0 : 0.0);
  append(v, true_generalized);
  append(v, residual);
  for(const auto & f : observer_foot) append(v, f);
  for(const auto & f : constrained_foot) append(v, f);
  append(v, constrained_generalized);
  append(v, thrusts);
  v.push_back(margin);
  v.push_back(static_cast<double>(stance_pair));
  return v;
}

std::string format_double(double value)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

CsvLogWriter::CsvLogWriter(const std::filesystem::path & path,
                           std::span<const std::pair<std::string, std::string>> metadata)
: path_(path), out_(path, std::ios::out | std::ios::trunc)
{
  if(!out_) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  for(const auto & [key, value] : metadata) out_ << "# " << key << ": " << value << '\n';
  const auto & cols = LogRecord::columns();
  for(std::size_t i = 0; i < cols.size(); ++i) out_ << (i ? "," : "") << cols[i];
  out_ << '\n';
  if(!out_) throw std::runtime_error("write failed for '" + path.string() + "'");
}

void CsvLogWriter::write(const LogRecord & record)
{
  line_.clear();
  const std::vector<double> vals = record.values();
  for(std::size_t i = 0; i < vals.size(); ++i)
  {
    if(i) line_ += ',';
    line_ += format_double(vals[i]);
  }
  line_ += '\n';
  out_ << line_;
  if(!out_) throw std::runtime_error("write failed for '" + path_.string() + "'");
  ++rows_;
}

void CsvLogWriter::comment(const std::string & key, const std::string & value)
{
  out_ << "# " << key << ": " << value << '\n';
  if(!out_) throw std::runtime_error("write failed for '" + path_.string() + "'");
}

void CsvLogWriter::flush()
{
  out_.flush();
  if(!out_) throw std::runtime_error("flush failed for '" + path_.string() + "'");
}

void write_csv(std::span<const LogRecord> records,
               const std::filesystem::path & path,
               std::span<const std::pair<std::string, std::string>> metadata)
{
  CsvLogWriter writer(path, metadata);
  for(const auto & r : records) writer.write(r);
  writer.flush();
}

CsvTable read_csv(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if(!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");

  CsvTable table;
  std::string line;
  bool have_header = false;
  std::size_t line_no = 0;
  while(std::getline(in, line))
  {
    ++line_no;
    if(line.empty()) continue;
    if(line[0] == '#')
    {
      const auto colon = line.find(':');
      const std::string key = line.substr(2, colon == std::string::npos ? std::string::npos : colon - 2);
      const std::string value = colon == std::string::npos ? "" : line.substr(colon + 2);
      table.metadata.emplace_back(key, value);
      continue;
    }
    if(!have_header)
    {
      std::size_t start = 0;
      while(true)
      {
        const auto comma = line.find(',', start);
        table.header.push_back(line.substr(start, comma - start));
        if(comma == std::string::npos) break;
        start = comma + 1;
      }
      have_header = true;
      continue;
    }
    std::vector<double> row;
    row.reserve(table.header.size());
    const char * p = line.data();
    const char * end = line.data() + line.size();
    while(p <= end)
    {
      double v = 0.0;
      const auto res = std::from_chars(p, end, v);
      if(res.ec != std::errc())
        throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": malformed number");
      row.push_back(v);
      p = res.ptr + 1;
    }
    if(row.size() != table.header.size())
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": column count mismatch");
    table.rows.push_back(std::move(row));
  }
  return table;
}

} // namespace hrom
