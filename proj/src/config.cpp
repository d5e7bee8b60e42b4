#include "hrom/config.hpp"

#include <exception>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace hrom
{

using nlohmann::json;

void SimConfig::validate() const
{
  try
  {
    if(!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if(!(duration > 0.0)) throw std::invalid_argument("duration must be positive");
    if(!desired_velocity.allFinite()) throw std::invalid_argument("desired_velocity must be finite");
    if(!attitude_reference.allFinite()) throw std::invalid_argument("attitude_reference must be finite");
    if(decimate < 1) throw std::invalid_argument("decimate must be at least 1");
    if((observer.gain.array() <= 0.0).any()) throw std::invalid_argument("observer.gain entries must be positive");
    if(!(observer.twist_noise >= 0.0)) throw std::invalid_argument("observer.twist_noise must be nonnegative");
    if(!(joint_gains.kp >= 0.0 && joint_gains.kd >= 0.0)) throw std::invalid_argument("joint gains must be nonnegative");
    model.validate();
    ground.validate();
    gait.validate();
    attitude.validate();
    erg.validate();
    friction.validate();
    if(gait.standing_height - model.hip_offsets[0].z() > model.max_leg_length)
      throw std::invalid_argument("gait.standing_height exceeds the maximum leg length");
  }
  catch(const std::invalid_argument & e)
  {
    throw ConfigError(e.what());
  }
}

namespace
{

template<int N>
json vec_to_json(const Eigen::Matrix<double, N, 1> & v)
{
  json a = json::array();
  for(int i = 0; i < N; ++i) a.push_back(v(i));
  return a;
}

template<int N>
Eigen::Matrix<double, N, 1> vec_from_json(const json & j, const std::string & key)
{
  if(!j.is_array() || j.size() != static_cast<std::size_t>(N))
    throw ConfigError(key + ": expected an array of " + std::to_string(N) + " numbers");
  Eigen::Matrix<double, N, 1> v;
  for(int i = 0; i < N; ++i) v(i) = j.at(static_cast<std::size_t>(i)).get<double>();
  return v;
}

json mat_to_json(const Mat3 & m)
{
  json a = json::array();
  for(int r = 0; r < 3; ++r) a.push_back(vec_to_json<3>(m.row(r).transpose()));
  return a;
}

Mat3 mat_from_json(const json & j, const std::string & key)
{
  if(!j.is_array() || j.size() != 3) throw ConfigError(key + ": expected a 3x3 nested array");
  Mat3 m;
  for(int r = 0; r < 3; ++r) m.row(r) = vec_from_json<3>(j.at(static_cast<std::size_t>(r)), key).transpose();
  return m;
}

json legs_to_json(const std::array<Vec3, kNumLegs> & legs)
{
  json o = json::object();
  for(LegId leg : kAllLegs) o[std::string(name(leg))] = vec_to_json<3>(legs[index(leg)]);
  return o;
}

void legs_from_json(const json & j, std::array<Vec3, kNumLegs> & legs, const std::string & key)
{
  if(!j.is_object()) throw ConfigError(key + ": expected an object keyed by FR, FL, BR, BL");
  for(auto it = j.begin(); it != j.end(); ++it)
  {
    bool found = false;
    for(LegId leg : kAllLegs)
    {
      if(it.key() == name(leg))
      {
        legs[index(leg)] = vec_from_json<3>(it.value(), key + "." + it.key());
        found = true;
      }
    }
    if(!found) throw ConfigError(key + ": unknown leg '" + it.key() + "'");
  }
}

json to_json(const SimConfig & c)
{
  json j;
  j["dt"] = c.dt;
  j["duration"] = c.duration;
  j["desired_velocity"] = vec_to_json<3>(c.desired_velocity);
  j["attitude_reference"] = vec_to_json<3>(c.attitude_reference);
  j["model"] = {{"mass", c.model.mass},
                {"inertia", mat_to_json(c.model.inertia)},
                {"hip_offsets", legs_to_json(c.model.hip_offsets)},
                {"thruster_offsets", legs_to_json(c.model.thruster_offsets)},
                {"gravity", vec_to_json<3>(c.model.gravity)},
                {"max_thrust", c.model.max_thrust},
                {"min_leg_length", c.model.min_leg_length},
                {"max_leg_length", c.model.max_leg_length}};
  j["ground"] = {{"stiffness", c.ground.stiffness},
                 {"damping", c.ground.damping},
                 {"mu_coulomb", c.ground.mu_coulomb},
                 {"mu_static", c.ground.mu_static},
                 {"mu_viscous", c.ground.mu_viscous},
                 {"stribeck_velocity", c.ground.stribeck_velocity},
                 {"height", c.ground.height}};
  j["gait"] = {{"cycle_period", c.gait.cycle_period},
               {"swing_height", c.gait.swing_height},
               {"velocity_gain", c.gait.velocity_gain},
               {"standing_height", c.gait.standing_height},
               {"reference_tracking", c.gait.reference_tracking}};
  j["joint_gains"] = {{"kp", c.joint_gains.kp}, {"kd", c.joint_gains.kd}};
  j["attitude"] = {{"kp", vec_to_json<3>(c.attitude.kp)}, {"kd", vec_to_json<3>(c.attitude.kd)}};
  j["erg"] = {{"kappa", c.erg.kappa},
              {"margin_scale", c.erg.margin_scale},
              {"eta", c.erg.eta},
              {"horizon", c.erg.horizon},
              {"mu_static", c.friction.mu_static},
              {"min_normal", c.friction.min_normal}};
  j["observer"] = {{"gain", vec_to_json<6>(c.observer.gain)}, {"twist_noise", c.observer.twist_noise}};
  j["output"] = {{"path", c.output_path}, {"decimate", c.decimate}, {"full_rate", c.full_rate}};
  j["seed"] = c.seed;
  return j;
}

// Reads `key` from `j` into `out` if present, recording it as consumed.
class Reader
{
public:
  Reader(const json & j, std::string prefix) : j_(j), prefix_(std::move(prefix))
  {
    if(!j_.is_object()) throw ConfigError((prefix_.empty() ? "config" : prefix_) + ": expected an object");
  }

  ~Reader() noexcept(false)
  {
    if(std::uncaught_exceptions() > 0) return;
    for(auto it = j_.begin(); it != j_.end(); ++it)
      if(!seen_.count(it.key())) throw ConfigError("unknown key '" + path(it.key()) + "'");
  }

  const json * find(const std::string & key)
  {
    auto it = j_.find(key);
    if(it == j_.end()) return nullptr;
    seen_.insert(key);
    return &*it;
  }

  template<typename T>
  void scalar(const std::string & key, T & out)
  {
    if(const json * v = find(key))
    {
      try
      {
        out = v->get<T>();
      }
      catch(const json::exception &)
      {
        throw ConfigError(path(key) + ": wrong type");
      }
    }
  }

  template<int N>
  void vector(const std::string & key, Eigen::Matrix<double, N, 1> & out)
  {
    if(const json * v = find(key))
    {
      try
      {
        out = vec_from_json<N>(*v, path(key));
      }
      catch(const json::exception &)
      {
        throw ConfigError(path(key) + ": wrong type");
      }
    }
  }

  std::string path(const std::string & key) const { return prefix_.empty() ? key : prefix_ + "." + key; }

private:
  const json & j_;
  std::string prefix_;
  std::set<std::string> seen_;
};

SimConfig from_json(const json & j)
{
  SimConfig c;
  Reader top(j, "");
  top.scalar("dt", c.dt);
  top.scalar("duration", c.duration);
  top.vector<3>("desired_velocity", c.desired_velocity);
  top.vector<3>("attitude_reference", c.attitude_reference);
  top.scalar("seed", c.seed);

  if(const json * m = top.find("model"))
  {
    Reader r(*m, "model");
    r.scalar("mass", c.model.mass);
    if(const json * i = r.find("inertia")) c.model.inertia = mat_from_json(*i, "model.inertia");
    if(const json * h = r.find("hip_offsets")) legs_from_json(*h, c.model.hip_offsets, "model.hip_offsets");
    if(const json * t = r.find("thruster_offsets"))
      legs_from_json(*t, c.model.thruster_offsets, "model.thruster_offsets");
    r.vector<3>("gravity", c.model.gravity);
    r.scalar("max_thrust", c.model.max_thrust);
    r.scalar("min_leg_length", c.model.min_leg_length);
    r.scalar("max_leg_length", c.model.max_leg_length);
  }
  if(const json * g = top.find("ground"))
  {
    Reader r(*g, "ground");
    r.scalar("stiffness", c.ground.stiffness);
    r.scalar("damping", c.ground.damping);
    r.scalar("mu_coulomb", c.ground.mu_coulomb);
    r.scalar("mu_static", c.ground.mu_static);
    r.scalar("mu_viscous", c.ground.mu_viscous);
    r.scalar("stribeck_velocity", c.ground.stribeck_velocity);
    r.scalar("height", c.ground.height);
  }
  if(const json * g = top.find("gait"))
  {
    Reader r(*g, "gait");
    r.scalar("cycle_period", c.gait.cycle_period);
    r.scalar("swing_height", c.gait.swing_height);
    r.scalar("velocity_gain", c.gait.velocity_gain);
    r.scalar("standing_height", c.gait.standing_height);
    r.scalar("reference_tracking", c.gait.reference_tracking);
  }
  if(const json * g = top.find("joint_gains"))
  {
    Reader r(*g, "joint_gains");
    r.scalar("kp", c.joint_gains.kp);
    r.scalar("kd", c.joint_gains.kd);
  }
  if(const json * a = top.find("attitude"))
  {
    Reader r(*a, "attitude");
    r.vector<3>("kp", c.attitude.kp);
    r.vector<3>("kd", c.attitude.kd);
  }
  if(const json * e = top.find("erg"))
  {
    Reader r(*e, "erg");
    r.scalar("kappa", c.erg.kappa);
    r.scalar("margin_scale", c.erg.margin_scale);
    r.scalar("eta", c.erg.eta);
    r.scalar("horizon", c.erg.horizon);
    r.scalar("mu_static", c.friction.mu_static);
    r.scalar("min_normal", c.friction.min_normal);
  }
  if(const json * o = top.find("observer"))
  {
    Reader r(*o, "observer");
    if(const json * g = r.find("gain"))
    {
      if(g->is_number())
        c.observer.gain = Vec6::Constant(g->get<double>());
      else
        c.observer.gain = vec_from_json<6>(*g, "observer.gain");
    }
    r.scalar("twist_noise", c.observer.twist_noise);
  }
  if(const json * o = top.find("output"))
  {
    Reader r(*o, "output");
    r.scalar("path", c.output_path);
    r.scalar("decimate", c.decimate);
    r.scalar("full_rate", c.full_rate);
  }
  return c;
}

} // namespace

SimConfig config_from_string(const std::string & text)
{
  json j;
  try
  {
    j = json::parse(text);
  }
  catch(const json::parse_error & e)
  {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  SimConfig c;
  try
  {
    c = from_json(j);
  }
  catch(const json::exception & e)
  {
    throw ConfigError(std::string("config type error: ") + e.what());
  }
  c.validate();
  return c;
}

SimConfig load_config(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if(!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return config_from_string(buf.str());
}

std::string config_to_string(const SimConfig & config)
{
  return to_json(config).dump(2);
}

std::uint64_t config_hash(const SimConfig & config)
{
  std::uint64_t h = 14695981039346656037ull;
  for(unsigned char ch : to_json(config).dump())
  {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

} // namespace hrom
