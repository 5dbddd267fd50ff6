#include "dcflow/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dcflow/convergence.hpp"
#include "json.hpp"

namespace dcflow {

namespace {

using nlohmann::json;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "rho0",   "T",          "n",           "dt",          "profile",
      "r1",     "r2",         "profile_path", "g1_scaling", "snapshots",
      "output_dir", "allow_unstable", "derivative_bound_B"};
  return keys;
}

double get_number(const json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_number()) throw std::invalid_argument(std::string("config: '") + key + "' must be a number");
  return v.get<double>();
}

int get_int(const json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_number_integer()) {
    throw std::invalid_argument(std::string("config: '") + key + "' must be an integer");
  }
  return v.get<int>();
}

std::string get_string(const json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_string()) throw std::invalid_argument(std::string("config: '") + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("config: top level must be an object");
  for (const auto& item : doc.items()) {
    if (!known_keys().contains(item.key())) {
      throw std::invalid_argument("config: unknown key '" + item.key() + "'");
    }
  }

  RunConfig c;
  if (doc.contains("rho0")) c.rho0 = get_number(doc, "rho0");
  if (doc.contains("T")) c.t_final = get_number(doc, "T");
  if (doc.contains("n")) c.n = get_int(doc, "n");
  if (doc.contains("dt")) {
    const auto& v = doc.at("dt");
    if (v.is_string()) {
      if (v.get<std::string>() != "auto") {
        throw std::invalid_argument("config: 'dt' must be \"auto\" or a number");
      }
    } else {
      c.explicit_dt = get_number(doc, "dt");
    }
  }
  if (doc.contains("profile")) c.profile.kind = parse_profile_kind(get_string(doc, "profile"));
  if (doc.contains("r1")) c.profile.r1 = get_number(doc, "r1");
  if (doc.contains("r2")) c.profile.r2 = get_number(doc, "r2");
  if (doc.contains("profile_path")) {
    std::filesystem::path p = get_string(doc, "profile_path");
    c.profile.path = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  }
  if (doc.contains("g1_scaling")) {
    const std::string s = get_string(doc, "g1_scaling");
    if (s == "normalised") {
      c.profile.scaling = SinusoidScaling::normalised;
    } else if (s == "literal") {
      c.profile.scaling = SinusoidScaling::literal;
    } else {
      throw std::invalid_argument("config: 'g1_scaling' must be \"normalised\" or \"literal\"");
    }
  }
  if (doc.contains("snapshots")) c.snapshots = get_int(doc, "snapshots");
  if (doc.contains("output_dir")) {
    std::filesystem::path p = get_string(doc, "output_dir");
    c.output_dir = p.is_relative() && !base_dir.empty() ? base_dir / p : p;
  }
  if (doc.contains("allow_unstable")) {
    const auto& v = doc.at("allow_unstable");
    if (!v.is_boolean()) throw std::invalid_argument("config: 'allow_unstable' must be a boolean");
    c.allow_unstable = v.get<bool>();
  }
  if (doc.contains("derivative_bound_B")) {
    if (!doc.at("derivative_bound_B").is_null()) {
      c.derivative_bound = get_number(doc, "derivative_bound_B");
    }
  }

  if (!(c.rho0 > 0.0)) throw std::invalid_argument("config: rho0 must be > 0");
  if (!(c.t_final >= 0.0)) throw std::invalid_argument("config: T must be >= 0");
  if (c.n < 2) throw std::invalid_argument("config: n must be >= 2");
  if (c.snapshots < 2) throw std::invalid_argument("config: snapshots must be >= 2");
  if (c.explicit_dt && !(*c.explicit_dt > 0.0)) throw std::invalid_argument("config: dt must be > 0");
  if (c.derivative_bound && !(*c.derivative_bound >= 0.0)) {
    throw std::invalid_argument("config: derivative_bound_B must be >= 0");
  }
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str(), path.parent_path());
}

GridSpec make_grid(const RunConfig& config) {
  const double du = config.rho0 / config.n;
  if (config.t_final == 0.0) return {config.rho0, config.n, 0.0, 1};
  if (!config.explicit_dt) {
    return {config.rho0, config.n, config.t_final, choose_time_step(du, config.t_final).m};
  }
  const double dt = *config.explicit_dt;
  const double steps = std::round(config.t_final / dt);
  if (steps < 1.0 || steps > 2147483647.0) {
    throw std::invalid_argument("config: T / dt gives an unusable step count");
  }
  const int m = static_cast<int>(steps);
  const double product = m * dt;
  const double ulp = std::nextafter(config.t_final, INFINITY) - config.t_final;
  if (std::abs(product - config.t_final) > ulp) {
    std::ostringstream msg;
    msg << "config: dt = " << dt << " does not divide T = " << config.t_final
        << " (m * dt = " << product << ")";
    throw std::invalid_argument(msg.str());
  }
  return {config.rho0, config.n, config.t_final, m};
}

std::vector<double> snapshot_times(const RunConfig& config) {
  std::vector<double> times;
  const int count = config.snapshots;
  for (int i = 0; i < count; ++i) {
    times.push_back(i == count - 1 ? config.t_final : config.t_final * i / (count - 1));
  }
  return times;
}

}  // namespace dcflow
