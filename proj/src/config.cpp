#include "krig/config.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "krig/errors.hpp"

namespace krig {

namespace {

struct Field {
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, const std::string&)> set;
};

template <typename T>
T parse_as(const std::string& s) {
  std::istringstream ss(s);
  T v{};
  ss >> v;
  if (ss.fail()) throw ConfigError("cannot parse value '" + s + "'");
  return v;
}

std::string format_double(double v) {
  std::ostringstream ss;
  ss.precision(17);
  ss << v;
  return ss.str();
}

const std::map<std::string, Field>& fields() {
  static const std::map<std::string, Field> table = [] {
    std::map<std::string, Field> t;
    auto add_int = [&t](const std::string& k, int RunConfig::* p) {
      t[k] = {[p](const RunConfig& c) { return std::to_string(c.*p); },
              [p](RunConfig& c, const std::string& v) { c.*p = parse_as<int>(v); }};
    };
    auto add_u64 = [&t](const std::string& k, std::uint64_t RunConfig::* p) {
      t[k] = {[p](const RunConfig& c) { return std::to_string(c.*p); },
              [p](RunConfig& c, const std::string& v) { c.*p = parse_as<std::uint64_t>(v); }};
    };
    auto add_dbl = [&t](const std::string& k, double RunConfig::* p) {
      t[k] = {[p](const RunConfig& c) { return format_double(c.*p); },
              [p](RunConfig& c, const std::string& v) { c.*p = parse_as<double>(v); }};
    };
    auto add_bool = [&t](const std::string& k, bool RunConfig::* p) {
      t[k] = {[p](const RunConfig& c) { return std::string(c.*p ? "true" : "false"); },
              [p](RunConfig& c, const std::string& v) {
                if (v == "true" || v == "1") c.*p = true;
                else if (v == "false" || v == "0") c.*p = false;
                else throw ConfigError("cannot parse bool '" + v + "'");
              }};
    };
    add_int("n_a", &RunConfig::n_a);
    add_int("n_b", &RunConfig::n_b);
    add_int("n_p", &RunConfig::n_p);
    add_dbl("f_s", &RunConfig::f_s);
    add_int("K", &RunConfig::K);
    add_int("zone_target", &RunConfig::zone_target);
    add_u64("kmeans_seed", &RunConfig::kmeans_seed);
    add_int("kmeans_max_iter", &RunConfig::kmeans_max_iter);
    add_dbl("rho", &RunConfig::rho);
    add_dbl("epsilon", &RunConfig::epsilon);
    add_dbl("eps_pri", &RunConfig::eps_pri);
    add_dbl("eps_dual", &RunConfig::eps_dual);
    add_dbl("threshold", &RunConfig::threshold);
    add_int("max_iter", &RunConfig::max_iter);
    add_dbl("beta_cap_factor", &RunConfig::beta_cap_factor);
    add_int("n_lags", &RunConfig::n_lags);
    add_bool("pooled_variogram", &RunConfig::pooled_variogram);
    add_int("n_test", &RunConfig::n_test);
    add_u64("split_seed", &RunConfig::split_seed);
    add_dbl("noise_std", &RunConfig::noise_std);
    add_dbl("resonance_hz", &RunConfig::resonance_hz);
    add_dbl("damping", &RunConfig::damping);
    add_dbl("pre_pole", &RunConfig::pre_pole);
    add_dbl("mix_d", &RunConfig::mix_d);
    add_dbl("mix_q", &RunConfig::mix_q);
    add_dbl("output_gain", &RunConfig::output_gain);
    add_dbl("saturation", &RunConfig::saturation);
    add_dbl("train_duration", &RunConfig::train_duration);
    add_dbl("chirp_f0", &RunConfig::chirp_f0);
    add_dbl("chirp_f1", &RunConfig::chirp_f1);
    add_int("prs_order", &RunConfig::prs_order);
    add_dbl("amplitude", &RunConfig::amplitude);
    add_int("val_steps", &RunConfig::val_steps);
    add_u64("train_seed", &RunConfig::train_seed);
    add_u64("val_seed", &RunConfig::val_seed);
    add_u64("noise_seed", &RunConfig::noise_seed);
    return t;
  }();
  return table;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

void apply_override(RunConfig& cfg, const std::string& key, const std::string& value) {
  auto it = fields().find(key);
  if (it == fields().end()) throw ConfigError("unknown config key '" + key + "'");
  it->second.set(cfg, value);
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config file: " + path);
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    apply_override(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

std::map<std::string, std::string> config_items(const RunConfig& cfg) {
  std::map<std::string, std::string> out;
  for (const auto& [k, f] : fields()) out[k] = f.get(cfg);
  return out;
}

void save_config(const std::string& path, const RunConfig& cfg) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot open for writing: " + path);
  for (const auto& [k, v] : config_items(cfg)) f << k << " = " << v << "\n";
}

}  // namespace krig
