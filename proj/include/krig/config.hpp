#ifndef KRIG_CONFIG_HPP
#define KRIG_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>

namespace krig {

/// Run parameters. Defaults reproduce the reference configuration:
/// ARX orders (2, 4), 40-step horizon at 80 Hz, rho = 0.5,
/// epsilon = 5e-5, stopping tolerances 1e-5, truncation threshold 1e-4.
struct RunConfig {
  // model orders and horizon
  int n_a = 2;
  int n_b = 4;
  int n_p = 40;
  double f_s = 80.0;

  // clustering
  int K = 0;             // 0 -> ceil(N / zone_target)
  int zone_target = 250;
  std::uint64_t kmeans_seed = 2024;
  int kmeans_max_iter = 60;

  // solver
  double rho = 0.5;
  double epsilon = 5e-5;
  double eps_pri = 1e-5;
  double eps_dual = 1e-5;
  double threshold = 1e-4;
  int max_iter = 5000;
  double beta_cap_factor = 1e6;  // beta_cap = factor * epsilon

  // variogram
  int n_lags = 200;
  bool pooled_variogram = false;  // diagnostic: single global fit

  // dataset
  int n_test = 500;
  std::uint64_t split_seed = 7;

  // surrogate plant (versioned coefficient set v1)
  double noise_std = 0.012;
  double resonance_hz = 3.0;
  double damping = 0.3;
  double pre_pole = 0.6;
  double mix_d = 0.7;
  double mix_q = 0.3;
  double output_gain = 10.0;
  double saturation = 0.05;

  // excitation
  double train_duration = 500.0;  // seconds of chirp+PRS data
  double chirp_f0 = 0.1;
  double chirp_f1 = 15.0;
  int prs_order = 10;
  double amplitude = 0.05;
  int val_steps = 150;            // step-battery levels for validation
  std::uint64_t train_seed = 101;
  std::uint64_t val_seed = 202;
  std::uint64_t noise_seed = 303;

  double beta_cap() const { return beta_cap_factor * epsilon; }
};

/// Reads a flat "key = value" document ('#' starts a comment). Unknown
/// keys raise ConfigError; every key matches a RunConfig field name.
RunConfig load_config(const std::string& path);

/// Applies one key=value override (same names as the config file).
void apply_override(RunConfig& cfg, const std::string& key, const std::string& value);

void save_config(const std::string& path, const RunConfig& cfg);

std::map<std::string, std::string> config_items(const RunConfig& cfg);

}  // namespace krig

#endif  // KRIG_CONFIG_HPP
