#ifndef KRIG_PIPELINE_HPP
#define KRIG_PIPELINE_HPP

#include <string>
#include <vector>

#include "krig/datagen.hpp"
#include "krig/forecast.hpp"

namespace krig {

SurrogateSystem system_from_config(const RunConfig& cfg);

/// Chirp + PRS excitation over cfg.train_duration seconds, simulated with
/// the configured plant (paper-style training schedule).
TimeSeriesLog make_training_log(const RunConfig& cfg);

/// Step-battery excitation (cfg.val_steps random levels).
TimeSeriesLog make_validation_log(const RunConfig& cfg);

struct ZoneDiagnostics {
  int zone_id = 0;
  Eigen::Index size = 0;
  double theta = 0.0, phi = 0.0, varpi = 0.0;
  double fit_residual = 0.0;
  double eig_min = 0.0, eig_max = 0.0;  // of -Gamma_D
  bool degenerate_fit = false;
};

struct BuildReport {
  std::vector<ZoneDiagnostics> zones;
  double sse = 0.0;
  double build_seconds = 0.0;
};

/// Offline pipeline: standardize (train statistics) -> ARX regressors ->
/// balanced k-means -> per-zone whitening, trend, variogram -> Gamma_D,
/// factorizations. Zones are prepared in parallel.
ModelLibrary build_library(const TimeSeriesLog& train_log, const RunConfig& cfg,
                           BuildReport* report = nullptr);

/// Versioned JSON persistence. Factorizations and eigen pairs are not
/// stored; load_library rebuilds them deterministically.
void save_library(const std::string& path, const ModelLibrary& library);
ModelLibrary load_library(const std::string& path);

}  // namespace krig

#endif  // KRIG_PIPELINE_HPP
