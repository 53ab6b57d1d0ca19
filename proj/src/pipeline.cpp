#include "krig/pipeline.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <mutex>
#include <thread>

#include "json.hpp"
#include "krig/preprocess.hpp"

namespace krig {

SurrogateSystem system_from_config(const RunConfig& cfg) {
  SurrogateSystem sys;
  sys.noise_std = cfg.noise_std;
  sys.resonance_hz = cfg.resonance_hz;
  sys.damping = cfg.damping;
  sys.pre_pole = cfg.pre_pole;
  sys.mix_d = cfg.mix_d;
  sys.mix_q = cfg.mix_q;
  sys.output_gain = cfg.output_gain;
  sys.saturation_limit = cfg.saturation;
  sys.fs = cfg.f_s;
  return sys;
}

TimeSeriesLog make_training_log(const RunConfig& cfg) {
  const ExcitationSignal ch = chirp(cfg.chirp_f0, cfg.chirp_f1, cfg.train_duration,
                                    cfg.f_s, 0.6 * cfg.amplitude);
  const ExcitationSignal pr = prs(cfg.prs_order, ch.length(), cfg.f_s,
                                  0.5 * cfg.amplitude, cfg.train_seed);
  const ExcitationSignal u = combine(ch, pr, cfg.amplitude);
  return simulate(system_from_config(cfg), u, cfg.noise_seed);
}

TimeSeriesLog make_validation_log(const RunConfig& cfg) {
  const ExcitationSignal u = step_battery(cfg.val_steps, cfg.f_s, cfg.amplitude, cfg.val_seed);
  return simulate(system_from_config(cfg), u, cfg.noise_seed + 1);
}

ModelLibrary build_library(const TimeSeriesLog& train_log, const RunConfig& cfg,
                           BuildReport* report) {
  const auto t0 = std::chrono::steady_clock::now();

  ModelLibrary lib;
  lib.config = cfg;
  lib.scaler = fit_scaler(train_log);
  const TimeSeriesLog std_log = lib.scaler.transform(train_log);
  const RegressorSet set = build_regressors(std_log, cfg.n_a, cfg.n_b);

  const Eigen::Index N = set.size();
  const int K = (cfg.K > 0) ? cfg.K
                            : static_cast<int>((N + cfg.zone_target - 1) / cfg.zone_target);
  const Clustering clus = balanced_kmeans(set.Z, K, cfg.kmeans_seed, cfg.kmeans_max_iter);

  lib.zones.resize(K);
  if (report != nullptr) {
    report->zones.assign(K, {});
    report->sse = clus.sse;
  }

  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::string error_message;
  std::mutex error_mutex;

  auto worker = [&]() {
    for (;;) {
      const int j = next.fetch_add(1);
      if (j >= K || failed.load()) return;
      try {
        const auto& idx = clus.members[j];
        Eigen::MatrixXd pts(idx.size(), set.dim());
        Eigen::VectorXd ys(idx.size());
        for (std::size_t a = 0; a < idx.size(); ++a) {
          pts.row(a) = set.Z.row(idx[a]);
          ys[a] = set.y[idx[a]];
        }
        ClusterModel zone;
        const Whitening wh = whiten(pts);
        zone.centroid = wh.center;
        zone.whitening = wh.transform;
        zone.coords_iso = wh.coords_iso;
        zone.y_std = ys;
        const TrendFit trend = fit_trend(wh.coords_iso, ys);
        zone.trend_intercept = trend.intercept;
        zone.trend_slope = trend.slope;
        const EmpiricalVariogram emp =
            empirical_semivariogram(wh.coords_iso, trend.residuals, cfg.n_lags);
        zone.variogram = fit_exponential(emp);
        zone.rebuild_derived(cfg.rho);

        if (report != nullptr) {
          ZoneDiagnostics d;
          d.zone_id = j;
          d.size = zone.size();
          d.theta = zone.variogram.theta;
          d.phi = zone.variogram.phi;
          d.varpi = zone.variogram.varpi;
          d.fit_residual = zone.variogram.fit_residual;
          d.degenerate_fit = zone.variogram.degenerate;
          d.eig_min = zone.spectral->eigenvalues().minCoeff();
          d.eig_max = zone.spectral->eigenvalues().maxCoeff();
          report->zones[j] = d;
        }
        lib.zones[j] = std::move(zone);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        failed.store(true);
        if (error_message.empty()) {
          error_message = "zone " + std::to_string(j) + ": " + e.what();
        }
      }
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned i = 0; i + 1 < hw; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failed.load()) throw Error("library build failed: " + error_message);

  if (report != nullptr) {
    report->build_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  return lib;
}

// --- persistence -------------------------------------------------------------

namespace {

nlohmann::json matrix_to_json(const Eigen::MatrixXd& M) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = rows > 0 ? static_cast<Eigen::Index>(j[0].size()) : 0;
  Eigen::MatrixXd M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index c = 0; c < cols; ++c) M(i, c) = j[i][c].get<double>();
  }
  return M;
}

nlohmann::json vector_to_json(const Eigen::VectorXd& v) {
  nlohmann::json a = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Eigen::VectorXd vector_from_json(const nlohmann::json& j) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = j[i].get<double>();
  return v;
}

constexpr int kLibraryFormatVersion = 1;

}  // namespace

void save_library(const std::string& path, const ModelLibrary& lib) {
  nlohmann::json j;
  j["format_version"] = kLibraryFormatVersion;
  nlohmann::json cfg;
  for (const auto& [k, v] : config_items(lib.config)) cfg[k] = v;
  j["config"] = cfg;
  j["scaler"] = {{"mean", vector_to_json(lib.scaler.mean)},
                 {"std", vector_to_json(lib.scaler.std)}};
  nlohmann::json zones = nlohmann::json::array();
  for (const auto& z : lib.zones) {
    nlohmann::json zj;
    zj["centroid"] = vector_to_json(z.centroid);
    zj["whitening"] = matrix_to_json(z.whitening);
    zj["coords_iso"] = matrix_to_json(z.coords_iso);
    zj["y_std"] = vector_to_json(z.y_std);
    zj["trend_intercept"] = z.trend_intercept;
    zj["trend_slope"] = vector_to_json(z.trend_slope.transpose());
    zj["variogram"] = {{"theta", z.variogram.theta},
                       {"phi", z.variogram.phi},
                       {"varpi", z.variogram.varpi},
                       {"degenerate", z.variogram.degenerate},
                       {"fit_residual", z.variogram.fit_residual}};
    zones.push_back(std::move(zj));
  }
  j["zones"] = std::move(zones);
  std::ofstream f(path);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << j.dump(1) << "\n";
  if (!f) throw IoError("write failed: " + path);
}

ModelLibrary load_library(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open: " + path);
  nlohmann::json j;
  f >> j;
  if (j.at("format_version").get<int>() != kLibraryFormatVersion) {
    throw IoError("unsupported library format version");
  }
  ModelLibrary lib;
  for (auto& [k, v] : j.at("config").items()) {
    apply_override(lib.config, k, v.get<std::string>());
  }
  lib.scaler.mean = vector_from_json(j.at("scaler").at("mean"));
  lib.scaler.std = vector_from_json(j.at("scaler").at("std"));
  for (const auto& zj : j.at("zones")) {
    ClusterModel z;
    z.centroid = vector_from_json(zj.at("centroid"));
    z.whitening = matrix_from_json(zj.at("whitening"));
    z.coords_iso = matrix_from_json(zj.at("coords_iso"));
    z.y_std = vector_from_json(zj.at("y_std"));
    z.trend_intercept = zj.at("trend_intercept").get<double>();
    z.trend_slope = vector_from_json(zj.at("trend_slope")).transpose();
    z.variogram.theta = zj.at("variogram").at("theta").get<double>();
    z.variogram.phi = zj.at("variogram").at("phi").get<double>();
    z.variogram.varpi = zj.at("variogram").at("varpi").get<double>();
    z.variogram.degenerate = zj.at("variogram").at("degenerate").get<bool>();
    z.variogram.fit_residual = zj.at("variogram").at("fit_residual").get<double>();
    z.rebuild_derived(lib.config.rho);
    lib.zones.push_back(std::move(z));
  }
  return lib;
}

}  // namespace krig
