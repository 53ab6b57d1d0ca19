// krigcast: regularized universal kriging for multi-step grid-frequency
// forecasting. Subcommands cover the offline pipeline (generate,
// build-library, fit-variogram), the online predictor (predict, validate)
// and verification/benchmark harnesses (verify, bench).
//
// Exit codes: 0 success, 1 validation failure, 2 configuration error,
// 3 solver non-convergence.

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "json.hpp"
#include "krig/oracle.hpp"
#include "krig/pipeline.hpp"
#include "krig/preprocess.hpp"

using namespace krig;

namespace {

struct ConfigCli {
  std::string config_path;
  std::vector<std::string> overrides;  // key=value

  RunConfig resolve() const {
    RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("override must be key=value: " + kv);
      apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    return cfg;
  }
};

void add_config_options(CLI::App* cmd, ConfigCli& cc) {
  cmd->add_option("--config", cc.config_path, "flat key = value config file");
  cmd->add_option("--set", cc.overrides,
                  "override any config key, e.g. --set rho=0.7 (repeatable)");
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return (v.size() % 2) ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

double quantile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const double pos = q * (v.size() - 1);
  const std::size_t i = static_cast<std::size_t>(pos);
  if (i + 1 >= v.size()) return v.back();
  return v[i] + (pos - i) * (v[i + 1] - v[i]);
}

struct Anchor {
  Eigen::VectorXd tail_y;
  Eigen::MatrixXd tail_u;
  Eigen::MatrixXd future_u;
  Eigen::VectorXd truth;  // y(t) .. y(t+n_p)
};

std::vector<Anchor> pick_anchors(const TimeSeriesLog& log, const RunConfig& cfg,
                                 int count, std::uint64_t seed) {
  const Eigen::Index lead = std::max(cfg.n_a, cfg.n_b);
  const Eigen::Index lo = lead;
  const Eigen::Index hi = log.length() - cfg.n_p - 2;
  if (hi <= lo) throw Error("log too short for trajectory anchors");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Eigen::Index> pick(lo, hi);
  std::vector<Anchor> out;
  for (int i = 0; i < count; ++i) {
    const Eigen::Index t = pick(rng);
    Anchor a;
    a.tail_y = log.y.segment(t - cfg.n_a, cfg.n_a + 1);
    a.tail_u = log.u.middleRows(t - cfg.n_b, cfg.n_b + 1);
    a.future_u = log.u.middleRows(t + 1, cfg.n_p);
    a.truth = log.y.segment(t, cfg.n_p + 1);
    out.push_back(std::move(a));
  }
  return out;
}

// --- subcommand bodies -------------------------------------------------------

int cmd_generate(const RunConfig& cfg, const std::string& kind, const std::string& out) {
  TimeSeriesLog log;
  if (kind == "train") {
    log = make_training_log(cfg);
  } else if (kind == "validation") {
    log = make_validation_log(cfg);
  } else {
    throw ConfigError("--kind must be train or validation");
  }
  write_log_csv(out, log);
  const double mean = log.y.mean();
  const double sd = std::sqrt((log.y.array() - mean).square().sum() / (log.length() - 1));
  std::cerr << "generated " << kind << " log: " << log.length() << " samples at "
            << cfg.f_s << " Hz, y std " << 1000.0 * sd << " mHz -> " << out << "\n";
  return 0;
}

int cmd_build_library(const RunConfig& cfg, const std::string& data,
                      const std::string& out, const std::string& split_out) {
  const TimeSeriesLog log = read_log_csv(data, cfg.f_s);
  BuildReport report;
  const ModelLibrary lib = build_library(log, cfg, &report);
  save_library(out, lib);
  if (!split_out.empty() && cfg.n_test > 0) {
    const RegressorSet set = build_regressors(log, cfg.n_a, cfg.n_b);
    write_split_json(split_out, split(set.size(), cfg.split_seed, cfg.n_test));
  }
  std::cerr << "library: " << lib.zones.size() << " zones";
  Eigen::Index lo = lib.zones.front().size(), hi = lo;
  for (const auto& z : lib.zones) {
    lo = std::min(lo, z.size());
    hi = std::max(hi, z.size());
  }
  std::cerr << ", sizes " << lo << ".." << hi << ", built in " << report.build_seconds
            << " s -> " << out << "\n";
  for (const auto& d : report.zones) {
    std::cerr << "  zone " << d.zone_id << ": N=" << d.size << " theta=" << d.theta
              << " phi=" << d.phi << " nugget=" << d.varpi << " eig=[" << d.eig_min
              << ", " << d.eig_max << "]" << (d.degenerate_fit ? " (degenerate fit)" : "")
              << "\n";
  }
  return 0;
}

int cmd_fit_variogram(const ModelLibrary& lib, int zone_id, bool pooled,
                      const std::string& out) {
  const int n_lags = lib.config.n_lags;
  std::ofstream f(out);
  if (!f) throw IoError("cannot open for writing: " + out);
  f.precision(12);
  f << "lag,gamma_hat,pairs,gamma_fit\n";

  auto zone_residuals = [](const ClusterModel& z) {
    return (z.y_std.array() - z.trend_intercept -
            (z.coords_iso * z.trend_slope.transpose()).array()).matrix();
  };

  if (!pooled) {
    if (zone_id < 0 || zone_id >= static_cast<int>(lib.zones.size())) {
      throw ConfigError("zone id out of range");
    }
    const ClusterModel& z = lib.zones[zone_id];
    const EmpiricalVariogram emp =
        empirical_semivariogram(z.coords_iso, zone_residuals(z), n_lags);
    const VariogramModel fit = fit_exponential(emp);
    for (int k = 0; k < n_lags; ++k) {
      f << emp.lag_centers[k] << ',' << emp.gamma_hat[k] << ',' << emp.pair_counts[k]
        << ',' << eval_model(fit, emp.lag_centers[k]) << "\n";
    }
    std::cerr << "zone " << zone_id << " fit: theta=" << fit.theta << " phi=" << fit.phi
              << " nugget=" << fit.varpi << "\n";
    return 0;
  }

  // pooled diagnostic: per-zone pairs accumulated on one global lag grid
  double dmax = 0.0;
  for (const auto& z : lib.zones) {
    const Eigen::MatrixXd& P = z.coords_iso;
    for (Eigen::Index i = 0; i < P.rows(); ++i) {
      for (Eigen::Index j = i + 1; j < P.rows(); ++j) {
        dmax = std::max(dmax, (P.row(i) - P.row(j)).norm());
      }
    }
  }
  EmpiricalVariogram pool;
  pool.lag_centers.resize(n_lags);
  pool.gamma_hat = Eigen::VectorXd::Zero(n_lags);
  pool.pair_counts = Eigen::VectorXi::Zero(n_lags);
  const double width = dmax / n_lags;
  for (int k = 0; k < n_lags; ++k) pool.lag_centers[k] = (k + 0.5) * width;
  for (const auto& z : lib.zones) {
    const Eigen::MatrixXd& P = z.coords_iso;
    const Eigen::VectorXd resid = zone_residuals(z);
    for (Eigen::Index i = 0; i < P.rows(); ++i) {
      for (Eigen::Index j = i + 1; j < P.rows(); ++j) {
        const double h = (P.row(i) - P.row(j)).norm();
        const int bin = std::min(static_cast<int>(h / width), n_lags - 1);
        pool.gamma_hat[bin] += 0.5 * (resid[i] - resid[j]) * (resid[i] - resid[j]);
        pool.pair_counts[bin] += 1;
      }
    }
  }
  for (int k = 0; k < n_lags; ++k) {
    if (pool.pair_counts[k] > 0) pool.gamma_hat[k] /= pool.pair_counts[k];
  }
  const VariogramModel fit = fit_exponential(pool);
  for (int k = 0; k < n_lags; ++k) {
    f << pool.lag_centers[k] << ',' << pool.gamma_hat[k] << ',' << pool.pair_counts[k]
      << ',' << eval_model(fit, pool.lag_centers[k]) << "\n";
  }
  std::cerr << "pooled fit: theta=" << fit.theta << " phi=" << fit.phi
            << " nugget=" << fit.varpi << "\n";
  return 0;
}

int cmd_predict(const ModelLibrary& lib, const std::string& tail_path,
                const std::string& future_path, const std::string& out,
                const std::string& method) {
  const RunConfig& cfg = lib.config;
  const TimeSeriesLog tail_log = read_log_csv(tail_path, cfg.f_s);
  const TimeSeriesLog future_log = read_log_csv(future_path, cfg.f_s);
  const Eigen::Index lead = std::max(cfg.n_a, cfg.n_b);
  if (tail_log.length() < lead + 1) throw ConfigError("tail log too short");

  const Eigen::Index t = tail_log.length() - 1;
  const Eigen::VectorXd tail_y = tail_log.y.segment(t - cfg.n_a, cfg.n_a + 1);
  const Eigen::MatrixXd tail_u = tail_log.u.middleRows(t - cfg.n_b, cfg.n_b + 1);

  const PredictorKind kind = (method == "uk") ? PredictorKind::Uk : PredictorKind::KAdmm;
  const Trajectory tr = predict_trajectory(tail_y, tail_u, future_log.u, lib, kind);

  std::ofstream f(out);
  if (!f) throw IoError("cannot open for writing: " + out);
  f.precision(12);
  f << "step,y_hat,lo,hi,zone,nnz,interp_metric,iters\n";
  for (int l = 0; l < cfg.n_p; ++l) {
    f << (l + 1) << ',' << tr.y_hat[l] << ',' << tr.lo[l] << ',' << tr.hi[l] << ','
      << tr.zone_ids[l] << ',' << tr.sparsity[l] << ',' << tr.interp_metric[l] << ','
      << tr.iterations[l] << "\n";
  }
  std::cerr << "trajectory of " << cfg.n_p << " steps in " << 1000.0 * tr.wall_time_s
            << " ms -> " << out << "\n";
  return tr.all_converged ? 0 : 3;
}

int cmd_validate(const ModelLibrary& lib, const std::string& data_path, int n_traj,
                 std::uint64_t seed, const std::string& out,
                 const std::string& scatter_out) {
  const RunConfig& cfg = lib.config;
  const TimeSeriesLog val = read_log_csv(data_path, cfg.f_s);
  const std::vector<Anchor> anchors = pick_anchors(val, cfg, n_traj, seed);

  std::vector<double> zeta_ka, zeta_uk, interp_ka, interp_uk;
  std::vector<double> iters, spars;
  long covered = 0, steps = 0;
  bool all_converged = true;

  std::ofstream scatter;
  if (!scatter_out.empty()) {
    scatter.open(scatter_out);
    scatter.precision(12);
    scatter << "method,interp_metric,zeta\n";
  }

  for (const auto& a : anchors) {
    const Trajectory ka = predict_trajectory(a.tail_y, a.tail_u, a.future_u, lib,
                                             PredictorKind::KAdmm);
    const Trajectory uk = predict_trajectory(a.tail_y, a.tail_u, a.future_u, lib,
                                             PredictorKind::Uk);
    all_converged = all_converged && ka.all_converged;
    const double zk = trajectory_error(a.truth, ka.y_hat);
    const double zu = trajectory_error(a.truth, uk.y_hat);
    zeta_ka.push_back(zk);
    zeta_uk.push_back(zu);
    double mik = 0.0, miu = 0.0;
    for (int l = 0; l < cfg.n_p; ++l) {
      mik += ka.interp_metric[l];
      miu += uk.interp_metric[l];
      iters.push_back(ka.iterations[l]);
      spars.push_back(1.0 - static_cast<double>(ka.sparsity[l]) /
                                static_cast<double>(lib.zones[ka.zone_ids[l]].size()));
      const double truth = a.truth[l + 1];
      if (truth >= ka.lo[l] && truth <= ka.hi[l]) ++covered;
      ++steps;
    }
    interp_ka.push_back(mik / cfg.n_p);
    interp_uk.push_back(miu / cfg.n_p);
    if (scatter.is_open()) {
      scatter << "kadmm," << interp_ka.back() << ',' << zk << "\n";
      scatter << "uk," << interp_uk.back() << ',' << zu << "\n";
    }
  }

  nlohmann::json j;
  j["n_trajectories"] = n_traj;
  j["zeta"] = {{"kadmm", {{"median", median(zeta_ka)},
                          {"q1", quantile(zeta_ka, 0.25)},
                          {"q3", quantile(zeta_ka, 0.75)}}},
               {"uk", {{"median", median(zeta_uk)},
                       {"q1", quantile(zeta_uk, 0.25)},
                       {"q3", quantile(zeta_uk, 0.75)}}}};
  j["interp_metric"] = {{"kadmm_median", median(interp_ka)},
                        {"uk_median", median(interp_uk)}};
  j["iterations_median"] = median(iters);
  j["sparsity_median"] = median(spars);
  j["coverage95"] = static_cast<double>(covered) / static_cast<double>(steps);
  j["all_converged"] = all_converged;

  std::ofstream f(out);
  if (!f) throw IoError("cannot open for writing: " + out);
  f << j.dump(1) << "\n";
  std::cerr << "validate: zeta median kadmm=" << median(zeta_ka)
            << " uk=" << median(zeta_uk) << ", iterations median " << median(iters)
            << ", sparsity median " << median(spars) << ", coverage "
            << j["coverage95"].get<double>() << "\n";
  return all_converged ? 0 : 3;
}

int cmd_verify() {
  // oracle cross-checks: prox against grid search, solver against the
  // sign-pattern enumeration on random small instances
  int failures = 0;
  auto report = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << name << "\n";
    if (!ok) ++failures;
  };

  {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> uw(1e-3, 10.0), ub(0.0, 10.0), uc(-10.0, 10.0);
    bool ok = true;
    for (int i = 0; i < 20000 && ok; ++i) {
      const double w = uw(rng), b = ub(rng), c = uc(rng);
      const double xs = prox_psi(w, b, c);
      const double fs = w * xs * xs + b * std::abs(xs) - c * xs;
      for (int g = -100; g <= 100; ++g) {
        const double x = 0.1 * g;
        if (fs > w * x * x + b * std::abs(x) - c * x + 1e-9) { ok = false; break; }
      }
    }
    report("prox closed form beats grid candidates (20000 cases)", ok);
  }

  {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> ub(0.0, 0.1), un(0.05, 0.4);
    bool ok = true;
    for (int trial = 0; trial < 40 && ok; ++trial) {
      const Eigen::Index N = 3 + static_cast<Eigen::Index>(rng() % 6);
      const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 2);
      std::normal_distribution<double> nd;
      Eigen::MatrixXd P(N, n);
      for (auto& v : P.reshaped()) v = nd(rng);
      VariogramModel m;
      m.theta = 1.0;
      m.phi = std::sqrt(2.0 * n);
      m.varpi = un(rng);
      const Eigen::MatrixXd G = build_gamma_d(m, P);
      const Eigen::MatrixXd R = ConstraintSystem::from_coords(P).R;
      Eigen::VectorXd q = P.row(rng() % N).transpose();
      for (auto& v : q.reshaped()) v += 0.4 * nd(rng);
      const Eigen::VectorXd g0 = build_gamma_0(m, P, q);
      Eigen::VectorXd r0(n + 1);
      r0.head(n) = q;
      r0[n] = 1.0;
      Eigen::VectorXd beta(N);
      for (auto& b : beta.reshaped()) b = ub(rng);

      const Eigen::VectorXd lam_ref = enumerate_solve(G, g0, R, r0, beta);
      const SpectralForm form(G, R, 0.5);
      KadmmOptions opts;
      opts.eps_pri = 1e-11;
      opts.eps_dual = 1e-11;
      opts.max_iter = 200000;
      const KadmmResult res = kadmm_solve(form, g0, r0, beta, opts);
      const double gap = regularized_objective(res.lambda, G, g0, beta) -
                         regularized_objective(lam_ref, G, g0, beta);
      ok = res.converged && std::abs(gap) <= 1e-7;
    }
    report("solver matches enumeration oracle on 40 random instances", ok);
  }

  {
    // certificates on converged solves at operating tolerances
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd;
    bool ok = true;
    for (int trial = 0; trial < 5 && ok; ++trial) {
      const Eigen::Index N = 120;
      Eigen::MatrixXd P(N, 3);
      for (auto& v : P.reshaped()) v = nd(rng);
      VariogramModel m;
      m.theta = 1.0;
      m.phi = 2.5;
      m.varpi = 0.1;
      const Eigen::MatrixXd G = build_gamma_d(m, P);
      const Eigen::MatrixXd R = ConstraintSystem::from_coords(P).R;
      ZoneKktFactor factor(G, R);
      Eigen::VectorXd q = P.row(5).transpose();
      for (auto& v : q.reshaped()) v += 0.3 * nd(rng);
      const Eigen::VectorXd g0 = build_gamma_0(m, P, q);
      Eigen::VectorXd r0(4);
      r0.head(3) = q;
      r0[3] = 1.0;
      const UkSolution uk = factor.solve(g0, r0);
      const PenaltyVector pv = adaptive_penalties(uk.lambda, 5e-5, default_beta_cap(5e-5));
      const SpectralForm form(G, R, 0.5);
      const KadmmResult res = kadmm_solve(form, g0, r0, pv.beta);
      const Certificate cert = certify(res.lambda, G, g0, R, r0, pv.beta, 1e-4, 1e-4);
      ok = res.converged && cert.valid(1e-4);
    }
    report("converged solves carry valid optimality certificates", ok);
  }

  return failures == 0 ? 0 : 1;
}

int cmd_bench(const ModelLibrary& lib, const std::string& data_path, int n_traj,
              int n_rep, std::uint64_t seed) {
  const RunConfig& cfg = lib.config;
  const TimeSeriesLog val = read_log_csv(data_path, cfg.f_s);
  const std::vector<Anchor> anchors = pick_anchors(val, cfg, n_traj, seed);

  std::vector<double> t_kadmm, t_ref;
  for (int rep = 0; rep < n_rep; ++rep) {
    for (const auto& a : anchors) {
      const Trajectory ka = predict_trajectory(a.tail_y, a.tail_u, a.future_u, lib,
                                               PredictorKind::KAdmm);
      t_kadmm.push_back(1000.0 * ka.wall_time_s);
      const Trajectory rf = predict_trajectory(a.tail_y, a.tail_u, a.future_u, lib,
                                               PredictorKind::DenseRef);
      t_ref.push_back(1000.0 * rf.wall_time_s);
    }
  }

  // beta > 0 correctness reference on subsampled tiny instances, timed
  std::vector<double> t_oracle;
  {
    std::mt19937_64 rng(seed + 1);
    std::normal_distribution<double> nd;
    for (int i = 0; i < 5; ++i) {
      const ClusterModel& zone = lib.zones[rng() % lib.zones.size()];
      const Eigen::Index N = 8;
      Eigen::MatrixXd P(N, zone.coords_iso.cols());
      for (Eigen::Index k = 0; k < N; ++k) {
        P.row(k) = zone.coords_iso.row(rng() % zone.size());
      }
      Eigen::VectorXd q = P.row(0).transpose();
      for (auto& v : q.reshaped()) v += 0.3 * nd(rng);
      const Eigen::MatrixXd G = build_gamma_d(zone.variogram, P);
      const Eigen::MatrixXd R = ConstraintSystem::from_coords(P).R;
      const Eigen::VectorXd g0 = build_gamma_0(zone.variogram, P, q);
      Eigen::VectorXd r0(q.size() + 1);
      r0.head(q.size()) = q;
      r0[q.size()] = 1.0;
      const Eigen::VectorXd beta = Eigen::VectorXd::Constant(N, 0.01);
      const auto t0 = std::chrono::steady_clock::now();
      const Eigen::VectorXd lam = enumerate_solve(G, g0, R, r0, beta);
      t_oracle.push_back(1000.0 * std::chrono::duration<double>(
                                      std::chrono::steady_clock::now() - t0).count());
      (void)lam;
    }
  }

  auto minmax = [](const std::vector<double>& v) {
    return std::pair<double, double>(*std::min_element(v.begin(), v.end()),
                                     *std::max_element(v.begin(), v.end()));
  };
  const auto [kmin, kmax] = minmax(t_kadmm);
  const auto [rmin, rmax] = minmax(t_ref);
  const auto [omin, omax] = minmax(t_oracle);

  std::cout << "method,max_ms,median_ms,min_ms\n";
  std::cout.precision(6);
  std::cout << "kadmm," << kmax << ',' << median(t_kadmm) << ',' << kmin << "\n";
  std::cout << "dense_ref," << rmax << ',' << median(t_ref) << ',' << rmin << "\n";
  std::cout << "oracle_n8," << omax << ',' << median(t_oracle) << ',' << omin << "\n";
  std::cerr << "speedup (median dense_ref / median kadmm): "
            << median(t_ref) / median(t_kadmm) << "x over " << t_kadmm.size()
            << " trajectories\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"regularized universal kriging trajectory forecaster"};
  app.require_subcommand(1);

  ConfigCli cc;

  auto* gen = app.add_subcommand("generate", "simulate the surrogate plant to CSV");
  std::string gen_kind = "train", gen_out = "log.csv";
  add_config_options(gen, cc);
  gen->add_option("--kind", gen_kind, "train | validation");
  gen->add_option("--out", gen_out, "output CSV path")->required();

  auto* bld = app.add_subcommand("build-library", "run the offline pipeline");
  std::string bld_data, bld_out = "library.json", bld_split;
  add_config_options(bld, cc);
  bld->add_option("--data", bld_data, "training log CSV")->required();
  bld->add_option("--out", bld_out, "library JSON path")->required();
  bld->add_option("--split-out", bld_split, "write train/test split JSON here");

  auto* fitv = app.add_subcommand("fit-variogram", "emit (lag, gamma, fit) CSV");
  std::string fv_lib, fv_out = "variogram.csv";
  int fv_zone = 0;
  bool fv_pooled = false;
  fitv->add_option("--library", fv_lib, "library JSON")->required();
  fitv->add_option("--zone", fv_zone, "zone index");
  fitv->add_flag("--pooled", fv_pooled, "pool pairs across all zones");
  fitv->add_option("--out", fv_out, "output CSV")->required();

  auto* prd = app.add_subcommand("predict", "forecast one trajectory");
  std::string pr_lib, pr_tail, pr_future, pr_out = "trajectory.csv", pr_method = "kadmm";
  prd->add_option("--library", pr_lib)->required();
  prd->add_option("--tail", pr_tail, "log CSV ending at the forecast origin")->required();
  prd->add_option("--future", pr_future, "planned inputs CSV")->required();
  prd->add_option("--out", pr_out)->required();
  prd->add_option("--method", pr_method, "kadmm | uk");

  auto* val = app.add_subcommand("validate", "batch error statistics");
  std::string va_lib, va_data, va_out = "validate.json", va_scatter;
  int va_n = 200;
  std::uint64_t va_seed = 1;
  val->add_option("--library", va_lib)->required();
  val->add_option("--data", va_data, "validation log CSV")->required();
  val->add_option("--out", va_out, "summary JSON")->required();
  val->add_option("--scatter", va_scatter, "(interp_metric, zeta) scatter CSV");
  val->add_option("--n-traj", va_n, "number of trajectories");
  val->add_option("--seed", va_seed, "anchor seed");

  auto* ver = app.add_subcommand("verify", "run the oracle cross-check suite");

  auto* ben = app.add_subcommand("bench", "time kadmm against the dense reference");
  std::string be_lib, be_data;
  int be_n = 20, be_rep = 1;
  std::uint64_t be_seed = 1;
  ben->add_option("--library", be_lib)->required();
  ben->add_option("--data", be_data, "validation log CSV")->required();
  ben->add_option("--n-traj", be_n, "trajectories per repetition");
  ben->add_option("--n-rep", be_rep, "repetitions");
  ben->add_option("--seed", be_seed, "anchor seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return cmd_generate(cc.resolve(), gen_kind, gen_out);
    if (bld->parsed()) return cmd_build_library(cc.resolve(), bld_data, bld_out, bld_split);
    if (fitv->parsed()) return cmd_fit_variogram(load_library(fv_lib), fv_zone, fv_pooled, fv_out);
    if (prd->parsed()) return cmd_predict(load_library(pr_lib), pr_tail, pr_future, pr_out, pr_method);
    if (val->parsed()) return cmd_validate(load_library(va_lib), va_data, va_n, va_seed, va_out, va_scatter);
    if (ver->parsed()) return cmd_verify();
    if (ben->parsed()) return cmd_bench(load_library(be_lib), be_data, be_n, be_rep, be_seed);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const SolverDidNotConvergeError& e) {
    std::cerr << "solver did not converge: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
