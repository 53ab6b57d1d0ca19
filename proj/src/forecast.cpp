#include "krig/forecast.hpp"

#include <chrono>
#include <cmath>

namespace krig {

void ClusterModel::rebuild_derived(double rho) {
  Gamma_D = build_gamma_d(variogram, coords_iso);
  R = ConstraintSystem::from_coords(coords_iso).R;
  uk_factor = std::make_shared<const ZoneKktFactor>(Gamma_D, R);
  spectral = std::make_shared<const SpectralForm>(Gamma_D, R, rho);
}

Eigen::VectorXd ModelLibrary::standardize_regressor(const Eigen::VectorXd& z_raw) const {
  const int n_a = config.n_a;
  const int n_b = config.n_b;
  const Eigen::Index m = scaler.mean.size() - 1;
  Eigen::VectorXd z(z_raw.size());
  Eigen::Index c = 0;
  for (int k = 0; k <= n_a; ++k, ++c) {
    z[c] = (z_raw[c] - scaler.mean[0]) / scaler.std[0];
  }
  for (int k = 0; k <= n_b; ++k) {
    for (Eigen::Index j = 0; j < m; ++j, ++c) {
      z[c] = (z_raw[c] - scaler.mean[1 + j]) / scaler.std[1 + j];
    }
  }
  return z;
}

int select_cluster(const Eigen::VectorXd& z_std, const ModelLibrary& library) {
  int best = 0;
  double bd = (z_std - library.zones[0].centroid).squaredNorm();
  for (int j = 1; j < static_cast<int>(library.zones.size()); ++j) {
    const double d = (z_std - library.zones[j].centroid).squaredNorm();
    if (d < bd) {  // strict: ties keep the lowest index
      bd = d;
      best = j;
    }
  }
  return best;
}

namespace {

StepResult dense_reference_step(const Eigen::VectorXd& z_iso, const ClusterModel& zone,
                                int zone_id) {
  // no cross-step caching: evaluate Gamma_D from the variogram, assemble
  // and factor the saddle-point system, solve for this query only
  const Eigen::MatrixXd Gd = build_gamma_d(zone.variogram, zone.coords_iso);
  const Eigen::MatrixXd R = ConstraintSystem::from_coords(zone.coords_iso).R;
  ZoneKktFactor factor(Gd, R);
  const Eigen::VectorXd g0 = build_gamma_0(zone.variogram, zone.coords_iso, z_iso);
  Eigen::VectorXd r0(z_iso.size() + 1);
  r0.head(z_iso.size()) = z_iso;
  r0[z_iso.size()] = 1.0;
  const UkSolution uk = factor.solve(g0, r0);

  StepResult out;
  out.zone_id = zone_id;
  out.lambda = uk.lambda;
  out.lambda_raw_sum = uk.lambda.sum();
  out.interp_metric = uk.lambda.cwiseAbs().sum() - 1.0;
  out.nonzeros = count_nonzeros(uk.lambda);
  out.iterations = 0;
  out.y_hat_std = uk.lambda.dot(zone.y_std);
  out.variance_std = prediction_variance(uk.lambda, Gd, g0);
  return out;
}

}  // namespace

StepResult predict_step_in_zone(const Eigen::VectorXd& z_std, const ModelLibrary& library,
                                int zone_id, PredictorKind kind) {
  const ClusterModel& zone = library.zones[zone_id];
  const Eigen::VectorXd z_iso = zone.whitening * (z_std - zone.centroid);

  if (kind == PredictorKind::DenseRef) {
    return dense_reference_step(z_iso, zone, zone_id);
  }

  const Eigen::VectorXd g0 = build_gamma_0(library.zones[zone_id].variogram,
                                           zone.coords_iso, z_iso);
  Eigen::VectorXd r0(z_iso.size() + 1);
  r0.head(z_iso.size()) = z_iso;
  r0[z_iso.size()] = 1.0;

  const UkSolution uk = zone.uk_factor->solve(g0, r0);

  StepResult out;
  out.zone_id = zone_id;

  if (kind == PredictorKind::Uk) {
    out.lambda = uk.lambda;
    out.lambda_raw_sum = uk.lambda.sum();
    out.interp_metric = uk.lambda.cwiseAbs().sum() - 1.0;
    out.nonzeros = count_nonzeros(uk.lambda);
    out.y_hat_std = uk.lambda.dot(zone.y_std);
    out.variance_std = prediction_variance(uk.lambda, zone.Gamma_D, g0);
    return out;
  }

  const PenaltyVector pv = adaptive_penalties(uk.lambda, library.config.epsilon,
                                              library.config.beta_cap());
  KadmmOptions opts;
  opts.eps_pri = library.config.eps_pri;
  opts.eps_dual = library.config.eps_dual;
  opts.max_iter = library.config.max_iter;
  opts.record_history = false;
  const KadmmResult res = kadmm_solve(*zone.spectral, g0, r0, pv.beta, opts);

  out.iterations = res.iterations;
  out.converged = res.converged;
  out.lambda = recover_weights(res, library.config.threshold);
  out.lambda_raw_sum = res.lambda.sum();
  out.interp_metric = res.lambda.cwiseAbs().sum() - 1.0;
  out.nonzeros = count_nonzeros(out.lambda);
  out.y_hat_std = out.lambda.dot(zone.y_std);
  out.variance_std = prediction_variance(out.lambda, zone.Gamma_D, g0);
  return out;
}

StepResult predict_step(const Eigen::VectorXd& z_std, const ModelLibrary& library,
                        PredictorKind kind) {
  return predict_step_in_zone(z_std, library, select_cluster(z_std, library), kind);
}

Trajectory predict_trajectory(const Eigen::VectorXd& tail_y, const Eigen::MatrixXd& tail_u,
                              const Eigen::MatrixXd& future_u, const ModelLibrary& library,
                              PredictorKind kind) {
  const int n_a = library.config.n_a;
  const int n_b = library.config.n_b;
  const int n_p = library.config.n_p;
  const Eigen::Index m = tail_u.cols();
  if (tail_y.size() < n_a + 1 || tail_u.rows() < n_b + 1) {
    throw DimensionError("log tail too short for the configured orders");
  }
  if (future_u.rows() < n_p - 1) {
    throw DimensionError("future inputs must cover n_p - 1 steps");
  }

  // histories, newest last
  std::vector<double> yh(tail_y.data(), tail_y.data() + tail_y.size());
  std::vector<Eigen::RowVectorXd> uh;
  for (Eigen::Index r = 0; r < tail_u.rows(); ++r) uh.push_back(tail_u.row(r));

  Trajectory tr;
  tr.y_hat.resize(n_p);
  tr.variance.resize(n_p);
  tr.lo.resize(n_p);
  tr.hi.resize(n_p);

  const auto t0 = std::chrono::steady_clock::now();
  for (int l = 0; l < n_p; ++l) {
    Eigen::VectorXd z_raw(regressor_dim(n_a, n_b, static_cast<int>(m)));
    Eigen::Index c = 0;
    for (int k = 0; k <= n_a; ++k) z_raw[c++] = yh[yh.size() - 1 - k];
    for (int k = 0; k <= n_b; ++k) {
      for (Eigen::Index j = 0; j < m; ++j) z_raw[c++] = uh[uh.size() - 1 - k][j];
    }
    const Eigen::VectorXd z_std = library.standardize_regressor(z_raw);
    const StepResult step = predict_step(z_std, library, kind);

    const double y_hz = library.scaler.inverse_output(step.y_hat_std);
    const double var_hz = step.variance_std * library.scaler.output_std() *
                          library.scaler.output_std();
    const double half = interval95_halfwidth(var_hz);
    tr.y_hat[l] = y_hz;
    tr.variance[l] = var_hz;
    tr.lo[l] = y_hz - half;
    tr.hi[l] = y_hz + half;
    tr.zone_ids.push_back(step.zone_id);
    tr.sparsity.push_back(step.nonzeros);
    tr.interp_metric.push_back(step.interp_metric);
    tr.iterations.push_back(step.iterations);
    tr.all_converged = tr.all_converged && step.converged;

    yh.push_back(y_hz);
    if (l < n_p - 1) uh.push_back(future_u.row(l));
  }
  tr.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return tr;
}

double trajectory_error(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_hat) {
  const Eigen::Index n_p = y_hat.size();
  if (y_true.size() != n_p + 1) {
    throw DimensionError("trajectory_error needs n_p + 1 true values");
  }
  for (Eigen::Index i = 0; i <= n_p; ++i) {
    if (std::abs(y_true[i]) < 1e-12) throw ZeroTruthError("true output too close to zero");
  }
  // T_s / (2 T) = 1 / (2 n_p); the sampling period cancels
  const double c = 1.0 / (2.0 * static_cast<double>(n_p));
  double acc = 0.0;
  for (Eigen::Index l = 1; l <= n_p; ++l) {
    acc += std::abs(y_true[l] - y_hat[l - 1]) / std::abs(y_true[l]);
    if (l >= 2) {
      acc += std::abs(y_true[l - 1] - y_hat[l - 2]) / std::abs(y_true[l - 1]);
    }
    // l == 1: the left endpoint is the measured y(t), zero error
  }
  return c * acc;
}

double interpolation_metric(const Eigen::VectorXd& lambda) {
  if (std::abs(lambda.sum() - 1.0) > 1e-6) {
    throw Error("interpolation metric expects weights summing to one");
  }
  return lambda.cwiseAbs().sum() - 1.0;
}

}  // namespace krig
