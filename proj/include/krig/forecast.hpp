#ifndef KRIG_FORECAST_HPP
#define KRIG_FORECAST_HPP

#include <Eigen/Core>
#include <memory>
#include <vector>

#include "krig/config.hpp"
#include "krig/data.hpp"
#include "krig/kadmm.hpp"
#include "krig/kriging.hpp"
#include "krig/variogram.hpp"

namespace krig {

/// One validity zone with everything the online loop needs: whitened
/// member coordinates, standardized outputs, the whitening transform,
/// the fitted variogram, Gamma_D and the cached factorizations.
struct ClusterModel {
  Eigen::VectorXd centroid;     // standardized regressor space
  Eigen::MatrixXd whitening;    // A_j, n x n
  Eigen::MatrixXd coords_iso;   // N_j x n
  Eigen::VectorXd y_std;        // N_j standardized outputs
  double trend_intercept = 0.0;
  Eigen::RowVectorXd trend_slope;
  VariogramModel variogram;

  // derived, rebuilt on load
  Eigen::MatrixXd Gamma_D;
  Eigen::MatrixXd R;  // (n+1) x N_j
  std::shared_ptr<const ZoneKktFactor> uk_factor;
  std::shared_ptr<const SpectralForm> spectral;

  Eigen::Index size() const { return coords_iso.rows(); }
  /// Populates Gamma_D, R and both factorizations from the stored fields.
  void rebuild_derived(double rho);
};

/// Offline product of the pipeline; immutable during prediction, safe to
/// share across concurrent trajectory runs.
struct ModelLibrary {
  Scaler scaler;
  std::vector<ClusterModel> zones;
  RunConfig config;

  Eigen::Index regressor_dim() const {
    return zones.empty() ? 0 : zones.front().coords_iso.cols();
  }

  /// Standardizes a raw regressor laid out as build_regressors produces.
  Eigen::VectorXd standardize_regressor(const Eigen::VectorXd& z_raw) const;
};

/// Per-step solver output (standardized units).
struct StepResult {
  double y_hat_std = 0.0;
  double variance_std = 0.0;  // Eq.-(6) value at the emitted weights
  Eigen::VectorXd lambda;     // truncated weights actually used
  double lambda_raw_sum = 0.0;
  double interp_metric = 0.0;  // sum |lambda_i| - 1 at the raw weights
  Eigen::Index nonzeros = 0;
  int iterations = 0;
  bool converged = true;
  int zone_id = 0;
};

/// Multi-step prediction with per-step uncertainty and solver statistics.
struct Trajectory {
  Eigen::VectorXd y_hat;      // n_p values, Hz
  Eigen::VectorXd variance;   // Hz^2
  Eigen::VectorXd lo, hi;     // 95% interval bounds, Hz
  std::vector<int> zone_ids;
  std::vector<Eigen::Index> sparsity;   // nonzero counts
  std::vector<double> interp_metric;
  std::vector<int> iterations;
  bool all_converged = true;
  double wall_time_s = 0.0;
};

enum class PredictorKind {
  KAdmm,      // regularized weights via the spectral splitting solver
  Uk,         // plain universal kriging through the cached factorization
  DenseRef,   // universal kriging, rebuilding and factoring per step
};

int select_cluster(const Eigen::VectorXd& z_std, const ModelLibrary& library);

StepResult predict_step_in_zone(const Eigen::VectorXd& z_std, const ModelLibrary& library,
                                int zone_id, PredictorKind kind = PredictorKind::KAdmm);

StepResult predict_step(const Eigen::VectorXd& z_std, const ModelLibrary& library,
                        PredictorKind kind = PredictorKind::KAdmm);

/// Recursive n_p-step forecast. tail supplies y(t)..y(t-n_a) and
/// u(t)..u(t-n_b) in raw units (row 0 oldest); future_u rows are the
/// planned inputs u(t+1), u(t+2), ... (at least n_p - 1 rows).
Trajectory predict_trajectory(const Eigen::VectorXd& tail_y, const Eigen::MatrixXd& tail_u,
                              const Eigen::MatrixXd& future_u, const ModelLibrary& library,
                              PredictorKind kind = PredictorKind::KAdmm);

/// Trapezoidal relative error: y_true has n_p + 1 values (y(t)..y(t+n_p)),
/// y_hat the n_p predictions. The left endpoint at l = 1 uses the
/// measured y(t), contributing zero error.
double trajectory_error(const Eigen::VectorXd& y_true, const Eigen::VectorXd& y_hat);

/// sum |lambda_i| - 1; zero exactly when the weights form a convex
/// combination. Requires sum(lambda) = 1 within 1e-6.
double interpolation_metric(const Eigen::VectorXd& lambda);

}  // namespace krig

#endif  // KRIG_FORECAST_HPP
