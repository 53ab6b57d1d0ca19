#ifndef KRIG_VARIOGRAM_HPP
#define KRIG_VARIOGRAM_HPP

#include <Eigen/Core>
#include <vector>

#include "krig/errors.hpp"

namespace krig {

/// Binned estimate of the semivariogram: gamma_hat[k] averages the
/// pairwise semivariances 0.5 (d_i - d_j)^2 whose distance falls in lag
/// bin k. Bins with no pairs keep gamma_hat = 0 and pair_counts = 0.
struct EmpiricalVariogram {
  Eigen::VectorXd lag_centers;  // strictly increasing
  Eigen::VectorXd gamma_hat;
  Eigen::VectorXi pair_counts;

  int num_nonempty() const { return (pair_counts.array() > 0).count(); }
};

/// Exponential model gamma(h) = (theta - varpi)(1 - exp(-3h/phi)) + varpi
/// for h > 0, and gamma(0) = 0 (colocation convention; the nugget applies
/// only away from the origin).
struct VariogramModel {
  double theta = 1.0;   // sill
  double phi = 1.0;     // range
  double varpi = 0.0;   // nugget
  bool degenerate = false;  // set when the fit collapsed to a flat model
  double fit_residual = 0.0;

  double operator()(double h) const;
};

/// Semivariogram matrices of one zone: Gamma_D over the data coordinates
/// (zero diagonal) and Gamma_0 against a query point.
struct GammaMatrices {
  Eigen::MatrixXd Gamma_D;
  Eigen::VectorXd Gamma_0;
};

/// Accumulates all N(N-1)/2 pairwise semivariances into n_lags equal-width
/// distance bins over [0, max pair distance].
EmpiricalVariogram empirical_semivariogram(const Eigen::MatrixXd& coords_iso,
                                           const Eigen::VectorXd& residuals,
                                           int n_lags = 200);

/// Pair-count-weighted least-squares fit of the exponential model, with
/// theta >= varpi >= 0and phi > 0. The search is a coarse log-spaced scan
/// over phi refined by golden section, with the (theta, varpi) pair given
/// in closed form at each phi. A constant gamma_hat yields the flat model
/// with the degenerate flag set.
VariogramModel fit_exponential(const EmpiricalVariogram& emp);

/// Model evaluation honoring gamma(0) = 0.
double eval_model(const VariogramModel& model, double h_norm);

/// Builds Gamma_D for the zone and Gamma_0 for one query (whitened
/// coordinates). A query colocated with a data point gets entry 0.
GammaMatrices build_matrices(const VariogramModel& model, const Eigen::MatrixXd& coords_iso,
                             const Eigen::VectorXd& query_iso);

Eigen::MatrixXd build_gamma_d(const VariogramModel& model, const Eigen::MatrixXd& coords_iso);
Eigen::VectorXd build_gamma_0(const VariogramModel& model, const Eigen::MatrixXd& coords_iso,
                              const Eigen::VectorXd& query_iso);

}  // namespace krig

#endif  // KRIG_VARIOGRAM_HPP
