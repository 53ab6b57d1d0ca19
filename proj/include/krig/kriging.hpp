#ifndef KRIG_KRIGING_HPP
#define KRIG_KRIGING_HPP

#include <Eigen/Core>
#include <Eigen/LU>
#include <memory>

#include "krig/errors.hpp"

namespace krig {

/// Unbiasedness constraints R lambda = r0 with columns r_i = [z_i; 1].
struct ConstraintSystem {
  Eigen::MatrixXd R;  // (n+1) x N

  static ConstraintSystem from_coords(const Eigen::MatrixXd& coords_iso);
  Eigen::VectorXd query_column(const Eigen::VectorXd& query_iso) const;
};

/// Universal-kriging weights with the saddle-point multipliers.
struct UkSolution {
  Eigen::VectorXd lambda;     // N
  Eigen::VectorXd rho_dual;   // n+1
  double kkt_residual = 0.0;  // inf-norm of K x - rhs
};

/// Adaptive-lasso penalties beta_i = min(epsilon / |lambda_i|, beta_cap).
struct PenaltyVector {
  Eigen::VectorXd beta;
  double epsilon = 0.0;
  double beta_cap = 0.0;
};

/// Cached LU factorization of the universal-kriging saddle-point matrix
/// [[-Gamma_D, R^T], [R, 0]]. Built once per zone, reused for every query
/// through solve(). Immutable after construction; concurrent solves are
/// safe (each solve uses its own buffers).
class ZoneKktFactor {
 public:
  ZoneKktFactor(const Eigen::MatrixXd& Gamma_D, const Eigen::MatrixXd& R);

  UkSolution solve(const Eigen::VectorXd& Gamma_0, const Eigen::VectorXd& r0) const;

  Eigen::Index data_size() const { return N_; }
  Eigen::Index constraint_size() const { return p_; }
  /// ||P A - L U|| / ||A|| of the stored factorization.
  double factorization_residual() const;

 private:
  Eigen::Index N_ = 0;
  Eigen::Index p_ = 0;
  Eigen::MatrixXd kkt_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

PenaltyVector adaptive_penalties(const Eigen::VectorXd& lambda_uk, double epsilon,
                                 double beta_cap);

/// Default cap used when the prior weight vanishes: 1e6 * epsilon.
inline double default_beta_cap(double epsilon) { return 1e6 * epsilon; }

/// Prediction-error variance 2 Gamma_0' lambda - lambda' Gamma_D lambda.
/// Values below -1e-8 set *warn and are clamped (as is any tiny negative).
double prediction_variance(const Eigen::VectorXd& lambda, const Eigen::MatrixXd& Gamma_D,
                           const Eigen::VectorXd& Gamma_0, bool* warn = nullptr);

/// Nominal 95% Gaussian interval half-width.
inline double interval95_halfwidth(double variance) {
  return 1.96 * std::sqrt(variance < 0.0 ? 0.0 : variance);
}

}  // namespace krig

#endif  // KRIG_KRIGING_HPP
