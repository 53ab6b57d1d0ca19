#ifndef KRIG_KADMM_HPP
#define KRIG_KADMM_HPP

#include <Eigen/Core>
#include <Eigen/LU>
#include <vector>

#include "krig/errors.hpp"

namespace krig {

/// Spectral form of one zone's regularized-kriging problem:
///   -Gamma_D = Q D Q^T,  R~ = R Q,
/// plus the cached LU factorization of the nu-step KKT matrix
///   [[2D + rho I, R~^T], [R~, 0]],
/// which depends only on (D, rho, R~), never on the query. Immutable
/// after construction; any number of solves may share one form.
class SpectralForm {
 public:
  SpectralForm(const Eigen::MatrixXd& Gamma_D, const Eigen::MatrixXd& R, double rho);

  const Eigen::MatrixXd& Q() const { return Q_; }
  const Eigen::VectorXd& eigenvalues() const { return d_; }
  const Eigen::MatrixXd& R_tilde() const { return Rt_; }
  double rho() const { return rho_; }
  Eigen::Index data_size() const { return Q_.rows(); }
  Eigen::Index constraint_size() const { return Rt_.rows(); }

  /// xi = Q^T Gamma_0 for one query.
  Eigen::VectorXd xi(const Eigen::VectorXd& Gamma_0) const { return Q_.transpose() * Gamma_0; }

  /// Solves the nu-step KKT system for the given right-hand side.
  Eigen::VectorXd solve_kkt(const Eigen::VectorXd& rhs) const { return lu_.solve(rhs); }

  /// Reconstruction error ||Q D Q^T - (-Gamma_D)||_F / ||Gamma_D||_F.
  double reconstruction_error(const Eigen::MatrixXd& Gamma_D) const;

 private:
  Eigen::MatrixXd Q_;
  Eigen::VectorXd d_;
  Eigen::MatrixXd Rt_;
  double rho_ = 0.5;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

struct KadmmOptions {
  double eps_pri = 1e-5;
  double eps_dual = 1e-5;
  int max_iter = 5000;
  bool record_history = true;
};

struct KadmmResult {
  Eigen::VectorXd nu;      // transformed solution
  Eigen::VectorXd alpha;   // splitting variable
  Eigen::VectorXd eta;     // dual variable
  Eigen::VectorXd lambda;  // Q nu, before truncation
  int iterations = 0;
  bool converged = false;
  std::vector<double> r_hist;
  std::vector<double> s_hist;
  double max_constraint_violation = 0.0;  // max over iterates of ||R~ nu - r0||_inf
};

/// Closed-form minimizer of w x^2 + beta |x| - c x for w > 0, beta >= 0:
/// x* = sign(c) max(0, |c| - beta) / (2 w)  (soft thresholding).
inline double prox_psi(double w, double beta, double c) {
  const double mag = std::abs(c) - beta;
  if (mag <= 0.0) return 0.0;
  return (c > 0.0 ? mag : -mag) / (2.0 * w);
}

SpectralForm spectral_decompose(const Eigen::MatrixXd& Gamma_D, const Eigen::MatrixXd& R,
                                double rho);

/// Runs the splitting iterations on the diagonalized problem:
///   nu-step:  cached-LU solve of the KKT system with RHS
///             [-2 xi - Q^T eta + rho Q^T alpha; r0]
///   alpha-step: elementwise prox_psi(rho/2, beta_i, rho (Q nu)_i + eta_i)
///   dual:     eta += rho (Q nu - alpha)
/// starting from alpha = eta = 0, stopping when the primal residual
/// ||Q nu - alpha||_2 <= eps_pri and the dual residual
/// ||rho Q^T (alpha+ - alpha)||_2 <= eps_dual.
KadmmResult kadmm_solve(const SpectralForm& form, const Eigen::VectorXd& Gamma_0,
                        const Eigen::VectorXd& r0, const Eigen::VectorXd& beta,
                        const KadmmOptions& opts = {});

/// lambda* with entries below the threshold zeroed; no renormalization.
Eigen::VectorXd recover_weights(const KadmmResult& result, double threshold = 1e-4);

inline Eigen::Index count_nonzeros(const Eigen::VectorXd& lambda) {
  return (lambda.array() != 0.0).count();
}

/// Objective of the regularized problem:
/// -lambda' Gamma_D lambda + 2 Gamma_0' lambda + sum_i beta_i |lambda_i|.
double regularized_objective(const Eigen::VectorXd& lambda, const Eigen::MatrixXd& Gamma_D,
                             const Eigen::VectorXd& Gamma_0, const Eigen::VectorXd& beta);

}  // namespace krig

#endif  // KRIG_KADMM_HPP
