#include "krig/kriging.hpp"

#include <cmath>

namespace krig {

ConstraintSystem ConstraintSystem::from_coords(const Eigen::MatrixXd& coords_iso) {
  ConstraintSystem cs;
  const Eigen::Index N = coords_iso.rows();
  const Eigen::Index n = coords_iso.cols();
  cs.R.resize(n + 1, N);
  cs.R.topRows(n) = coords_iso.transpose();
  cs.R.bottomRows(1).setOnes();
  return cs;
}

Eigen::VectorXd ConstraintSystem::query_column(const Eigen::VectorXd& q) const {
  Eigen::VectorXd r0(q.size() + 1);
  r0.head(q.size()) = q;
  r0[q.size()] = 1.0;
  return r0;
}

ZoneKktFactor::ZoneKktFactor(const Eigen::MatrixXd& Gamma_D, const Eigen::MatrixXd& R) {
  N_ = Gamma_D.rows();
  p_ = R.rows();
  if (Gamma_D.cols() != N_ || R.cols() != N_) throw DimensionError("Gamma_D/R shape mismatch");
  kkt_.setZero(N_ + p_, N_ + p_);
  kkt_.topLeftCorner(N_, N_) = -Gamma_D;
  kkt_.topRightCorner(N_, p_) = R.transpose();
  kkt_.bottomLeftCorner(p_, N_) = R;
  lu_.compute(kkt_);
  const Eigen::VectorXd udiag = lu_.matrixLU().diagonal().cwiseAbs();
  const double umax = udiag.maxCoeff();
  if (!(umax > 0.0) || udiag.minCoeff() < 1e-14 * umax) {
    throw SingularKktError(
        "universal-kriging KKT matrix is numerically singular "
        "(duplicate coordinates or rank-deficient constraints)");
  }
}

double ZoneKktFactor::factorization_residual() const {
  const Eigen::MatrixXd LU = lu_.matrixLU();
  Eigen::MatrixXd L = Eigen::MatrixXd::Identity(LU.rows(), LU.cols());
  L.triangularView<Eigen::StrictlyLower>() = LU.triangularView<Eigen::StrictlyLower>();
  Eigen::MatrixXd U = LU.triangularView<Eigen::Upper>();
  const Eigen::MatrixXd PA = lu_.permutationP() * kkt_;
  return (PA - L * U).norm() / kkt_.norm();
}

UkSolution ZoneKktFactor::solve(const Eigen::VectorXd& Gamma_0,
                                const Eigen::VectorXd& r0) const {
  if (Gamma_0.size() != N_ || r0.size() != p_) throw DimensionError("UK RHS size mismatch");
  Eigen::VectorXd rhs(N_ + p_);
  rhs.head(N_) = -Gamma_0;
  rhs.tail(p_) = r0;
  Eigen::VectorXd sol = lu_.solve(rhs);
  UkSolution out;
  out.lambda = sol.head(N_);
  out.rho_dual = sol.tail(p_);
  out.kkt_residual = (kkt_ * sol - rhs).cwiseAbs().maxCoeff();
  return out;
}

PenaltyVector adaptive_penalties(const Eigen::VectorXd& lambda_uk, double epsilon,
                                 double beta_cap) {
  if (epsilon < 0.0) throw Error("epsilon must be nonnegative");
  PenaltyVector pv;
  pv.epsilon = epsilon;
  pv.beta_cap = beta_cap;
  pv.beta.resize(lambda_uk.size());
  for (Eigen::Index i = 0; i < lambda_uk.size(); ++i) {
    const double a = std::abs(lambda_uk[i]);
    pv.beta[i] = (a > 0.0) ? std::min(epsilon / a, beta_cap) : beta_cap;
  }
  return pv;
}

double prediction_variance(const Eigen::VectorXd& lambda, const Eigen::MatrixXd& Gamma_D,
                           const Eigen::VectorXd& Gamma_0, bool* warn) {
  const double v = 2.0 * Gamma_0.dot(lambda) - lambda.dot(Gamma_D * lambda);
  if (v < 0.0) {
    if (warn != nullptr && v < -1e-8) *warn = true;
    return 0.0;
  }
  return v;
}

}  // namespace krig
