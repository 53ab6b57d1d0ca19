#ifndef KRIG_ORACLE_HPP
#define KRIG_ORACLE_HPP

#include <Eigen/Core>

#include "krig/errors.hpp"

namespace krig {

/// First-order optimality report for the regularized kriging problem.
/// A valid optimum has stationarity_residual, feasibility_residual and
/// max_zero_violation all within tolerance (subgradient_violations == 0).
struct Certificate {
  double stationarity_residual = 0.0;  // on nonzero coordinates
  double feasibility_residual = 0.0;   // ||R lambda - r0||_inf
  double max_zero_violation = 0.0;     // max over zeros of |g_i + (R'mu)_i| - beta_i
  int subgradient_violations = 0;      // zeros violating beyond tol

  bool valid(double tol) const {
    return stationarity_residual <= tol && feasibility_residual <= tol &&
           subgradient_violations == 0;
  }
};

/// Brute-force reference solver: enumerates all 3^N sign patterns, solves
/// the equality-constrained quadratic subproblem of each pattern on the
/// feasible affine set via nullspace parametrization, keeps
/// sign-consistent certificate-valid candidates and returns the best.
/// Requires N <= 10. Throws NoValidPatternError if nothing certifies.
Eigen::VectorXd enumerate_solve(const Eigen::MatrixXd& Gamma_D, const Eigen::VectorXd& Gamma_0,
                                const Eigen::MatrixXd& R, const Eigen::VectorXd& r0,
                                const Eigen::VectorXd& beta, double tol = 1e-7);

/// Checks the subgradient KKT conditions of the regularized problem at
/// lambda: finds least-squares multipliers on the nonzero coordinates,
/// then reports the residuals defined above. zero_tol decides which
/// coordinates count as zero.
Certificate certify(const Eigen::VectorXd& lambda, const Eigen::MatrixXd& Gamma_D,
                    const Eigen::VectorXd& Gamma_0, const Eigen::MatrixXd& R,
                    const Eigen::VectorXd& r0, const Eigen::VectorXd& beta, double tol,
                    double zero_tol = 0.0);

}  // namespace krig

#endif  // KRIG_ORACLE_HPP
