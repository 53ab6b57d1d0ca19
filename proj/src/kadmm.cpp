#include "krig/kadmm.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace krig {

SpectralForm::SpectralForm(const Eigen::MatrixXd& Gamma_D, const Eigen::MatrixXd& R,
                           double rho)
    : rho_(rho) {
  const Eigen::Index N = Gamma_D.rows();
  if (Gamma_D.cols() != N) throw DimensionError("Gamma_D must be square");
  if (R.cols() != N) throw DimensionError("R must have N columns");
  if (!(rho > 0.0)) throw Error("rho must be positive");
  if ((Gamma_D - Gamma_D.transpose()).cwiseAbs().maxCoeff() >
      1e-10 * std::max(1.0, Gamma_D.cwiseAbs().maxCoeff())) {
    throw Error("Gamma_D must be symmetric");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(-Gamma_D);
  if (es.info() != Eigen::Success) {
    throw EigenFailureError("symmetric eigensolver did not converge");
  }
  d_ = es.eigenvalues();
  Q_ = es.eigenvectors();

  // canonical sign: first non-negligible entry of each eigenvector positive,
  // so rebuilt libraries reproduce identical forms
  for (Eigen::Index j = 0; j < N; ++j) {
    const double scale = Q_.col(j).cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < N; ++i) {
      if (std::abs(Q_(i, j)) > 1e-12 * scale) {
        if (Q_(i, j) < 0.0) Q_.col(j) = -Q_.col(j);
        break;
      }
    }
  }

  Rt_ = R * Q_;
  const Eigen::Index p = Rt_.rows();
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(N + p, N + p);
  kkt.topLeftCorner(N, N).diagonal() = 2.0 * d_.array() + rho_;
  kkt.topRightCorner(N, p) = Rt_.transpose();
  kkt.bottomLeftCorner(p, N) = Rt_;
  lu_.compute(kkt);
  const Eigen::VectorXd udiag = lu_.matrixLU().diagonal().cwiseAbs();
  const double umax = udiag.maxCoeff();
  if (!(umax > 0.0) || udiag.minCoeff() < 1e-14 * umax) {
    throw SingularKktError("nu-step KKT matrix is numerically singular");
  }
}

double SpectralForm::reconstruction_error(const Eigen::MatrixXd& Gamma_D) const {
  const Eigen::MatrixXd rebuilt = Q_ * d_.asDiagonal() * Q_.transpose();
  return (rebuilt + Gamma_D).norm() / Gamma_D.norm();
}

SpectralForm spectral_decompose(const Eigen::MatrixXd& Gamma_D, const Eigen::MatrixXd& R,
                                double rho) {
  return SpectralForm(Gamma_D, R, rho);
}

KadmmResult kadmm_solve(const SpectralForm& form, const Eigen::VectorXd& Gamma_0,
                        const Eigen::VectorXd& r0, const Eigen::VectorXd& beta,
                        const KadmmOptions& opts) {
  const Eigen::Index N = form.data_size();
  const Eigen::Index p = form.constraint_size();
  if (Gamma_0.size() != N || beta.size() != N || r0.size() != p) {
    throw DimensionError("kadmm_solve input sizes do not match the form");
  }
  const double rho = form.rho();
  const Eigen::MatrixXd& Q = form.Q();
  const Eigen::VectorXd xi = form.xi(Gamma_0);

  KadmmResult res;
  res.alpha = Eigen::VectorXd::Zero(N);
  res.eta = Eigen::VectorXd::Zero(N);
  if (opts.record_history) {
    res.r_hist.reserve(64);
    res.s_hist.reserve(64);
  }

  Eigen::VectorXd rhs(N + p);
  rhs.tail(p) = r0;
  Eigen::VectorXd w(N), sol(N + p), u(N), alpha_new(N);

  for (int k = 1; k <= opts.max_iter; ++k) {
    // nu-step: RHS top block is -2 xi + Q^T (rho alpha - eta)
    w = rho * res.alpha - res.eta;
    rhs.head(N) = -2.0 * xi;
    rhs.head(N).noalias() += Q.transpose() * w;
    sol = form.solve_kkt(rhs);
    res.nu = sol.head(N);

    u.noalias() = Q * res.nu;

    const double feas = (form.R_tilde() * res.nu - r0).cwiseAbs().maxCoeff();
    if (feas > res.max_constraint_violation) res.max_constraint_violation = feas;

    // alpha-step: elementwise soft threshold with w = rho/2, c = rho u + eta
    for (Eigen::Index i = 0; i < N; ++i) {
      alpha_new[i] = prox_psi(rho / 2.0, beta[i], rho * u[i] + res.eta[i]);
    }

    // dual ascent
    res.eta.noalias() += rho * (u - alpha_new);

    const double r = (u - alpha_new).norm();
    // ||rho Q^T (alpha+ - alpha)||_2 equals rho ||alpha+ - alpha||_2 (Q orthogonal)
    const double s = rho * (alpha_new - res.alpha).norm();
    res.alpha.swap(alpha_new);
    res.iterations = k;
    if (opts.record_history) {
      res.r_hist.push_back(r);
      res.s_hist.push_back(s);
    }
    if (r <= opts.eps_pri && s <= opts.eps_dual) {
      res.converged = true;
      break;
    }
  }
  res.lambda.noalias() = Q * res.nu;
  return res;
}

Eigen::VectorXd recover_weights(const KadmmResult& result, double threshold) {
  Eigen::VectorXd lam = result.lambda;
  if (threshold > 0.0) {
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
      if (std::abs(lam[i]) < threshold) lam[i] = 0.0;
    }
  }
  return lam;
}

double regularized_objective(const Eigen::VectorXd& lambda, const Eigen::MatrixXd& Gamma_D,
                             const Eigen::VectorXd& Gamma_0, const Eigen::VectorXd& beta) {
  return -lambda.dot(Gamma_D * lambda) + 2.0 * Gamma_0.dot(lambda) +
         beta.dot(lambda.cwiseAbs());
}

}  // namespace krig
