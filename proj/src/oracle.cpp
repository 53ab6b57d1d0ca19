#include "krig/oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "krig/kadmm.hpp"

namespace krig {

Certificate certify(const Eigen::VectorXd& lambda, const Eigen::MatrixXd& Gamma_D,
                    const Eigen::VectorXd& Gamma_0, const Eigen::MatrixXd& R,
                    const Eigen::VectorXd& r0, const Eigen::VectorXd& beta, double tol,
                    double zero_tol) {
  const Eigen::Index N = lambda.size();
  const Eigen::Index p = R.rows();
  Eigen::VectorXd g = -2.0 * (Gamma_D * lambda) + 2.0 * Gamma_0;

  std::vector<Eigen::Index> active;
  for (Eigen::Index i = 0; i < N; ++i) {
    if (std::abs(lambda[i]) > zero_tol) active.push_back(i);
  }

  Certificate cert;
  Eigen::VectorXd mu = Eigen::VectorXd::Zero(p);
  if (!active.empty()) {
    Eigen::MatrixXd At(active.size(), p);   // rows of R^T on the active set
    Eigen::VectorXd bt(active.size());
    for (std::size_t k = 0; k < active.size(); ++k) {
      const Eigen::Index i = active[k];
      At.row(k) = R.col(i).transpose();
      bt[k] = -(g[i] + beta[i] * (lambda[i] > 0.0 ? 1.0 : -1.0));
    }
    mu = At.completeOrthogonalDecomposition().solve(bt);
    cert.stationarity_residual = (At * mu - bt).cwiseAbs().maxCoeff();
  }

  for (Eigen::Index i = 0; i < N; ++i) {
    if (std::abs(lambda[i]) > zero_tol) continue;
    const double v = std::abs(g[i] + R.col(i).dot(mu)) - beta[i];
    if (v > cert.max_zero_violation) cert.max_zero_violation = v;
    if (v > tol) ++cert.subgradient_violations;
  }
  cert.feasibility_residual = (R * lambda - r0).cwiseAbs().maxCoeff();
  return cert;
}

Eigen::VectorXd enumerate_solve(const Eigen::MatrixXd& Gamma_D, const Eigen::VectorXd& Gamma_0,
                                const Eigen::MatrixXd& R, const Eigen::VectorXd& r0,
                                const Eigen::VectorXd& beta, double tol) {
  const Eigen::Index N = Gamma_D.rows();
  const Eigen::Index p = R.rows();
  if (N > 10) throw Error("enumerate_solve is limited to N <= 10");

  long patterns = 1;
  for (Eigen::Index i = 0; i < N; ++i) patterns *= 3;

  double best_obj = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best;

  std::vector<int> sign(N);
  for (long code = 0; code < patterns; ++code) {
    long c = code;
    int nfree = 0;
    for (Eigen::Index i = 0; i < N; ++i) {
      const int digit = static_cast<int>(c % 3);
      c /= 3;
      sign[i] = (digit == 0) ? 0 : (digit == 1 ? 1 : -1);
      if (sign[i] != 0) ++nfree;
    }
    if (nfree == 0) continue;  // lambda = 0 violates sum-to-one

    Eigen::MatrixXd Rf(p, nfree);
    Eigen::MatrixXd Gf(nfree, nfree);
    Eigen::VectorXd g0f(nfree), bs(nfree);
    {
      int a = 0;
      for (Eigen::Index i = 0; i < N; ++i) {
        if (sign[i] == 0) continue;
        Rf.col(a) = R.col(i);
        g0f[a] = Gamma_0[i];
        bs[a] = beta[i] * sign[i];
        int b = 0;
        for (Eigen::Index j = 0; j < N; ++j) {
          if (sign[j] == 0) continue;
          Gf(a, b++) = Gamma_D(i, j);
        }
        ++a;
      }
    }

    // particular solution of Rf x = r0; skip infeasible patterns
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(Rf);
    Eigen::VectorXd xp = cod.solve(r0);
    if ((Rf * xp - r0).cwiseAbs().maxCoeff() > 1e-9 * std::max(1.0, r0.cwiseAbs().maxCoeff())) {
      continue;
    }

    // fixed signs make the pattern objective a smooth QP:
    //   -x' Gf x + (2 g0f + beta.*s)' x   on   Rf x = r0
    Eigen::VectorXd x;
    const Eigen::Index q = nfree - cod.rank();
    if (q > 0) {
      // nullspace basis of Rf
      Eigen::FullPivLU<Eigen::MatrixXd> lu(Rf);
      Eigen::MatrixXd Z = lu.kernel();
      Eigen::MatrixXd H = 2.0 * (Z.transpose() * (-Gf) * Z);
      Eigen::VectorXd grad0 = -2.0 * (Gf * xp) + 2.0 * g0f + bs;
      Eigen::VectorXd rhs = -(Z.transpose() * grad0);
      Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> hcod(H);
      Eigen::VectorXd t = hcod.solve(rhs);
      if ((H * t - rhs).cwiseAbs().maxCoeff() >
          1e-7 * std::max(1.0, rhs.cwiseAbs().maxCoeff())) {
        continue;  // no finite stationary point on this pattern
      }
      x = xp + Z * t;
    } else {
      x = xp;  // constraints pin the point
    }

    // sign consistency
    bool consistent = true;
    {
      int a = 0;
      for (Eigen::Index i = 0; i < N; ++i) {
        if (sign[i] == 0) continue;
        if (sign[i] * x[a] < -1e-10) { consistent = false; break; }
        ++a;
      }
    }
    if (!consistent) continue;

    Eigen::VectorXd lam = Eigen::VectorXd::Zero(N);
    {
      int a = 0;
      for (Eigen::Index i = 0; i < N; ++i) {
        if (sign[i] != 0) lam[i] = x[a++];
      }
    }

    const Certificate cert = certify(lam, Gamma_D, Gamma_0, R, r0, beta, tol, 1e-12);
    if (!cert.valid(tol)) continue;

    const double obj = regularized_objective(lam, Gamma_D, Gamma_0, beta);
    if (obj < best_obj) {
      best_obj = obj;
      best = lam;
    }
  }

  if (best.size() == 0) {
    throw NoValidPatternError("no sign pattern produced a certificate-valid solution");
  }
  return best;
}

}  // namespace krig
