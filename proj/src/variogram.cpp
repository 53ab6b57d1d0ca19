#include "krig/variogram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace krig {

double VariogramModel::operator()(double h) const { return eval_model(*this, h); }

double eval_model(const VariogramModel& m, double h) {
  if (h == 0.0) return 0.0;
  return (m.theta - m.varpi) * (1.0 - std::exp(-3.0 * h / m.phi)) + m.varpi;
}

EmpiricalVariogram empirical_semivariogram(const Eigen::MatrixXd& P,
                                           const Eigen::VectorXd& resid, int n_lags) {
  const Eigen::Index N = P.rows();
  if (N < 2) throw Error("empirical semivariogram needs at least 2 points");
  if (n_lags < 1) throw Error("n_lags must be positive");

  double dmax = 0.0;
  for (Eigen::Index i = 0; i < N; ++i) {
    for (Eigen::Index j = i + 1; j < N; ++j) {
      dmax = std::max(dmax, (P.row(i) - P.row(j)).norm());
    }
  }
  if (dmax == 0.0) dmax = 1.0;  // all points coincide; single degenerate bin layout

  EmpiricalVariogram emp;
  emp.lag_centers.resize(n_lags);
  emp.gamma_hat = Eigen::VectorXd::Zero(n_lags);
  emp.pair_counts = Eigen::VectorXi::Zero(n_lags);
  const double width = dmax / n_lags;
  for (int k = 0; k < n_lags; ++k) emp.lag_centers[k] = (k + 0.5) * width;

  for (Eigen::Index i = 0; i < N; ++i) {
    for (Eigen::Index j = i + 1; j < N; ++j) {
      const double h = (P.row(i) - P.row(j)).norm();
      int bin = std::min(static_cast<int>(h / width), n_lags - 1);
      const double sv = 0.5 * (resid[i] - resid[j]) * (resid[i] - resid[j]);
      emp.gamma_hat[bin] += sv;
      emp.pair_counts[bin] += 1;
    }
  }
  for (int k = 0; k < n_lags; ++k) {
    if (emp.pair_counts[k] > 0) emp.gamma_hat[k] /= emp.pair_counts[k];
  }
  return emp;
}

namespace {

// Weighted LS for (theta, varpi) at fixed phi over the nonempty bins,
// honoring theta >= varpi >= 0. Model: theta*(1-E) + varpi*E, E = exp(-3h/phi).
struct SillFit {
  double theta, varpi, loss;
};

SillFit fit_sills(const EmpiricalVariogram& emp, double phi) {
  double s11 = 0, s12 = 0, s22 = 0, b1 = 0, b2 = 0, sw = 0, swg = 0;
  for (Eigen::Index k = 0; k < emp.lag_centers.size(); ++k) {
    if (emp.pair_counts[k] == 0) continue;
    const double w = emp.pair_counts[k];
    const double E = std::exp(-3.0 * emp.lag_centers[k] / phi);
    const double f1 = 1.0 - E, f2 = E;
    const double g = emp.gamma_hat[k];
    s11 += w * f1 * f1;
    s12 += w * f1 * f2;
    s22 += w * f2 * f2;
    b1 += w * f1 * g;
    b2 += w * f2 * g;
    sw += w;
    swg += w * g;
  }
  const double det = s11 * s22 - s12 * s12;
  double theta, varpi;
  if (std::abs(det) > 1e-300) {
    theta = (b1 * s22 - b2 * s12) / det;
    varpi = (s11 * b2 - s12 * b1) / det;
  } else {
    theta = varpi = swg / sw;
  }
  if (varpi < 0.0) {
    varpi = 0.0;
    theta = (s11 > 0) ? b1 / s11 : 0.0;
  }
  if (theta < varpi) {
    theta = varpi = swg / sw;  // flat model is the constrained optimum
  }
  if (theta < 0.0) theta = varpi = 0.0;

  double loss = 0.0;
  for (Eigen::Index k = 0; k < emp.lag_centers.size(); ++k) {
    if (emp.pair_counts[k] == 0) continue;
    const double E = std::exp(-3.0 * emp.lag_centers[k] / phi);
    const double m = theta * (1.0 - E) + varpi * E;
    const double r = m - emp.gamma_hat[k];
    loss += emp.pair_counts[k] * r * r;
  }
  return {theta, varpi, loss};
}

}  // namespace

VariogramModel fit_exponential(const EmpiricalVariogram& emp) {
  const int nonempty = emp.num_nonempty();
  if (nonempty < 3) throw Error("exponential fit needs at least 3 nonempty lags");

  double gmin = std::numeric_limits<double>::infinity(), gmax = 0.0;
  double hmax = 0.0;
  for (Eigen::Index k = 0; k < emp.lag_centers.size(); ++k) {
    if (emp.pair_counts[k] == 0) continue;
    gmin = std::min(gmin, emp.gamma_hat[k]);
    gmax = std::max(gmax, emp.gamma_hat[k]);
    hmax = std::max(hmax, emp.lag_centers[k]);
  }
  if (gmax - gmin <= 1e-15 * std::max(1.0, gmax)) {
    VariogramModel flat;
    flat.theta = flat.varpi = gmax;
    flat.phi = hmax;
    flat.degenerate = true;
    flat.fit_residual = 0.0;
    return flat;
  }

  // coarse log-spaced scan over phi, then golden-section refinement
  const double lo = hmax * 1e-3, hi = hmax * 50.0;
  const int scan = 160;
  double best_phi = lo, best_loss = std::numeric_limits<double>::infinity();
  for (int i = 0; i < scan; ++i) {
    const double phi = lo * std::pow(hi / lo, static_cast<double>(i) / (scan - 1));
    const double loss = fit_sills(emp, phi).loss;
    if (loss < best_loss) { best_loss = loss; best_phi = phi; }
  }
  const double step = std::pow(hi / lo, 1.0 / (scan - 1));
  double a = best_phi / step, b = best_phi * step;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = fit_sills(emp, c).loss, fd = fit_sills(emp, d).loss;
  for (int it = 0; it < 120 && (b - a) > 1e-12 * b; ++it) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - gr * (b - a);
      fc = fit_sills(emp, c).loss;
    } else {
      a = c; c = d; fc = fd;
      d = a + gr * (b - a);
      fd = fit_sills(emp, d).loss;
    }
  }
  const double phi = 0.5 * (a + b);
  const SillFit sf = fit_sills(emp, phi);

  VariogramModel m;
  m.theta = sf.theta;
  m.varpi = sf.varpi;
  m.phi = phi;
  m.fit_residual = sf.loss;
  m.degenerate = false;
  return m;
}

Eigen::MatrixXd build_gamma_d(const VariogramModel& m, const Eigen::MatrixXd& P) {
  const Eigen::Index N = P.rows();
  Eigen::MatrixXd G(N, N);
  for (Eigen::Index i = 0; i < N; ++i) {
    G(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < N; ++j) {
      const double g = eval_model(m, (P.row(i) - P.row(j)).norm());
      G(i, j) = g;
      G(j, i) = g;
    }
  }
  return G;
}

Eigen::VectorXd build_gamma_0(const VariogramModel& m, const Eigen::MatrixXd& P,
                              const Eigen::VectorXd& q) {
  const Eigen::Index N = P.rows();
  Eigen::VectorXd g0(N);
  for (Eigen::Index i = 0; i < N; ++i) {
    g0[i] = eval_model(m, (P.row(i).transpose() - q).norm());
  }
  return g0;
}

GammaMatrices build_matrices(const VariogramModel& m, const Eigen::MatrixXd& P,
                             const Eigen::VectorXd& q) {
  return {build_gamma_d(m, P), build_gamma_0(m, P, q)};
}

}  // namespace krig
