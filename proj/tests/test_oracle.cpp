#include <Eigen/Dense>
#include <random>

#include "doctest.h"
#include "krig/kadmm.hpp"
#include "krig/kriging.hpp"
#include "krig/oracle.hpp"
#include "krig/variogram.hpp"
#include "test_helpers.hpp"

using namespace krig;
using namespace krig::testing;

TEST_CASE("enumeration at beta = 0 equals the UK KKT solve") {
  const TestZone z = make_zone(4, 2, 61);
  ZoneKktFactor factor(z.Gamma_D, z.R);
  const Eigen::VectorXd q = random_query(z, 62);
  const Eigen::VectorXd g0 = build_gamma_0(z.model, z.coords, q);
  const Eigen::VectorXd r0 = query_r0(q);
  const UkSolution uk = factor.solve(g0, r0);
  const Eigen::VectorXd lam = enumerate_solve(z.Gamma_D, g0, z.R, r0, Eigen::VectorXd::Zero(4));
  CHECK((lam - uk.lambda).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("large penalties pick a sparse vertex over the dense interior") {
  // two colocated points: the constraint leaves one degree of freedom and
  // the optimum sits on whichever vertex carries the cheaper penalty
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(2, 2);
  Eigen::VectorXd g0 = Eigen::VectorXd::Zero(2);
  Eigen::MatrixXd R(2, 2);
  R << 0.0, 0.0,   // coordinate row (both points at the origin)
       1.0, 1.0;   // sum-to-one row
  Eigen::VectorXd r0(2);
  r0 << 0.0, 1.0;
  Eigen::VectorXd beta(2);
  beta << 1.0, 2.0;
  const Eigen::VectorXd lam = enumerate_solve(G, g0, R, r0, beta);
  CHECK(lam[0] == doctest::Approx(1.0));
  CHECK(lam[1] == doctest::Approx(0.0));
}

TEST_CASE("a single point pinned by the constraints ignores beta") {
  Eigen::MatrixXd G = Eigen::MatrixXd::Zero(1, 1);
  Eigen::VectorXd g0 = Eigen::VectorXd::Constant(1, 0.3);
  Eigen::MatrixXd R(1, 1);
  R << 1.0;
  Eigen::VectorXd r0 = Eigen::VectorXd::Ones(1);
  for (double b : {0.0, 0.5, 100.0}) {
    const Eigen::VectorXd lam =
        enumerate_solve(G, g0, R, r0, Eigen::VectorXd::Constant(1, b));
    CHECK(lam[0] == doctest::Approx(1.0));
  }
}

TEST_CASE("oracle output certifies itself") {
  const TestZone z = make_zone(6, 2, 63);
  const Eigen::VectorXd q = random_query(z, 64);
  const Eigen::VectorXd g0 = build_gamma_0(z.model, z.coords, q);
  const Eigen::VectorXd r0 = query_r0(q);
  const Eigen::VectorXd beta = Eigen::VectorXd::Constant(6, 0.02);
  const Eigen::VectorXd lam = enumerate_solve(z.Gamma_D, g0, z.R, r0, beta);
  const Certificate cert = certify(lam, z.Gamma_D, g0, z.R, r0, beta, 1e-8, 1e-12);
  CHECK(cert.stationarity_residual <= 1e-8);
  CHECK(cert.feasibility_residual <= 1e-8);
  CHECK(cert.subgradient_violations == 0);
}

TEST_CASE("the certificate detects a perturbed solution") {
  const TestZone z = make_zone(6, 2, 65);
  ZoneKktFactor factor(z.Gamma_D, z.R);
  const Eigen::VectorXd q = random_query(z, 66);
  const Eigen::VectorXd g0 = build_gamma_0(z.model, z.coords, q);
  const Eigen::VectorXd r0 = query_r0(q);
  const UkSolution uk = factor.solve(g0, r0);

  // perturb one coordinate and re-project onto the feasible affine set
  Eigen::VectorXd lam = uk.lambda;
  lam[2] += 1e-2;
  const Eigen::MatrixXd Rt = z.R.transpose();
  lam -= Rt * (z.R * Rt).ldlt().solve(z.R * lam - r0);
  const Certificate cert =
      certify(lam, z.Gamma_D, g0, z.R, r0, Eigen::VectorXd::Zero(6), 1e-8, 1e-12);
  CHECK(cert.feasibility_residual < 1e-9);
  CHECK(cert.stationarity_residual > 1e-4);
}

TEST_CASE("UK weights with beta = 0 carry a valid certificate") {
  const TestZone z = make_zone(12, 3, 67);
  ZoneKktFactor factor(z.Gamma_D, z.R);
  const Eigen::VectorXd q = random_query(z, 68);
  const Eigen::VectorXd g0 = build_gamma_0(z.model, z.coords, q);
  const Eigen::VectorXd r0 = query_r0(q);
  const UkSolution uk = factor.solve(g0, r0);
  const Certificate cert =
      certify(uk.lambda, z.Gamma_D, g0, z.R, r0, Eigen::VectorXd::Zero(12), 1e-7, 1e-12);
  CHECK(cert.valid(1e-7));
}

TEST_CASE("solver and oracle agree on random small instances (reduced run)") {
  std::mt19937_64 rng(70);
  std::uniform_real_distribution<double> ub(0.0, 0.1);
  int checked = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index N = 3 + static_cast<Eigen::Index>(rng() % 6);
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng() % 3);
    if (N < n + 2) continue;
    const TestZone z = make_zone(N, n, rng(), 1.0, 0.0, 0.05 + 0.25 * ub(rng) * 10.0);
    const Eigen::VectorXd q = random_query(z, rng(), 0.4);
    const Eigen::VectorXd g0 = build_gamma_0(z.model, z.coords, q);
    const Eigen::VectorXd r0 = query_r0(q);
    Eigen::VectorXd beta(N);
    for (auto& b : beta.reshaped()) b = ub(rng);

    const Eigen::VectorXd lam_ref = enumerate_solve(z.Gamma_D, g0, z.R, r0, beta);
    const SpectralForm form(z.Gamma_D, z.R, 0.5);
    KadmmOptions opts;
    opts.eps_pri = 1e-11;
    opts.eps_dual = 1e-11;
    opts.max_iter = 100000;
    const KadmmResult res = kadmm_solve(form, g0, r0, beta, opts);
    REQUIRE(res.converged);
    const double f_admm = regularized_objective(res.lambda, z.Gamma_D, g0, beta);
    const double f_ref = regularized_objective(lam_ref, z.Gamma_D, g0, beta);
    CHECK(std::abs(f_admm - f_ref) <= 1e-7);
    ++checked;
  }
  CHECK(checked >= 15);
}

TEST_CASE("converged solver outputs certify at 10x the stopping tolerance") {
  const TestZone z = make_zone(40, 2, 71);
  ZoneKktFactor factor(z.Gamma_D, z.R);
  const SpectralForm form(z.Gamma_D, z.R, 0.5);
  const Eigen::VectorXd q = random_query(z, 72);
  const Eigen::VectorXd g0 = build_gamma_0(z.model, z.coords, q);
  const Eigen::VectorXd r0 = query_r0(q);
  const UkSolution uk = factor.solve(g0, r0);
  const PenaltyVector pv = adaptive_penalties(uk.lambda, 5e-5, default_beta_cap(5e-5));
  const KadmmResult res = kadmm_solve(form, g0, r0, pv.beta);
  REQUIRE(res.converged);
  const Certificate cert = certify(res.lambda, z.Gamma_D, g0, z.R, r0, pv.beta,
                                   10.0 * 1e-5, 1e-4);
  CHECK(cert.valid(10.0 * 1e-5));
}
