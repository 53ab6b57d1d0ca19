#include "krig/preprocess.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace krig {

namespace {

// k-means++ seeding.
Eigen::MatrixXd seed_centroids(const Eigen::MatrixXd& X, int K, std::mt19937_64& rng) {
  const Eigen::Index N = X.rows();
  std::uniform_int_distribution<Eigen::Index> uni(0, N - 1);
  Eigen::MatrixXd C(K, X.cols());
  C.row(0) = X.row(uni(rng));
  Eigen::VectorXd d2 = (X.rowwise() - C.row(0)).rowwise().squaredNorm();
  for (int k = 1; k < K; ++k) {
    std::discrete_distribution<Eigen::Index> pick(d2.data(), d2.data() + N);
    C.row(k) = X.row(pick(rng));
    d2 = d2.cwiseMin((X.rowwise() - C.row(k)).rowwise().squaredNorm());
  }
  return C;
}

void lloyd_iterations(const Eigen::MatrixXd& X, Eigen::MatrixXd& C,
                      std::vector<int>& assign, int max_iter) {
  const Eigen::Index N = X.rows();
  const int K = static_cast<int>(C.rows());
  assign.assign(N, -1);
  for (int it = 0; it < max_iter; ++it) {
    bool changed = false;
    for (Eigen::Index i = 0; i < N; ++i) {
      int best = 0;
      double bd = (X.row(i) - C.row(0)).squaredNorm();
      for (int k = 1; k < K; ++k) {
        const double d = (X.row(i) - C.row(k)).squaredNorm();
        if (d < bd) { bd = d; best = k; }
      }
      if (assign[i] != best) { assign[i] = best; changed = true; }
    }
    if (!changed) break;
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(K, X.cols());
    std::vector<Eigen::Index> cnt(K, 0);
    for (Eigen::Index i = 0; i < N; ++i) {
      sum.row(assign[i]) += X.row(i);
      ++cnt[assign[i]];
    }
    for (int k = 0; k < K; ++k) {
      if (cnt[k] > 0) {
        C.row(k) = sum.row(k) / static_cast<double>(cnt[k]);
      } else {
        // reseed an empty cluster at the point farthest from its centroid
        Eigen::Index far = 0;
        double fd = -1.0;
        for (Eigen::Index i = 0; i < N; ++i) {
          const double d = (X.row(i) - C.row(assign[i])).squaredNorm();
          if (d > fd) { fd = d; far = i; }
        }
        C.row(k) = X.row(far);
      }
    }
  }
}

Clustering finalize(const Eigen::MatrixXd& X, int K, std::vector<int> assign) {
  Clustering out;
  out.assignment = std::move(assign);
  out.members.assign(K, {});
  const Eigen::Index N = X.rows();
  for (Eigen::Index i = 0; i < N; ++i) out.members[out.assignment[i]].push_back(i);
  out.centroids = Eigen::MatrixXd::Zero(K, X.cols());
  for (int k = 0; k < K; ++k) {
    for (Eigen::Index i : out.members[k]) out.centroids.row(k) += X.row(i);
    if (!out.members[k].empty()) out.centroids.row(k) /= static_cast<double>(out.members[k].size());
  }
  out.sse = 0.0;
  for (Eigen::Index i = 0; i < N; ++i) {
    out.sse += (X.row(i) - out.centroids.row(out.assignment[i])).squaredNorm();
  }
  return out;
}

}  // namespace

Clustering plain_kmeans(const Eigen::MatrixXd& X, int K, std::uint64_t seed, int max_iter) {
  if (K < 1 || K > X.rows()) throw Error("K must be in [1, N]");
  std::mt19937_64 rng(seed);
  Eigen::MatrixXd C = seed_centroids(X, K, rng);
  std::vector<int> assign;
  lloyd_iterations(X, C, assign, max_iter);
  return finalize(X, K, assign);
}

Clustering balanced_kmeans(const Eigen::MatrixXd& X, int K, std::uint64_t seed, int max_iter) {
  const Eigen::Index N = X.rows();
  if (K < 1 || K > N) throw EmptyClusterError("K must be in [1, N]");
  std::mt19937_64 rng(seed);
  Eigen::MatrixXd C = seed_centroids(X, K, rng);
  std::vector<int> assign;
  lloyd_iterations(X, C, assign, max_iter);

  const Eigen::Index lo = N / K;
  const Eigen::Index hi = (N + K - 1) / K;
  std::vector<Eigen::Index> size(K, 0);
  for (Eigen::Index i = 0; i < N; ++i) ++size[assign[i]];

  // Repair: move the farthest-assigned point of the most over-full
  // cluster to the nearest cluster that still has room.
  const Eigen::Index max_moves = 4 * N;
  for (Eigen::Index move = 0;; ++move) {
    int donor = -1;
    for (int k = 0; k < K; ++k) {
      if (size[k] > hi && (donor < 0 || size[k] > size[donor])) donor = k;
    }
    bool fill_phase = false;
    if (donor < 0) {
      // all within the cap; now fill clusters below the floor
      int needy = -1;
      for (int k = 0; k < K; ++k) {
        if (size[k] < lo && (needy < 0 || size[k] < size[needy])) needy = k;
      }
      if (needy < 0) break;  // balanced
      fill_phase = true;
      // donate from the largest cluster that stays >= lo after the move
      for (int k = 0; k < K; ++k) {
        if (size[k] > lo && (donor < 0 || size[k] > size[donor])) donor = k;
      }
      if (donor < 0) {
        throw EmptyClusterError("cannot fill cluster " + std::to_string(needy) +
                                "; K too large for N");
      }
      // move the donor member nearest to the needy centroid
      Eigen::Index best = -1;
      double bd = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < N; ++i) {
        if (assign[i] != donor) continue;
        const double d = (X.row(i) - C.row(needy)).squaredNorm();
        if (d < bd) { bd = d; best = i; }
      }
      assign[best] = needy;
      --size[donor];
      ++size[needy];
    } else {
      // farthest member of the donor
      Eigen::Index far = -1;
      double fd = -1.0;
      for (Eigen::Index i = 0; i < N; ++i) {
        if (assign[i] != donor) continue;
        const double d = (X.row(i) - C.row(donor)).squaredNorm();
        if (d > fd) { fd = d; far = i; }
      }
      // nearest cluster with room
      int dest = -1;
      double bd = std::numeric_limits<double>::infinity();
      for (int k = 0; k < K; ++k) {
        if (k == donor || size[k] >= hi) continue;
        const double d = (X.row(far) - C.row(k)).squaredNorm();
        if (d < bd) { bd = d; dest = k; }
      }
      if (dest < 0) {
        throw EmptyClusterError("balancing failed: no destination cluster with room");
      }
      assign[far] = dest;
      --size[donor];
      ++size[dest];
    }
    if (move > max_moves) {
      throw EmptyClusterError("balancing did not terminate");
    }
    (void)fill_phase;
  }
  return finalize(X, K, assign);
}

Whitening whiten(const Eigen::MatrixXd& points) {
  const Eigen::Index N = points.rows();
  const Eigen::Index n = points.cols();
  if (N < n + 1) {
    throw RankDeficientError("whitening needs at least n+1 points (" +
                             std::to_string(N) + " given, n=" + std::to_string(n) + ")");
  }
  Whitening w;
  w.center = points.colwise().mean();
  Eigen::MatrixXd centered = points.rowwise() - w.center.transpose();
  Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(N - 1);
  const double ridge = 1e-10 * cov.trace() / static_cast<double>(n);
  cov.diagonal().array() += ridge;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  if (es.info() != Eigen::Success) throw EigenFailureError("covariance eigensolve failed");
  if (es.eigenvalues().minCoeff() < 1e-12) {
    throw RankDeficientError("covariance is rank deficient even after ridge");
  }
  w.transform = es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                es.eigenvectors().transpose();
  w.coords_iso = centered * w.transform.transpose();
  return w;
}

TrendFit fit_trend(const Eigen::MatrixXd& coords_iso, const Eigen::VectorXd& y) {
  const Eigen::Index N = coords_iso.rows();
  const Eigen::Index n = coords_iso.cols();
  if (N < n + 2) throw SingularDesignError("trend fit needs at least n+2 points");
  Eigen::MatrixXd X(N, n + 1);
  X.col(0).setOnes();
  X.rightCols(n) = coords_iso;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() < n + 1) throw SingularDesignError("trend design matrix is rank deficient");
  Eigen::VectorXd coef = qr.solve(y);
  TrendFit fit;
  fit.intercept = coef[0];
  fit.slope = coef.tail(n).transpose();
  fit.residuals = y - X * coef;
  return fit;
}

}  // namespace krig
