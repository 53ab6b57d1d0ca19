#ifndef KRIG_PREPROCESS_HPP
#define KRIG_PREPROCESS_HPP

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "krig/errors.hpp"

namespace krig {

/// Membership result of balanced k-means.
struct Clustering {
  std::vector<int> assignment;        // point -> cluster
  Eigen::MatrixXd centroids;          // K x n (recomputed after balancing)
  std::vector<std::vector<Eigen::Index>> members;
  double sse = 0.0;                   // within-cluster sum of squares
};

/// Whitening transform of one zone: A = Lambda^{-1/2} V^T from the
/// eigendecomposition of the (ridge-stabilized) sample covariance.
struct Whitening {
  Eigen::VectorXd center;     // zone centroid in standardized space
  Eigen::MatrixXd transform;  // n x n
  Eigen::MatrixXd coords_iso; // N_j x n whitened coordinates
};

/// Linear trend mu(z) = c + C z fitted by ordinary least squares on the
/// whitened coordinates, with the detrended residuals.
struct TrendFit {
  double intercept = 0.0;
  Eigen::RowVectorXd slope;   // 1 x n
  Eigen::VectorXd residuals;  // N_j
};

/// Lloyd's k-means (k-means++ seeding, deterministic per seed) followed
/// by a balancing repair that moves the farthest-assigned points from
/// over-full clusters to the nearest under-full ones until every cluster
/// size lies in [floor(N/K), ceil(N/K)].
Clustering balanced_kmeans(const Eigen::MatrixXd& points, int K, std::uint64_t seed,
                           int max_iter = 100);

/// Plain Lloyd's k-means with the same seeding (used as the SSE baseline).
Clustering plain_kmeans(const Eigen::MatrixXd& points, int K, std::uint64_t seed,
                        int max_iter = 100);

/// PCA whitening with ridge 1e-10 * trace/n on the covariance. Throws
/// RankDeficientError if the smallest stabilized eigenvalue is < 1e-12.
Whitening whiten(const Eigen::MatrixXd& points);

/// OLS fit of [1, z_iso] -> y. Throws SingularDesignError when the design
/// matrix is column-rank-deficient.
TrendFit fit_trend(const Eigen::MatrixXd& coords_iso, const Eigen::VectorXd& y);

}  // namespace krig

#endif  // KRIG_PREPROCESS_HPP
