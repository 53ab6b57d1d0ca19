#ifndef KRIG_DATA_HPP
#define KRIG_DATA_HPP

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "krig/errors.hpp"

namespace krig {

/// Uniformly sampled record of one experiment: scalar output y(t) (grid
/// frequency, Hz) and m input channels u(t) (dq-frame currents, per-unit).
/// Sample index is implicit (row i <-> t = i).
struct TimeSeriesLog {
  Eigen::VectorXd y;  // length T
  Eigen::MatrixXd u;  // T x m
  double fs = 80.0;   // sampling frequency, Hz

  Eigen::Index length() const { return y.size(); }
  Eigen::Index num_inputs() const { return u.cols(); }
  bool all_finite() const { return y.allFinite() && u.allFinite(); }
};

/// Per-channel affine standardization. Channel 0 is the output, channels
/// 1..m are the inputs. transform/inverse_transform are exact inverses.
struct Scaler {
  Eigen::VectorXd mean;  // length 1+m
  Eigen::VectorXd std;   // length 1+m, strictly positive

  TimeSeriesLog transform(const TimeSeriesLog& log) const;
  TimeSeriesLog inverse_transform(const TimeSeriesLog& log) const;

  double transform_output(double y) const { return (y - mean[0]) / std[0]; }
  double inverse_output(double y_std) const { return y_std * std[0] + mean[0]; }
  double output_std() const { return std[0]; }
};

/// One regressor/target pair. z stacks [y(t)..y(t-n_a), u(t)..u(t-n_b)]
/// (each u lag contributes m entries); the target is y(t+1).
struct RegressorSample {
  Eigen::VectorXd z;
  double y;
};

/// Column-compatible storage of a whole regressor dataset.
struct RegressorSet {
  Eigen::MatrixXd Z;  // N x n
  Eigen::VectorXd y;  // N

  Eigen::Index size() const { return Z.rows(); }
  Eigen::Index dim() const { return Z.cols(); }
  RegressorSample sample(Eigen::Index i) const { return {Z.row(i).transpose(), y[i]}; }
};

/// Disjoint index sets over one RegressorSet.
struct DatasetSplit {
  std::vector<std::int64_t> train;
  std::vector<std::int64_t> test;
  std::vector<std::int64_t> validation;
  std::uint64_t seed = 0;
};

/// Fits per-channel z-score statistics to `log` and returns the
/// standardized log together with the scaler. Sample std uses the N-1
/// normalization. Throws ConstantChannelError if any channel is constant.
std::pair<TimeSeriesLog, Scaler> standardize(const TimeSeriesLog& log);

/// Fits the scaler only (train split) so it can be applied to other logs.
Scaler fit_scaler(const TimeSeriesLog& log);

/// Builds ARX regressors z(t) = [y(t)..y(t-n_a), u(t)..u(t-n_b)] with
/// target y(t+1). Yields length(log) - max(n_a, n_b) - 1 samples.
RegressorSet build_regressors(const TimeSeriesLog& log, int n_a, int n_b);

/// Regressor dimension for given orders and input count.
inline Eigen::Index regressor_dim(int n_a, int n_b, int m) {
  return (n_a + 1) + static_cast<Eigen::Index>(m) * (n_b + 1);
}

/// Deterministic random split: n_test indices go to `test`, the rest to
/// `train`; `validation` stays empty (validation data comes from separate
/// logs). Identical seeds give identical splits.
DatasetSplit split(Eigen::Index total, std::uint64_t seed, Eigen::Index n_test);

// --- CSV / JSON persistence -------------------------------------------------

/// Writes "t,y,u_1..u_m" rows with a mandatory header.
void write_log_csv(const std::string& path, const TimeSeriesLog& log);
TimeSeriesLog read_log_csv(const std::string& path, double fs = 80.0);

void write_split_json(const std::string& path, const DatasetSplit& split);
DatasetSplit read_split_json(const std::string& path);

}  // namespace krig

#endif  // KRIG_DATA_HPP
