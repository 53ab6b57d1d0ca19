#include "krig/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "json.hpp"

namespace krig {

namespace {

double sample_std(const Eigen::VectorXd& x, double mean) {
  const Eigen::Index n = x.size();
  if (n < 2) return 0.0;
  const double ss = (x.array() - mean).square().sum();
  return std::sqrt(ss / static_cast<double>(n - 1));
}

}  // namespace

Scaler fit_scaler(const TimeSeriesLog& log) {
  const Eigen::Index m = log.num_inputs();
  Scaler s;
  s.mean.resize(1 + m);
  s.std.resize(1 + m);
  s.mean[0] = log.y.mean();
  s.std[0] = sample_std(log.y, s.mean[0]);
  for (Eigen::Index j = 0; j < m; ++j) {
    s.mean[1 + j] = log.u.col(j).mean();
    s.std[1 + j] = sample_std(log.u.col(j), s.mean[1 + j]);
  }
  for (Eigen::Index c = 0; c < s.std.size(); ++c) {
    if (!(s.std[c] > 0.0)) {
      throw ConstantChannelError("channel " + std::to_string(c) +
                                 " has zero sample standard deviation");
    }
  }
  return s;
}

TimeSeriesLog Scaler::transform(const TimeSeriesLog& log) const {
  TimeSeriesLog out = log;
  out.y = (log.y.array() - mean[0]) / std[0];
  for (Eigen::Index j = 0; j < log.u.cols(); ++j) {
    out.u.col(j) = (log.u.col(j).array() - mean[1 + j]) / std[1 + j];
  }
  return out;
}

TimeSeriesLog Scaler::inverse_transform(const TimeSeriesLog& log) const {
  TimeSeriesLog out = log;
  out.y = log.y.array() * std[0] + mean[0];
  for (Eigen::Index j = 0; j < log.u.cols(); ++j) {
    out.u.col(j) = log.u.col(j).array() * std[1 + j] + mean[1 + j];
  }
  return out;
}

std::pair<TimeSeriesLog, Scaler> standardize(const TimeSeriesLog& log) {
  Scaler s = fit_scaler(log);
  return {s.transform(log), s};
}

RegressorSet build_regressors(const TimeSeriesLog& log, int n_a, int n_b) {
  if (n_a < 0 || n_b < 0) throw Error("regressor orders must be >= 0");
  const Eigen::Index T = log.length();
  const Eigen::Index m = log.num_inputs();
  const Eigen::Index lead = std::max(n_a, n_b);
  const Eigen::Index count = T - lead - 1;
  if (count < 1) {
    throw LogTooShortError("log of length " + std::to_string(T) +
                           " cannot supply orders n_a=" + std::to_string(n_a) +
                           ", n_b=" + std::to_string(n_b));
  }
  const Eigen::Index n = regressor_dim(n_a, n_b, static_cast<int>(m));
  RegressorSet set;
  set.Z.resize(count, n);
  set.y.resize(count);
  for (Eigen::Index i = 0; i < count; ++i) {
    const Eigen::Index t = lead + i;
    Eigen::Index c = 0;
    for (int k = 0; k <= n_a; ++k) set.Z(i, c++) = log.y[t - k];
    for (int k = 0; k <= n_b; ++k) {
      for (Eigen::Index j = 0; j < m; ++j) set.Z(i, c++) = log.u(t - k, j);
    }
    set.y[i] = log.y[t + 1];
  }
  return set;
}

DatasetSplit split(Eigen::Index total, std::uint64_t seed, Eigen::Index n_test) {
  if (n_test >= total) throw Error("n_test must be smaller than the dataset");
  std::vector<std::int64_t> idx(total);
  std::iota(idx.begin(), idx.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  DatasetSplit out;
  out.seed = seed;
  out.test.assign(idx.begin(), idx.begin() + n_test);
  out.train.assign(idx.begin() + n_test, idx.end());
  std::sort(out.test.begin(), out.test.end());
  std::sort(out.train.begin(), out.train.end());
  return out;
}

void write_log_csv(const std::string& path, const TimeSeriesLog& log) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open for writing: " + path);
  const Eigen::Index m = log.num_inputs();
  f << "t,y";
  for (Eigen::Index j = 0; j < m; ++j) f << ",u_" << (j + 1);
  f << "\n";
  f.precision(17);
  for (Eigen::Index t = 0; t < log.length(); ++t) {
    f << t << ',' << log.y[t];
    for (Eigen::Index j = 0; j < m; ++j) f << ',' << log.u(t, j);
    f << "\n";
  }
  if (!f) throw IoError("write failed: " + path);
}

TimeSeriesLog read_log_csv(const std::string& path, double fs) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open: " + path);
  std::string line;
  if (!std::getline(f, line)) throw IoError("empty CSV: " + path);
  // header: t,y,u_1..u_m
  Eigen::Index m = static_cast<Eigen::Index>(std::count(line.begin(), line.end(), ',')) - 1;
  if (m < 0 || line.rfind("t,y", 0) != 0) {
    throw IoError("bad CSV header (expected 't,y,u_1..'): " + path);
  }
  std::vector<double> ys;
  std::vector<double> us;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::getline(ss, cell, ',');  // t, ignored
    std::getline(ss, cell, ',');
    ys.push_back(std::stod(cell));
    for (Eigen::Index j = 0; j < m; ++j) {
      if (!std::getline(ss, cell, ',')) throw IoError("short row in " + path);
      us.push_back(std::stod(cell));
    }
  }
  TimeSeriesLog log;
  log.fs = fs;
  const Eigen::Index T = static_cast<Eigen::Index>(ys.size());
  log.y = Eigen::Map<Eigen::VectorXd>(ys.data(), T);
  log.u.resize(T, m);
  for (Eigen::Index t = 0; t < T; ++t) {
    for (Eigen::Index j = 0; j < m; ++j) log.u(t, j) = us[t * m + j];
  }
  return log;
}

void write_split_json(const std::string& path, const DatasetSplit& s) {
  nlohmann::json j;
  j["seed"] = s.seed;
  j["train"] = s.train;
  j["test"] = s.test;
  j["validation"] = s.validation;
  std::ofstream f(path);
  if (!f) throw IoError("cannot open for writing: " + path);
  f << j.dump(1) << "\n";
}

DatasetSplit read_split_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot open: " + path);
  nlohmann::json j;
  f >> j;
  DatasetSplit s;
  s.seed = j.at("seed").get<std::uint64_t>();
  s.train = j.at("train").get<std::vector<std::int64_t>>();
  s.test = j.at("test").get<std::vector<std::int64_t>>();
  s.validation = j.at("validation").get<std::vector<std::int64_t>>();
  return s;
}

}  // namespace krig
