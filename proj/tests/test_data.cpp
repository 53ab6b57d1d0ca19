#include <Eigen/Core>
#include <cstdio>
#include <random>

#include "doctest.h"
#include "krig/data.hpp"

using namespace krig;

namespace {

TimeSeriesLog make_log(const Eigen::VectorXd& y, const Eigen::MatrixXd& u) {
  TimeSeriesLog log;
  log.y = y;
  log.u = u;
  return log;
}

}  // namespace

TEST_CASE("standardize maps a channel to mean 0 / std 1") {
  Eigen::VectorXd y(3);
  y << 1.0, 2.0, 3.0;
  Eigen::MatrixXd u(3, 1);
  u << 4.0, 5.0, 7.0;
  auto [std_log, scaler] = standardize(make_log(y, u));
  CHECK(std_log.y.mean() == doctest::Approx(0.0).epsilon(1e-10));
  const double sd = std::sqrt((std_log.y.array() - std_log.y.mean()).square().sum() / 2.0);
  CHECK(sd == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(scaler.mean[0] == doctest::Approx(2.0));
}

TEST_CASE("standardizing an already standardized channel is near-identity") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  Eigen::VectorXd y(200);
  for (auto& v : y.reshaped()) v = nd(rng);
  Eigen::MatrixXd u(200, 1);
  for (auto& v : u.reshaped()) v = nd(rng);
  auto [std1, s1] = standardize(make_log(y, u));
  auto [std2, s2] = standardize(std1);
  CHECK(std::abs(s2.mean[0]) < 1e-10);
  CHECK(std::abs(s2.std[0] - 1.0) < 1e-10);
  CHECK((std2.y - std1.y).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("constant channel raises ConstantChannelError") {
  Eigen::VectorXd y(3);
  y << 5.0, 5.0, 5.0;
  Eigen::MatrixXd u(3, 1);
  u << 1.0, 2.0, 3.0;
  CHECK_THROWS_AS(standardize(make_log(y, u)), ConstantChannelError);
}

TEST_CASE("scaler round-trip is exact within 1e-12 (property)") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> nd(3.0, 7.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int T = 50 + static_cast<int>(rng() % 200);
    Eigen::VectorXd y(T);
    Eigen::MatrixXd u(T, 2);
    for (auto& v : y.reshaped()) v = nd(rng);
    for (auto& v : u.reshaped()) v = nd(rng);
    auto [std_log, scaler] = standardize(make_log(y, u));
    const TimeSeriesLog back = scaler.inverse_transform(std_log);
    CHECK((back.y - y).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((back.u - u).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("regressor dimension matches the configured orders") {
  CHECK(regressor_dim(2, 4, 2) == 13);
}

TEST_CASE("build_regressors smallest orders") {
  Eigen::VectorXd y(3);
  y << 1.0, 2.0, 3.0;
  Eigen::MatrixXd u(3, 1);
  u << 10.0, 20.0, 30.0;
  const RegressorSet set = build_regressors(make_log(y, u), 0, 0);
  REQUIRE(set.size() == 2);
  REQUIRE(set.dim() == 2);
  CHECK(set.Z(0, 0) == 1.0);  // y(t)
  CHECK(set.Z(0, 1) == 10.0); // u(t)
  CHECK(set.y[0] == 2.0);     // y(t+1)
  CHECK(set.Z(1, 0) == 2.0);
  CHECK(set.y[1] == 3.0);
}

TEST_CASE("build_regressors count and layout for n_a=1, n_b=0, m=2") {
  const int T = 10;
  Eigen::VectorXd y(T);
  Eigen::MatrixXd u(T, 2);
  for (int t = 0; t < T; ++t) {
    y[t] = t;
    u(t, 0) = 100 + t;
    u(t, 1) = 200 + t;
  }
  const RegressorSet set = build_regressors(make_log(y, u), 1, 0);
  REQUIRE(set.size() == 8);  // 10 - max(1,0) - 1
  REQUIRE(set.dim() == 4);
  // first sample at t = 1: z = [y(1), y(0), u1(1), u2(1)], target y(2)
  CHECK(set.Z(0, 0) == 1.0);
  CHECK(set.Z(0, 1) == 0.0);
  CHECK(set.Z(0, 2) == 101.0);
  CHECK(set.Z(0, 3) == 201.0);
  CHECK(set.y[0] == 2.0);
}

TEST_CASE("regressor count formula holds across orders (property)") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 30; ++trial) {
    const int n_a = static_cast<int>(rng() % 4);
    const int n_b = static_cast<int>(rng() % 6);
    const int T = std::max(n_a, n_b) + 2 + static_cast<int>(rng() % 40);
    Eigen::VectorXd y(T);
    Eigen::MatrixXd u(T, 2);
    for (auto& v : y.reshaped()) v = nd(rng);
    for (auto& v : u.reshaped()) v = nd(rng);
    const RegressorSet set = build_regressors(make_log(y, u), n_a, n_b);
    CHECK(set.size() == T - std::max(n_a, n_b) - 1);
    CHECK(set.dim() == regressor_dim(n_a, n_b, 2));
  }
}

TEST_CASE("too-short log raises LogTooShortError") {
  Eigen::VectorXd y(4);
  y.setOnes();
  Eigen::MatrixXd u = Eigen::MatrixXd::Ones(4, 1);
  CHECK_THROWS_AS(build_regressors(make_log(y, u), 2, 4), LogTooShortError);
}

TEST_CASE("split produces disjoint sets of the right size") {
  const DatasetSplit s = split(100, 42, 10);
  CHECK(s.test.size() == 10);
  CHECK(s.train.size() == 90);
  std::vector<std::int64_t> all = s.train;
  all.insert(all.end(), s.test.begin(), s.test.end());
  std::sort(all.begin(), all.end());
  for (std::int64_t i = 0; i < 100; ++i) CHECK(all[i] == i);
}

TEST_CASE("split is deterministic per seed") {
  const DatasetSplit a = split(500, 7, 50);
  const DatasetSplit b = split(500, 7, 50);
  CHECK(a.train == b.train);
  CHECK(a.test == b.test);
  const DatasetSplit c = split(500, 8, 50);
  CHECK(a.test != c.test);
}

TEST_CASE("log CSV round-trip") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> nd(50.0, 0.02);
  Eigen::VectorXd y(25);
  Eigen::MatrixXd u(25, 2);
  for (auto& v : y.reshaped()) v = nd(rng);
  for (auto& v : u.reshaped()) v = nd(rng);
  const TimeSeriesLog log = make_log(y, u);
  const std::string path = "test_log_roundtrip.csv";
  write_log_csv(path, log);
  const TimeSeriesLog back = read_log_csv(path);
  CHECK((back.y - log.y).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.u - log.u).cwiseAbs().maxCoeff() == 0.0);
  std::remove(path.c_str());
}

TEST_CASE("split JSON round-trip") {
  const DatasetSplit s = split(40, 3, 5);
  const std::string path = "test_split_roundtrip.json";
  write_split_json(path, s);
  const DatasetSplit back = read_split_json(path);
  CHECK(back.train == s.train);
  CHECK(back.test == s.test);
  CHECK(back.seed == s.seed);
  std::remove(path.c_str());
}
