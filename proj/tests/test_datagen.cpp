#include <cmath>
#include <numbers>

#include "doctest.h"
#include "krig/datagen.hpp"

using namespace krig;

TEST_CASE("degenerate chirp is a pure sinusoid") {
  const ExcitationSignal sig = chirp(1.0, 1.0, 2.0, 80.0, 1.0);
  REQUIRE(sig.length() == 160);
  for (Eigen::Index i = 0; i < sig.length(); ++i) {
    const double t = static_cast<double>(i) / 80.0;
    CHECK(sig.samples(i, 0) ==
          doctest::Approx(std::sin(2.0 * std::numbers::pi * t)).epsilon(1e-12));
  }
  CHECK(sig.samples.col(0).cwiseAbs().maxCoeff() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("chirp accepts the 0.1-15 Hz band at 80 Hz sampling") {
  CHECK_NOTHROW(chirp(0.1, 15.0, 10.0, 80.0, 0.05));
}

TEST_CASE("chirp past Nyquist is rejected") {
  CHECK_THROWS_AS(chirp(0.1, 50.0, 10.0, 80.0, 0.05), NyquistViolationError);
}

TEST_CASE("chirp instantaneous frequency sweeps f0 to f1") {
  // zero crossings of the analytic phase: phase(t) = 2 pi (f0 t + k t^2 / 2)
  const double f0 = 0.5, f1 = 10.0, dur = 20.0, fs = 80.0;
  const ExcitationSignal sig = chirp(f0, f1, dur, fs, 1.0);
  // measure local frequency near the start and near the end by counting
  // sign changes over a window
  auto local_freq = [&](Eigen::Index a, Eigen::Index b) {
    int crossings = 0;
    for (Eigen::Index i = a + 1; i < b; ++i) {
      if ((sig.samples(i, 0) >= 0) != (sig.samples(i - 1, 0) >= 0)) ++crossings;
    }
    const double seconds = static_cast<double>(b - a) / fs;
    return crossings / (2.0 * seconds);
  };
  CHECK(local_freq(0, 320) == doctest::Approx(f0 + (f1 - f0) * 2.0 / dur / 2.0).epsilon(0.3));
  CHECK(local_freq(sig.length() - 320, sig.length()) > 8.0);
}

TEST_CASE("prs has maximal period 2^k - 1") {
  for (int k : {3, 4, 5, 7, 10}) {
    const Eigen::Index period = (1 << k) - 1;
    const ExcitationSignal sig = prs(k, 3 * period, 80.0, 1.0, 99);
    // periodic with period 2^k - 1
    for (Eigen::Index t = 0; t + period < sig.length(); ++t) {
      REQUIRE(sig.samples(t, 0) == sig.samples(t + period, 0));
    }
    // no smaller period dividing it (maximality over one period)
    int distinct = 0;
    for (Eigen::Index d = 1; d < period; ++d) {
      bool same = true;
      for (Eigen::Index t = 0; t < period; ++t) {
        if (sig.samples(t, 0) != sig.samples((t + d) % period, 0)) { same = false; break; }
      }
      if (!same) ++distinct;
    }
    CHECK(distinct == period - 1);
  }
}

TEST_CASE("prs order 4 balances 8 highs against 7 lows per period") {
  const ExcitationSignal sig = prs(4, 15, 80.0, 1.0, 7);
  int highs = 0;
  for (Eigen::Index t = 0; t < 15; ++t) {
    if (sig.samples(t, 0) > 0) ++highs;
  }
  CHECK(highs == 8);
}

TEST_CASE("prs samples sit exactly on +-amplitude") {
  const ExcitationSignal sig = prs(6, 500, 80.0, 0.05, 3);
  for (Eigen::Index t = 0; t < sig.length(); ++t) {
    CHECK(std::abs(std::abs(sig.samples(t, 0)) - 0.05) < 1e-15);
    CHECK(std::abs(std::abs(sig.samples(t, 1)) - 0.05) < 1e-15);
  }
}

TEST_CASE("single step battery level is constant") {
  const ExcitationSignal sig = step_battery(1, 80.0, 0.05, 5);
  CHECK(sig.length() >= 40);  // held at least 0.5 s
  CHECK((sig.samples.col(0).array() == sig.samples(0, 0)).all());
}

TEST_CASE("step battery is deterministic per seed and respects the range") {
  const ExcitationSignal a = step_battery(20, 80.0, 0.05, 123);
  const ExcitationSignal b = step_battery(20, 80.0, 0.05, 123);
  CHECK((a.samples - b.samples).cwiseAbs().maxCoeff() == 0.0);
  CHECK(a.samples.cwiseAbs().maxCoeff() <= 0.05);
  const ExcitationSignal c = step_battery(20, 80.0, 0.05, 124);
  CHECK((a.samples - c.samples).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("surrogate at equilibrium outputs exactly 50 Hz") {
  SurrogateSystem sys;
  sys.noise_std = 0.0;
  ExcitationSignal zero;
  zero.samples = Eigen::MatrixXd::Zero(400, 2);
  const TimeSeriesLog log = simulate(sys, zero, 1);
  CHECK((log.y.array() == 50.0).all());
}

TEST_CASE("surrogate noise calibration: zero input std within 10-30 mHz") {
  SurrogateSystem sys;  // default noise_std
  ExcitationSignal zero;
  zero.samples = Eigen::MatrixXd::Zero(20000, 2);
  const TimeSeriesLog log = simulate(sys, zero, 2);
  const double mean = log.y.mean();
  const double sd = std::sqrt((log.y.array() - mean).square().sum() / (log.y.size() - 1));
  CHECK(sd > 0.010);
  CHECK(sd < 0.030);
}

TEST_CASE("impulse response decays back to 50 Hz") {
  SurrogateSystem sys;
  sys.noise_std = 0.0;
  ExcitationSignal imp;
  imp.samples = Eigen::MatrixXd::Zero(800, 2);
  imp.samples(0, 0) = 0.05;
  imp.samples(0, 1) = 0.05;
  const TimeSeriesLog log = simulate(sys, imp, 3);
  CHECK(std::abs(log.y[log.length() - 1] - 50.0) < 1e-3);
  // and the transient actually moved the output
  CHECK((log.y.array() - 50.0).abs().maxCoeff() > 1e-4);
}

TEST_CASE("simulation is deterministic per seed") {
  SurrogateSystem sys;
  const ExcitationSignal sig = prs(8, 2000, 80.0, 0.05, 17);
  const TimeSeriesLog a = simulate(sys, sig, 42);
  const TimeSeriesLog b = simulate(sys, sig, 42);
  CHECK((a.y - b.y).cwiseAbs().maxCoeff() == 0.0);
  const TimeSeriesLog c = simulate(sys, sig, 43);
  CHECK((a.y - c.y).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("bounded output over one million steps of admissible excitation") {
  SurrogateSystem sys;
  const Eigen::Index T = 1000000;
  const ExcitationSignal sig = prs(12, T, 80.0, 0.05, 11);
  const TimeSeriesLog log = simulate(sys, sig, 4);
  CHECK((log.y.array() - 50.0).abs().maxCoeff() <= 1.0);
}

TEST_CASE("chirp-driven output concentrates energy below 15 Hz") {
  SurrogateSystem sys;
  sys.noise_std = 0.0;
  const double fs = 80.0;
  const ExcitationSignal sig = chirp(0.1, 15.0, 40.0, fs, 0.05);
  const TimeSeriesLog log = simulate(sys, sig, 5);
  const Eigen::Index T = log.length();
  Eigen::ArrayXd x = log.y.array() - log.y.mean();
  // direct DFT energy in-band vs out-of-band
  double in_band = 0.0, out_band = 0.0;
  for (int k = 1; k < 200; ++k) {
    const double f = fs * k / 400.0;  // 0.2 Hz grid up to 39.8
    double re = 0.0, im = 0.0;
    for (Eigen::Index t = 0; t < T; ++t) {
      const double ang = 2.0 * std::numbers::pi * f * (static_cast<double>(t) / fs);
      re += x[t] * std::cos(ang);
      im -= x[t] * std::sin(ang);
    }
    const double e = re * re + im * im;
    if (f <= 15.0) in_band += e;
    else out_band += e;
  }
  CHECK(in_band > 20.0 * out_band);
}
