#include "krig/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace krig {

namespace {

// Primitive polynomial taps (Fibonacci LFSR, XOR of the listed bit
// positions, 1-based from the output end) for maximal-length sequences.
constexpr int kLfsrTaps[21][2] = {
    {0, 0},  {0, 0},  {2, 1},  {3, 2},   {4, 3},   {5, 3},   {6, 5},
    {7, 6},  {8, 6},  {9, 5},  {10, 7},  {11, 9},  {12, 6},  {13, 4},
    {14, 5}, {15, 14}, {16, 15}, {17, 14}, {18, 11}, {19, 6}, {20, 17}};

// Orders whose two-tap polynomial above is primitive only together with
// extra taps; for those we use 4-tap variants.
constexpr int kLfsrTaps4[21][4] = {
    {0}, {0}, {0}, {0}, {0}, {0}, {0}, {0},
    {8, 6, 5, 4},    // 8
    {0}, {0}, {0},
    {12, 11, 10, 4}, // 12
    {13, 12, 11, 8}, // 13
    {14, 13, 12, 2}, // 14
    {0}, {16, 15, 13, 4}, {0}, {0}, {19, 18, 17, 14}, {0}};

bool needs_four_taps(int k) {
  return k == 8 || k == 12 || k == 13 || k == 14 || k == 16 || k == 19;
}

// One maximal-length +-1 sequence of the requested length.
Eigen::VectorXd lfsr_sequence(int k, Eigen::Index length, std::uint32_t init) {
  std::uint32_t state = init & ((1u << k) - 1);
  if (state == 0) state = 1;
  Eigen::VectorXd out(length);
  for (Eigen::Index t = 0; t < length; ++t) {
    out[t] = (state & 1u) ? 1.0 : -1.0;
    std::uint32_t fb;
    if (needs_four_taps(k)) {
      const int* taps = kLfsrTaps4[k];
      fb = ((state >> (k - taps[0])) ^ (state >> (k - taps[1])) ^
            (state >> (k - taps[2])) ^ (state >> (k - taps[3]))) & 1u;
    } else {
      fb = ((state >> (k - kLfsrTaps[k][0])) ^ (state >> (k - kLfsrTaps[k][1]))) & 1u;
    }
    state = (state >> 1) | (fb << (k - 1));
  }
  return out;
}

}  // namespace

ExcitationSignal chirp(double f0, double f1, double duration, double fs, double amplitude) {
  if (!(f0 > 0.0) || f1 < f0) throw Error("chirp requires 0 < f0 <= f1");
  if (f1 >= fs / 2.0) {
    throw NyquistViolationError("chirp end frequency " + std::to_string(f1) +
                                " Hz >= Nyquist " + std::to_string(fs / 2.0) + " Hz");
  }
  const Eigen::Index T = static_cast<Eigen::Index>(std::llround(duration * fs));
  const double rate = (f1 - f0) / duration;  // Hz per second
  ExcitationSignal sig;
  sig.kind = SignalKind::Chirp;
  sig.amplitude = amplitude;
  sig.fs = fs;
  sig.samples.resize(T, 2);
  for (Eigen::Index i = 0; i < T; ++i) {
    const double t = static_cast<double>(i) / fs;
    const double phase = 2.0 * std::numbers::pi * (f0 * t + 0.5 * rate * t * t);
    sig.samples(i, 0) = amplitude * std::sin(phase);
    sig.samples(i, 1) = amplitude * std::sin(phase + std::numbers::pi / 2.0);
  }
  return sig;
}

ExcitationSignal prs(int register_order, Eigen::Index length, double fs, double amplitude,
                     std::uint64_t seed) {
  if (register_order < 2 || register_order > 20) {
    throw Error("prs register order must be in [2, 20]");
  }
  std::mt19937_64 rng(seed);
  const std::uint32_t mask = (1u << register_order) - 1;
  std::uint32_t init_d = static_cast<std::uint32_t>(rng()) & mask;
  std::uint32_t init_q = static_cast<std::uint32_t>(rng()) & mask;
  if (init_d == 0) init_d = 1;
  if (init_q == 0) init_q = (mask > 1) ? 2 : 1;

  ExcitationSignal sig;
  sig.kind = SignalKind::Prs;
  sig.amplitude = amplitude;
  sig.fs = fs;
  sig.samples.resize(length, 2);
  sig.samples.col(0) = amplitude * lfsr_sequence(register_order, length, init_d);
  sig.samples.col(1) = amplitude * lfsr_sequence(register_order, length, init_q);
  return sig;
}

ExcitationSignal step_battery(int n_steps, double fs, double amplitude, std::uint64_t seed) {
  if (n_steps < 1) throw Error("step_battery requires n_steps >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> level(-amplitude, amplitude);
  std::uniform_real_distribution<double> hold_s(0.5, 1.5);

  std::vector<double> lv_d, lv_q;
  std::vector<Eigen::Index> holds;
  Eigen::Index total = 0;
  for (int s = 0; s < n_steps; ++s) {
    lv_d.push_back(level(rng));
    lv_q.push_back(level(rng));
    const Eigen::Index h = static_cast<Eigen::Index>(std::llround(hold_s(rng) * fs));
    holds.push_back(h);
    total += h;
  }
  ExcitationSignal sig;
  sig.kind = SignalKind::Step;
  sig.amplitude = amplitude;
  sig.fs = fs;
  sig.samples.resize(total, 2);
  Eigen::Index t = 0;
  for (int s = 0; s < n_steps; ++s) {
    sig.samples.block(t, 0, holds[s], 1).setConstant(lv_d[s]);
    sig.samples.block(t, 1, holds[s], 1).setConstant(lv_q[s]);
    t += holds[s];
  }
  return sig;
}

ExcitationSignal combine(const ExcitationSignal& a, const ExcitationSignal& b, double amplitude) {
  const Eigen::Index T = std::min(a.length(), b.length());
  ExcitationSignal sig;
  sig.kind = a.kind;
  sig.amplitude = amplitude;
  sig.fs = a.fs;
  sig.samples = a.samples.topRows(T) + b.samples.topRows(T);
  sig.samples = sig.samples.cwiseMax(-amplitude).cwiseMin(amplitude);
  return sig;
}

TimeSeriesLog simulate(const SurrogateSystem& sys, const ExcitationSignal& input,
                       std::uint64_t seed) {
  if (!input.samples.allFinite()) throw Error("excitation contains non-finite samples");
  const Eigen::Index T = input.length();
  const double Ts = 1.0 / sys.fs;
  const double w0 = 2.0 * std::numbers::pi * sys.resonance_hz;
  const double wd = w0 * std::sqrt(1.0 - sys.damping * sys.damping);
  const double a1 = -2.0 * std::exp(-sys.damping * w0 * Ts) * std::cos(wd * Ts);
  const double a2 = std::exp(-2.0 * sys.damping * w0 * Ts);
  const double b0 = 1.0 + a1 + a2;  // unit DC gain

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);

  TimeSeriesLog log;
  log.fs = sys.fs;
  log.y.resize(T);
  log.u.resize(T, 2);

  double p1 = 0.0, p2 = 0.0;  // pre-filter states
  double x1 = 0.0, x2 = 0.0;  // resonator states (direct form II transposed)
  for (Eigen::Index t = 0; t < T; ++t) {
    const double ud = std::clamp(input.samples(t, 0), -sys.saturation_limit, sys.saturation_limit);
    const double uq = std::clamp(input.samples(t, 1), -sys.saturation_limit, sys.saturation_limit);
    log.u(t, 0) = ud;
    log.u(t, 1) = uq;
    p1 = sys.pre_pole * p1 + (1.0 - sys.pre_pole) * ud;
    p2 = sys.pre_pole * p2 + (1.0 - sys.pre_pole) * uq;
    const double v = sys.mix_d * p1 + sys.mix_q * p2;
    const double w = b0 * v + x1;
    x1 = -a1 * w + x2;
    x2 = -a2 * w;
    const double s = sys.output_gain * w;
    double yt = sys.nominal_output + 0.2 * s - 0.5 * s * s * s;
    if (sys.noise_std > 0.0) yt += sys.noise_std * noise(rng);
    log.y[t] = yt;
    const double state_norm =
        std::sqrt(p1 * p1 + p2 * p2 + x1 * x1 + x2 * x2);
    if (!(state_norm < sys.blowup_bound)) {
      throw NumericalBlowupError("surrogate state norm exceeded bound at t=" +
                                 std::to_string(t));
    }
  }
  return log;
}

}  // namespace krig
