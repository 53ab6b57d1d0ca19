#ifndef KRIG_DATAGEN_HPP
#define KRIG_DATAGEN_HPP

#include <Eigen/Core>
#include <cstdint>

#include "krig/data.hpp"

namespace krig {

enum class SignalKind { Chirp, Prs, Step };

/// Two-channel excitation waveform (dq-frame current perturbations,
/// per-unit). All samples obey |s| <= amplitude.
struct ExcitationSignal {
  Eigen::MatrixXd samples;  // T x 2
  SignalKind kind = SignalKind::Chirp;
  double amplitude = 0.05;
  double fs = 80.0;

  Eigen::Index length() const { return samples.rows(); }
};

/// Discrete-time nonlinear 2-input/1-output plant standing in for the
/// grid: per-channel first-order pre-filters feed a second-order resonant
/// core (unit DC gain), whose scaled output s passes through the static
/// map y = 50 + 0.2 s - 0.5 s^3, plus white output noise.
/// State dimension is 4 (two pre-filter states, two resonator states).
struct SurrogateSystem {
  double nominal_output = 50.0;  // Hz
  double noise_std = 0.012;      // Hz
  double saturation_limit = 0.05;
  double resonance_hz = 3.0;
  double damping = 0.3;
  double pre_pole = 0.6;       // first-order input smoothing pole
  double mix_d = 0.7;          // channel mix into the resonator
  double mix_q = 0.3;
  double output_gain = 10.0;   // scales resonator output into s
  double fs = 80.0;
  double blowup_bound = 1e6;
};

/// Linear sweep from f0 to f1 over `duration`. Both channels carry the
/// chirp; the q-channel is phase-shifted a quarter period for diversity.
/// Throws NyquistViolationError if f1 >= fs/2.
ExcitationSignal chirp(double f0, double f1, double duration, double fs, double amplitude);

/// Maximum-length binary sequence (LFSR of order k, 2 <= k <= 20) taking
/// values {-amplitude, +amplitude}; the period is 2^k - 1. The two
/// channels use independent register seedings.
ExcitationSignal prs(int register_order, Eigen::Index length, double fs, double amplitude,
                     std::uint64_t seed);

/// Piecewise-constant signal with n_steps random levels drawn uniformly
/// in [-amplitude, amplitude], each held between 0.5 s and 1.5 s.
ExcitationSignal step_battery(int n_steps, double fs, double amplitude, std::uint64_t seed);

/// Sample-wise sum of two signals, clipped to `amplitude`.
ExcitationSignal combine(const ExcitationSignal& a, const ExcitationSignal& b, double amplitude);

/// Runs the plant over `input` and returns the output log (y in Hz, u the
/// clamped input). Deterministic per seed. Throws NumericalBlowupError if
/// the internal state leaves the configured bound.
TimeSeriesLog simulate(const SurrogateSystem& system, const ExcitationSignal& input,
                       std::uint64_t seed);

}  // namespace krig

#endif  // KRIG_DATAGEN_HPP
