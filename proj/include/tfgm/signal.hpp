#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tfgm/util.hpp"

namespace tfgm {

// A uniformly sampled real signal. `dt` is the sample spacing in seconds;
// frequencies elsewhere in the library are in cycles per second under the
// same clock, so dt = 1 makes them cycles per sample.
struct Signal {
  std::vector<double> samples;
  double dt = 1.0;
  std::string name;  // optional label, carried through serialization

  std::size_t size() const { return samples.size(); }
};

// Linear chirp sweeping f0 -> f1 over [t_start, t_end) with hard-edged
// support; samples outside the window are exactly zero. t_start/t_end
// default to the full signal extent. Instantaneous frequency must stay
// within (0, Nyquist) across the sweep.
Signal gen_linear_chirp(std::size_t n, double f0, double f1, double dt = 1.0,
                        double amp = 1.0, double t_start = 0.0,
                        double t_end = -1.0);

// Hermite function of the given order evaluated at ((t - center) / scale):
// physicists' Hermite polynomial times a Gaussian, L2-normalized over the
// grid. center/scale are in the same time units as dt. Orders large enough
// to overflow the polynomial recurrence are rejected.
Signal gen_hermite(int order, double center, double scale, std::size_t n,
                   double dt = 1.0);

// Sinusoidal FM: f(t) = f_mean + f_dev * sin(2*pi*f_mod*t). The whole
// excursion [f_mean - f_dev, f_mean + f_dev] must stay within (0, Nyquist).
Signal gen_sinusoidal_chirp(std::size_t n, double f_mean, double f_dev,
                            double f_mod, double dt = 1.0, double amp = 1.0);

// Exponential (geometric) sweep f0 -> f1; both endpoints must be positive
// and below Nyquist. f0 == f1 degenerates to a pure tone.
Signal gen_exponential_chirp(std::size_t n, double f0, double f1,
                             double dt = 1.0, double amp = 1.0);

// Single nonzero sample at `position`.
Signal gen_impulse(std::size_t n, std::size_t position, double amp = 1.0,
                   double dt = 1.0);

// Returns x + w where w is white Gaussian noise scaled so the realized
// (not expected) SNR is exactly snr_db. snr_db = +infinity returns x
// unchanged. Zero-energy x is an error: its SNR is undefined.
Signal add_noise(const Signal& x, double snr_db, std::uint64_t seed);

// 10*log10(||ref||^2 / ||ref - est||^2); +infinity when the signals are
// identical. Sizes must match.
double snr_db(const Signal& ref, const Signal& est);

// Pointwise sum; dt and sizes must match.
Signal mix(const std::vector<Signal>& parts);

double energy(const Signal& x);

// Scale to unit L2 norm. Zero signals are an error.
Signal normalize_energy(const Signal& x);

}  // namespace tfgm
