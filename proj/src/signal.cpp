#include "tfgm/signal.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace tfgm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_frequency(double f, double dt, const char* what) {
  const double nyquist = 0.5 / dt;
  if (!(f >= 0.0) || !(f < nyquist)) {
    throw invalid_input(std::string(what) +
                        " must lie in [0, Nyquist): got " + fmt_double(f) +
                        " with Nyquist " + fmt_double(nyquist));
  }
}

}  // namespace

Signal gen_linear_chirp(std::size_t n, double f0, double f1, double dt,
                        double amp, double t_start, double t_end) {
  if (n == 0) throw invalid_input("linear chirp: n must be positive");
  if (!(dt > 0.0)) throw invalid_input("linear chirp: dt must be positive");
  check_frequency(f0, dt, "linear chirp f0");
  check_frequency(f1, dt, "linear chirp f1");
  if (t_end < 0.0) t_end = static_cast<double>(n) * dt;
  if (!(t_start < t_end)) {
    throw invalid_input("linear chirp: t_start must precede t_end");
  }

  Signal out;
  out.dt = dt;
  out.samples.assign(n, 0.0);
  const double duration = t_end - t_start;
  const double slope = (f1 - f0) / duration;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * dt;
    if (t < t_start || t >= t_end) continue;
    const double u = t - t_start;
    const double phase = f0 * u + 0.5 * slope * u * u;
    out.samples[i] = amp * std::cos(kTwoPi * phase);
  }
  return out;
}

Signal gen_hermite(int order, double center, double scale, std::size_t n,
                   double dt) {
  if (n == 0) throw invalid_input("hermite: n must be positive");
  if (order < 0) throw invalid_input("hermite: order must be nonnegative");
  if (!(scale > 0.0)) throw invalid_input("hermite: scale must be positive");
  if (!(dt > 0.0)) throw invalid_input("hermite: dt must be positive");

  Signal out;
  out.dt = dt;
  out.samples.assign(n, 0.0);
  double norm_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double z = (static_cast<double>(i) * dt - center) / scale;
    // Physicists' Hermite recurrence H_{k+1}(z) = 2 z H_k - 2 k H_{k-1}.
    double h_prev = 0.0;
    double h = 1.0;
    for (int k = 0; k < order; ++k) {
      const double h_next = 2.0 * z * h - 2.0 * static_cast<double>(k) * h_prev;
      h_prev = h;
      h = h_next;
    }
    const double value = h * std::exp(-0.5 * z * z);
    if (!std::isfinite(value)) {
      throw invalid_input("hermite: polynomial recurrence overflowed; "
                          "order too large for this grid");
    }
    out.samples[i] = value;
    norm_sq += value * value;
  }
  if (norm_sq == 0.0) {
    throw invalid_input("hermite: function vanished on the grid; "
                        "center/scale place it outside the signal");
  }
  const double inv_norm = 1.0 / std::sqrt(norm_sq);
  for (double& s : out.samples) s *= inv_norm;
  return out;
}

Signal gen_sinusoidal_chirp(std::size_t n, double f_mean, double f_dev,
                            double f_mod, double dt, double amp) {
  if (n == 0) throw invalid_input("sinusoidal chirp: n must be positive");
  if (!(dt > 0.0)) throw invalid_input("sinusoidal chirp: dt must be positive");
  if (f_dev < 0.0) throw invalid_input("sinusoidal chirp: f_dev must be >= 0");
  check_frequency(f_mean + f_dev, dt, "sinusoidal chirp peak frequency");
  if (f_mean - f_dev < 0.0) {
    throw invalid_input("sinusoidal chirp: f_mean - f_dev must be >= 0");
  }

  Signal out;
  out.dt = dt;
  out.samples.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * dt;
    // Integral of f_mean + f_dev sin(2 pi f_mod t).
    double phase = f_mean * t;
    if (f_mod != 0.0) {
      phase += f_dev * (1.0 - std::cos(kTwoPi * f_mod * t)) / (kTwoPi * f_mod);
    }
    out.samples[i] = amp * std::cos(kTwoPi * phase);
  }
  return out;
}

Signal gen_exponential_chirp(std::size_t n, double f0, double f1, double dt,
                             double amp) {
  if (n == 0) throw invalid_input("exponential chirp: n must be positive");
  if (!(dt > 0.0)) throw invalid_input("exponential chirp: dt must be positive");
  if (!(f0 > 0.0)) throw invalid_input("exponential chirp: f0 must be positive");
  check_frequency(f0, dt, "exponential chirp f0");
  check_frequency(f1, dt, "exponential chirp f1");
  if (!(f1 > 0.0)) throw invalid_input("exponential chirp: f1 must be positive");

  Signal out;
  out.dt = dt;
  out.samples.assign(n, 0.0);
  const double duration = static_cast<double>(n) * dt;
  const double ratio = f1 / f0;
  const double log_ratio = std::log(ratio);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * dt;
    // f(t) = f0 (f1/f0)^(t/T); integrate for the phase. The tone case
    // (f0 == f1) integrates to f0 t directly.
    double phase = 0.0;
    if (std::abs(log_ratio) < 1e-15) {
      phase = f0 * t;
    } else {
      phase = f0 * duration / log_ratio * (std::pow(ratio, t / duration) - 1.0);
    }
    out.samples[i] = amp * std::cos(kTwoPi * phase);
  }
  return out;
}

Signal gen_impulse(std::size_t n, std::size_t position, double amp, double dt) {
  if (n == 0) throw invalid_input("impulse: n must be positive");
  if (!(dt > 0.0)) throw invalid_input("impulse: dt must be positive");
  if (position >= n) throw invalid_input("impulse: position out of range");
  Signal out;
  out.dt = dt;
  out.samples.assign(n, 0.0);
  out.samples[position] = amp;
  return out;
}

Signal add_noise(const Signal& x, double snr_db, std::uint64_t seed) {
  if (std::isinf(snr_db) && snr_db > 0) return x;
  const double signal_energy = energy(x);
  if (signal_energy == 0.0) {
    throw invalid_input("add_noise: SNR undefined for a zero-energy signal");
  }

  GaussianRng rng(seed);
  std::vector<double> w(x.size());
  double noise_energy = 0.0;
  for (double& v : w) {
    v = rng();
    noise_energy += v * v;
  }
  if (noise_energy == 0.0) {
    throw invalid_input("add_noise: degenerate zero noise draw");
  }
  // Scale the realized vector so the measured SNR equals the request
  // exactly, not just in expectation.
  const double target_noise_energy =
      signal_energy / std::pow(10.0, snr_db / 10.0);
  const double scale = std::sqrt(target_noise_energy / noise_energy);

  Signal out = x;
  for (std::size_t i = 0; i < w.size(); ++i) out.samples[i] += scale * w[i];
  return out;
}

double snr_db(const Signal& ref, const Signal& est) {
  if (ref.size() != est.size()) {
    throw invalid_input("snr_db: signal lengths differ");
  }
  const double ref_energy = energy(ref);
  if (ref_energy == 0.0) {
    throw invalid_input("snr_db: zero reference signal");
  }
  double err_energy = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const double d = ref.samples[i] - est.samples[i];
    err_energy += d * d;
  }
  if (err_energy == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(ref_energy / err_energy);
}

Signal mix(const std::vector<Signal>& parts) {
  if (parts.empty()) throw invalid_input("mix: no signals given");
  Signal out = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k) {
    const Signal& p = parts[k];
    if (p.size() != out.size() || p.dt != out.dt) {
      throw invalid_input("mix: signals must share length and dt");
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
      out.samples[i] += p.samples[i];
    }
  }
  return out;
}

double energy(const Signal& x) {
  double e = 0.0;
  for (double s : x.samples) e += s * s;
  return e;
}

Signal normalize_energy(const Signal& x) {
  const double e = energy(x);
  if (e == 0.0) throw invalid_input("normalize_energy: zero signal");
  Signal out = x;
  const double inv = 1.0 / std::sqrt(e);
  for (double& s : out.samples) s *= inv;
  return out;
}

}  // namespace tfgm
