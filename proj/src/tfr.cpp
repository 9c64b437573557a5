#include "tfgm/tfr.hpp"

#include <fftw3.h>

#include <cfloat>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "tfgm/util.hpp"

namespace tfgm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// STFT with arbitrary real taps on the window's support grid:
//   out[m, n] = sum_v x[n + v] * taps[v + H] * exp(-i 2 pi m v / M).
// Because the support (2H+1 samples) fits inside M, folding v modulo M
// into a length-M buffer changes nothing (the DFT kernel is M-periodic in
// v) and a single real-to-complex FFT yields the column.
ComplexMatrix stft_with_taps(const std::vector<double>& x,
                             const std::vector<double>& taps, std::size_t M) {
  const long long H = (static_cast<long long>(taps.size()) - 1) / 2;
  if (M < 2) throw invalid_input("stft: M must be at least 2");
  if (taps.size() > M) {
    throw invalid_input("stft: window support exceeds the bin count M; "
                        "folding would alias the window");
  }
  const auto N = static_cast<Eigen::Index>(x.size());
  const auto Mi = static_cast<Eigen::Index>(M);
  ComplexMatrix out(Mi, N);

  double* in = fftw_alloc_real(M);
  fftw_complex* spec = fftw_alloc_complex(M / 2 + 1);
  fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(M), in, spec,
                                        FFTW_ESTIMATE);

  for (Eigen::Index n = 0; n < N; ++n) {
    std::fill(in, in + M, 0.0);
    for (long long v = -H; v <= H; ++v) {
      const long long u = n + v;
      if (u < 0 || u >= N) continue;
      const std::size_t j =
          static_cast<std::size_t>(((v % static_cast<long long>(M)) +
                                    static_cast<long long>(M)) %
                                   static_cast<long long>(M));
      in[j] += x[static_cast<std::size_t>(u)] *
               taps[static_cast<std::size_t>(v + H)];
    }
    fftw_execute(plan);
    for (std::size_t m = 0; m <= M / 2; ++m) {
      out(static_cast<Eigen::Index>(m), n) =
          std::complex<double>(spec[m][0], spec[m][1]);
    }
    for (std::size_t m = M / 2 + 1; m < M; ++m) {
      out(static_cast<Eigen::Index>(m), n) =
          std::conj(out(static_cast<Eigen::Index>(M - m), n));
    }
  }

  fftw_destroy_plan(plan);
  fftw_free(spec);
  fftw_free(in);
  return out;
}

std::vector<double> weighted_taps(const GaussianWindow& g, int power) {
  const long long H = static_cast<long long>(g.half_width());
  std::vector<double> taps(g.size());
  for (long long v = -H; v <= H; ++v) {
    double w = g(v);
    for (int k = 0; k < power; ++k) w *= static_cast<double>(v);
    taps[static_cast<std::size_t>(v + H)] = w;
  }
  return taps;
}

}  // namespace

ComplexMatrix stft(const Signal& x, const GaussianWindow& g, std::size_t M) {
  if (x.size() == 0) throw invalid_input("stft: empty signal");
  return stft_with_taps(x.samples, weighted_taps(g, 0), M);
}

IndexMatrix reassignment_operator(const Signal& x, const GaussianWindow& g,
                                  std::size_t M, int order) {
  if (order != 1 && order != 2) {
    throw invalid_input("reassignment: order must be 1 or 2");
  }
  const ComplexMatrix F = stft_with_taps(x.samples, weighted_taps(g, 0), M);
  // T and U are the STFTs with v*g(v) and v^2*g(v) taps. For a Gaussian
  // window the derivative-window transforms need no extra FFTs:
  // g'(v) = -(v / sigma^2) g(v), so D = -T / sigma^2 and vg' gives
  // -U / sigma^2.
  const ComplexMatrix T = stft_with_taps(x.samples, weighted_taps(g, 1), M);
  ComplexMatrix U;
  if (order == 2) {
    U = stft_with_taps(x.samples, weighted_taps(g, 2), M);
  }

  const double sigma_sq = g.sigma() * g.sigma();
  const double Md = static_cast<double>(M);
  IndexMatrix omega(F.rows(), F.cols());

  for (Eigen::Index n = 0; n < F.cols(); ++n) {
    const double col_max = F.col(n).cwiseAbs().maxCoeff();
    // Where the second-order system degenerates (an impulse makes the
    // determinant exactly zero), fall back to the first-order estimate.
    const double denom_tol = 1e-20 * col_max * col_max;
    for (Eigen::Index m = 0; m < F.rows(); ++m) {
      const std::complex<double> f = F(m, n);
      if (std::abs(f) < DBL_MIN) {
        omega(m, n) = kInvalidBin;
        continue;
      }
      double shift;  // estimated IF minus m/M, in cycles per sample
      bool second_order_ok = false;
      if (order == 2) {
        const std::complex<double> t = T(m, n);
        const std::complex<double> det = f * U(m, n) - t * t;
        if (std::abs(det) > denom_tol) {
          // Solving the two window-moment identities of a Gaussian-windowed
          // linear chirp for its instantaneous frequency gives
          //   IF - m/M = Re( -i/(2 pi) * T F / (F U - T^2) ),
          // exact on noiseless linear chirps (tones included).
          const std::complex<double> est =
              std::complex<double>(0.0, -1.0 / kTwoPi) * t * f / det;
          shift = est.real();
          second_order_ok = true;
        }
      }
      if (!second_order_ok) {
        // First order: phase derivative via the derivative-window STFT,
        //   IF - m/M = -Im(D/F) / (2 pi)  with  D = -T / sigma^2.
        shift = std::imag(T(m, n) / f) / (kTwoPi * sigma_sq);
      }
      const double bin = static_cast<double>(m) + Md * shift;
      if (!std::isfinite(bin) || std::abs(bin) > 1e9) {
        omega(m, n) = kInvalidBin;
        continue;
      }
      omega(m, n) = static_cast<std::int32_t>(std::llround(bin));
    }
  }
  return omega;
}

ComplexMatrix synchrosqueeze(const ComplexMatrix& F, const IndexMatrix& omega) {
  if (F.rows() != omega.rows() || F.cols() != omega.cols()) {
    throw invalid_input("synchrosqueeze: omega shape does not match F");
  }
  ComplexMatrix S = ComplexMatrix::Zero(F.rows(), F.cols());
  for (Eigen::Index n = 0; n < F.cols(); ++n) {
    for (Eigen::Index v = 0; v < F.rows(); ++v) {
      const std::int32_t m = omega(v, n);
      if (m == kInvalidBin || m < 0 || m >= F.rows()) continue;
      S(m, n) += F(v, n);
    }
  }
  return S;
}

RealMatrix smooth_modulus(const RealMatrix& A, double kernel_sigma) {
  if (!(kernel_sigma > 0.0)) {
    throw invalid_input("smooth_modulus: kernel_sigma must be positive");
  }
  const int radius =
      std::max(1, static_cast<int>(std::ceil(4.0 * kernel_sigma)));
  std::vector<double> kernel(2 * radius + 1);
  double kernel_sum = 0.0;
  for (int j = -radius; j <= radius; ++j) {
    const double z = static_cast<double>(j) / kernel_sigma;
    kernel[static_cast<std::size_t>(j + radius)] = std::exp(-0.5 * z * z);
    kernel_sum += kernel[static_cast<std::size_t>(j + radius)];
  }
  for (double& k : kernel) k /= kernel_sum;

  // Half-sample symmetric reflection: ...c b a | a b c... Constants pass
  // through untouched because the kernel is normalized.
  const auto reflect = [](Eigen::Index i, Eigen::Index n) {
    while (i < 0 || i >= n) {
      if (i < 0) i = -i - 1;
      if (i >= n) i = 2 * n - 1 - i;
    }
    return i;
  };

  RealMatrix tmp(A.rows(), A.cols());
  for (Eigen::Index r = 0; r < A.rows(); ++r) {
    for (Eigen::Index c = 0; c < A.cols(); ++c) {
      double acc = 0.0;
      for (int j = -radius; j <= radius; ++j) {
        acc += kernel[static_cast<std::size_t>(j + radius)] *
               A(r, reflect(c + j, A.cols()));
      }
      tmp(r, c) = acc;
    }
  }
  RealMatrix out(A.rows(), A.cols());
  for (Eigen::Index c = 0; c < A.cols(); ++c) {
    for (Eigen::Index r = 0; r < A.rows(); ++r) {
      double acc = 0.0;
      for (int j = -radius; j <= radius; ++j) {
        acc += kernel[static_cast<std::size_t>(j + radius)] *
               tmp(reflect(r + j, A.rows()), c);
      }
      out(r, c) = acc;
    }
  }
  return out;
}

}  // namespace tfgm
