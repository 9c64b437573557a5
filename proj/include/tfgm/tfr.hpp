#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>

#include "tfgm/signal.hpp"
#include "tfgm/window.hpp"

namespace tfgm {

using ComplexMatrix = Eigen::MatrixXcd;  // frequency bins x time columns
using RealMatrix = Eigen::MatrixXd;
using IndexMatrix =
    Eigen::Matrix<std::int32_t, Eigen::Dynamic, Eigen::Dynamic>;
using MaskMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

// Marks time-frequency cells with no usable frequency estimate (coefficient
// magnitude at the floor, or the estimate left the valid bin range).
inline constexpr std::int32_t kInvalidBin =
    std::numeric_limits<std::int32_t>::min();

// Discrete STFT with M frequency bins:
//   F[m, n] = sum_u x[u] * g[u - n] * exp(-i 2 pi m (u - n) / M).
// Output is M x N. The window support (2H+1 taps) must fit within M,
// otherwise distinct taps alias onto the same DFT input and the transform
// is no longer invertible by the masked formula below.
ComplexMatrix stft(const Signal& x, const GaussianWindow& g, std::size_t M);

// Frequency-reassignment map: for each cell, the integer bin the local
// instantaneous-frequency estimate rounds to, or kInvalidBin.
//
// order 1 uses the phase derivative  m - (M / 2 pi) * Im(D/F)  where D is
// the STFT taken with the window derivative. order 2 corrects that estimate
// for linear chirp slope using second-order mixed moments and is exact on
// Gaussian-windowed linear chirps; cells where the slope estimator
// degenerates fall back to the first-order value.
IndexMatrix reassignment_operator(const Signal& x, const GaussianWindow& g,
                                  std::size_t M, int order = 2);

// Synchrosqueezing: S[m, n] = sum over v with omega[v, n] == m of F[v, n].
// Cells whose target is kInvalidBin or falls outside [0, M) are dropped,
// never clamped, so a column's mass moves only where an estimate exists.
ComplexMatrix synchrosqueeze(const ComplexMatrix& F, const IndexMatrix& omega);

// Gaussian blur of a modulus matrix, separable, with symmetric reflection
// at the borders (so constants are preserved). kernel_sigma is in pixels.
RealMatrix smooth_modulus(const RealMatrix& A, double kernel_sigma);

// Number of rows that carry independent information for a real input:
// bins 0..floor(M/2) (upper bins are conjugate mirrors).
inline Eigen::Index half_bins(Eigen::Index M) { return M / 2 + 1; }

}  // namespace tfgm
