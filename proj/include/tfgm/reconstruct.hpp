#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tfgm/graph.hpp"
#include "tfgm/signal.hpp"
#include "tfgm/tfr.hpp"
#include "tfgm/window.hpp"

namespace tfgm {

// One extracted component: the reconstructed signal plus the mask that
// produced it and the representation it was cut from.
struct ComponentEstimate {
  Signal signal;
  MaskMatrix mask;             // full bin range, mirror rows included
  std::string source_kind;     // "stft" or "sst2"
  std::uint64_t edge_count = 0;
  std::size_t pixel_count = 0;  // half-spectrum pixels, before mirroring
  double energy = 0.0;
};

// Masked inversion of an M-bin representation R (STFT or its squeezed
// version); both satisfy the same column identity
//   sum_m R[m, n] = M * x[n] * g(0),
// so  x~[n] = Re( (1 / (M * g(0))) * sum_m R[m, n] * mask[m, n] ).
// The mask must cover the full bin range (conjugate mirror included) for
// the imaginary parts to cancel; the real part is taken regardless.
Signal invert_masked(const ComplexMatrix& R, const MaskMatrix& mask,
                     const GaussianWindow& g, double dt = 1.0);

// Relative L2 error ||ref - est|| / ||ref||.
double rel_error(const Signal& ref, const Signal& est);

// Assignment of ground-truth components to estimated ones. Each truth
// signal is matched to at most one estimate (and vice versa) so that the
// total relative error is minimal; truths left without an estimate score
// 1.0. Exhaustive search, so at most 6 truth components are accepted.
struct MatchResult {
  // match[i] = index into `estimates` for truth i, or -1 if unmatched.
  std::vector<int> match;
  std::vector<double> errors;  // rel_error per truth component
};

MatchResult match_components(const std::vector<Signal>& truth,
                             const std::vector<Signal>& estimates);

}  // namespace tfgm
