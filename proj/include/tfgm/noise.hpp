#pragma once

#include <optional>
#include <string>

#include "tfgm/tfr.hpp"

namespace tfgm {

// Robust noise level from the STFT of a noisy signal:
//   gamma = sqrt(2) * median(|Re F|) / 0.6745
// over all cells. The median absolute deviation of the real part is immune
// to a sparse signal component; the constants rescale it to the RMS of a
// complex Gaussian coefficient.
double estimate_gamma(const ComplexMatrix& F);

enum class EdgeCriterion { kProduct, kMin };

// Threshold test applied to a pixel pair when building graph edges.
struct ThresholdSpec {
  EdgeCriterion criterion = EdgeCriterion::kMin;
  double tau = 0.0;
  // Which modulus matrix the threshold is meant to gate.
  std::string target = "stft-modulus";
  // Set only for the quantile-based method, whose tau depends on the data;
  // it is resolved against the actual matrix at pipeline time.
  std::optional<double> quantile;
};

// Per-method threshold rules. sigma is the analysis window width (the
// squeezed-transform methods rescale by it); e_quantile is the quantile
// level for the smoothed-modulus method.
ThresholdSpec method_threshold(char method, double gamma, double sigma,
                               double e_quantile = 0.80);

}  // namespace tfgm
