#include "tfgm/noise.hpp"

#include <cmath>

#include "tfgm/util.hpp"

namespace tfgm {

double estimate_gamma(const ComplexMatrix& F) {
  if (F.size() == 0) throw invalid_input("estimate_gamma: empty matrix");
  std::vector<double> abs_re;
  abs_re.reserve(static_cast<std::size_t>(F.size()));
  for (Eigen::Index n = 0; n < F.cols(); ++n) {
    for (Eigen::Index m = 0; m < F.rows(); ++m) {
      abs_re.push_back(std::abs(F(m, n).real()));
    }
  }
  // median(|X|) = 0.6745 sigma for X ~ N(0, sigma^2); the sqrt(2) lifts the
  // per-part deviation to the RMS of the complex coefficient.
  return std::sqrt(2.0) * median(std::move(abs_re)) / 0.6745;
}

ThresholdSpec method_threshold(char method, double gamma, double sigma,
                               double e_quantile) {
  if (gamma < 0.0) throw invalid_input("method_threshold: gamma must be >= 0");
  ThresholdSpec spec;
  switch (method) {
    case 'A':
      spec.criterion = EdgeCriterion::kProduct;
      spec.tau = 9.0 * gamma * gamma;
      spec.target = "stft-modulus";
      break;
    case 'B':
      spec.criterion = EdgeCriterion::kMin;
      spec.tau = 3.0 * gamma;
      spec.target = "stft-modulus";
      break;
    case 'C':
      if (!(sigma > 0.0)) {
        throw invalid_input("method_threshold: method C needs sigma > 0");
      }
      spec.criterion = EdgeCriterion::kProduct;
      spec.tau = 9.0 * gamma * gamma / (sigma * sigma);
      spec.target = "sst2-modulus";
      break;
    case 'D':
      if (!(sigma > 0.0)) {
        throw invalid_input("method_threshold: method D needs sigma > 0");
      }
      spec.criterion = EdgeCriterion::kMin;
      spec.tau = 3.0 * gamma / sigma;
      spec.target = "sst2-modulus";
      break;
    case 'E':
      if (!(e_quantile >= 0.0 && e_quantile <= 1.0)) {
        throw invalid_input("method_threshold: e_quantile outside [0, 1]");
      }
      spec.criterion = EdgeCriterion::kMin;
      spec.tau = 0.0;  // resolved against the smoothed modulus at run time
      spec.target = "smoothed-stft-modulus";
      spec.quantile = e_quantile;
      if (gamma == 0.0) spec.quantile.reset();  // noiseless: keep tau at 0
      break;
    default:
      throw invalid_input("method_threshold: unknown method letter");
  }
  return spec;
}

}  // namespace tfgm
