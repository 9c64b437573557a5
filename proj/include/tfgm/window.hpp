#pragma once

#include <cstddef>
#include <vector>

namespace tfgm {

// Truncated Gaussian analysis window g[u] = exp(-u^2 / (2*sigma^2)) for
// |u| <= truncation*sigma. Stored symmetrically around the center tap, so
// size() is odd and g(0) == 1.
class GaussianWindow {
 public:
  // truncation below 4 would clip visible mass; reject it.
  GaussianWindow(double sigma, double truncation = 6.0);

  double sigma() const { return sigma_; }
  // Half-width H: taps run over u in [-H, H].
  std::size_t half_width() const { return half_width_; }
  std::size_t size() const { return 2 * half_width_ + 1; }

  // Value at signed offset u from the center; zero outside the support.
  double operator()(long long u) const {
    const long long h = static_cast<long long>(half_width_);
    if (u < -h || u > h) return 0.0;
    return taps_[static_cast<std::size_t>(u + h)];
  }

  const std::vector<double>& taps() const { return taps_; }

  // Derivative of the continuous Gaussian sampled on the same support:
  // g'(u) = -(u / sigma^2) * g(u). Used by the reassignment operators.
  double derivative(long long u) const {
    return -(static_cast<double>(u) / (sigma_ * sigma_)) * (*this)(u);
  }

 private:
  double sigma_;
  std::size_t half_width_;
  std::vector<double> taps_;
};

}  // namespace tfgm
