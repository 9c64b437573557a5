#include "tfgm/window.hpp"

#include <cmath>

#include "tfgm/util.hpp"

namespace tfgm {

GaussianWindow::GaussianWindow(double sigma, double truncation)
    : sigma_(sigma) {
  if (!(sigma > 0.0)) {
    throw invalid_input("gaussian window: sigma must be positive");
  }
  if (!(truncation >= 4.0)) {
    throw invalid_input("gaussian window: truncation below 4 clips the tails");
  }
  half_width_ = static_cast<std::size_t>(std::floor(truncation * sigma));
  taps_.resize(2 * half_width_ + 1);
  const long long h = static_cast<long long>(half_width_);
  for (long long u = -h; u <= h; ++u) {
    const double z = static_cast<double>(u) / sigma;
    taps_[static_cast<std::size_t>(u + h)] = std::exp(-0.5 * z * z);
  }
}

}  // namespace tfgm
