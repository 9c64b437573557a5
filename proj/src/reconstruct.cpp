#include "tfgm/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tfgm/util.hpp"

namespace tfgm {

Signal invert_masked(const ComplexMatrix& R, const MaskMatrix& mask,
                     const GaussianWindow& g, double dt) {
  if (R.rows() != mask.rows() || R.cols() != mask.cols()) {
    throw invalid_input("invert_masked: mask shape does not match the TFR");
  }
  if (dt <= 0.0) throw invalid_input("invert_masked: dt must be positive");
  const double g0 = g(0);
  const double scale = 1.0 / (static_cast<double>(R.rows()) * g0);

  Signal out;
  out.dt = dt;
  out.samples.assign(static_cast<std::size_t>(R.cols()), 0.0);
  for (Eigen::Index n = 0; n < R.cols(); ++n) {
    double acc = 0.0;
    for (Eigen::Index m = 0; m < R.rows(); ++m) {
      if (mask(m, n)) acc += R(m, n).real();
    }
    out.samples[static_cast<std::size_t>(n)] = acc * scale;
  }
  return out;
}

double rel_error(const Signal& ref, const Signal& est) {
  if (ref.size() != est.size()) {
    throw invalid_input("rel_error: signal lengths differ");
  }
  const double ref_energy = energy(ref);
  if (ref_energy == 0.0) throw invalid_input("rel_error: zero reference");
  double err = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    const double d = ref.samples[i] - est.samples[i];
    err += d * d;
  }
  return std::sqrt(err / ref_energy);
}

namespace {

// Recursive exhaustive assignment: truth component k gets one unused
// estimate or none. Small K only; the pipeline never matches more than a
// handful of ground-truth components.
void search_assignment(const std::vector<std::vector<double>>& cost,
                       std::size_t k, std::vector<bool>& used,
                       std::vector<int>& current, double current_cost,
                       std::vector<int>& best, double& best_cost) {
  if (k == cost.size()) {
    if (current_cost < best_cost) {
      best_cost = current_cost;
      best = current;
    }
    return;
  }
  if (current_cost >= best_cost) return;
  for (std::size_t e = 0; e < cost[k].size(); ++e) {
    if (used[e]) continue;
    used[e] = true;
    current[k] = static_cast<int>(e);
    search_assignment(cost, k + 1, used, current, current_cost + cost[k][e],
                      best, best_cost);
    used[e] = false;
  }
  current[k] = -1;
  search_assignment(cost, k + 1, used, current, current_cost + 1.0, best,
                    best_cost);
}

}  // namespace

MatchResult match_components(const std::vector<Signal>& truth,
                             const std::vector<Signal>& estimates) {
  if (truth.empty()) throw invalid_input("match_components: no truth signals");
  if (truth.size() > 6) {
    throw invalid_input("match_components: exhaustive matching is limited "
                        "to 6 truth components");
  }

  std::vector<std::vector<double>> cost(truth.size());
  for (std::size_t k = 0; k < truth.size(); ++k) {
    cost[k].resize(estimates.size());
    for (std::size_t e = 0; e < estimates.size(); ++e) {
      cost[k][e] = rel_error(truth[k], estimates[e]);
    }
  }

  std::vector<bool> used(estimates.size(), false);
  std::vector<int> current(truth.size(), -1);
  std::vector<int> best(truth.size(), -1);
  double best_cost = std::numeric_limits<double>::infinity();
  search_assignment(cost, 0, used, current, 0.0, best, best_cost);

  MatchResult result;
  result.match = best;
  result.errors.resize(truth.size());
  for (std::size_t k = 0; k < truth.size(); ++k) {
    result.errors[k] =
        best[k] < 0 ? 1.0 : cost[k][static_cast<std::size_t>(best[k])];
  }
  return result;
}

}  // namespace tfgm
