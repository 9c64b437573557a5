// Acceptance checks: each case prints one machine-readable line,
// "ACCEPTANCE criterion N: PASS|FAIL", in addition to its assertions.
// They exercise the full pipelines end to end with fixed seeds.

#include <doctest.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include "oracles.hpp"
#include "tfgm/bench.hpp"
#include "tfgm/graph.hpp"
#include "tfgm/io.hpp"
#include "tfgm/methods.hpp"
#include "tfgm/noise.hpp"
#include "tfgm/reconstruct.hpp"
#include "tfgm/signal.hpp"
#include "tfgm/tfr.hpp"
#include "tfgm/util.hpp"
#include "tfgm/window.hpp"

namespace fs = std::filesystem;

namespace {

// Collects sub-checks and prints the one-line verdict when it goes out of
// scope, so the line appears even if an assertion aborts the case early.
struct Criterion {
  int number;
  bool ok = true;

  explicit Criterion(int n) : number(n) {}
  ~Criterion() {
    std::printf("ACCEPTANCE criterion %d: %s\n", number, ok ? "PASS" : "FAIL");
    std::fflush(stdout);
  }
  void expect(bool cond, const std::string& what) {
    ok = ok && cond;
    CHECK_MESSAGE(cond, what);
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

tfgm::Signal white_noise(std::size_t n, std::uint64_t seed) {
  tfgm::Signal x;
  x.samples.resize(n);
  tfgm::GaussianRng rng(seed);
  for (double& s : x.samples) s = rng();
  return x;
}

// Canonical view of a component set: sorted pixel linear indices mapped to
// (edge_count, energy), independent of ranking order.
std::map<std::vector<std::int64_t>, std::pair<std::uint64_t, double>>
canonical(const tfgm::ComponentSet& set) {
  std::map<std::vector<std::int64_t>, std::pair<std::uint64_t, double>> out;
  for (const tfgm::Component& c : set.components) {
    std::vector<std::int64_t> key;
    for (const tfgm::Pixel& p : c.pixels) {
      key.push_back(std::int64_t(p.bin) * set.cols + p.time);
    }
    std::sort(key.begin(), key.end());
    out[std::move(key)] = {c.edge_count, c.energy};
  }
  return out;
}

bool same_components(const tfgm::ComponentSet& a,
                     const tfgm::ComponentSet& b) {
  const auto ca = canonical(a);
  const auto cb = canonical(b);
  if (ca.size() != cb.size()) return false;
  for (const auto& [pixels, stats] : ca) {
    const auto it = cb.find(pixels);
    if (it == cb.end()) return false;
    if (it->second.first != stats.first) return false;
    const double scale = std::max(1.0, std::abs(stats.second));
    if (std::abs(it->second.second - stats.second) > 1e-12 * scale)
      return false;
  }
  return true;
}

std::string mask_fingerprint(const tfgm::MaskMatrix& m) {
  std::string s;
  s.reserve(std::size_t(m.size()));
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      s.push_back(m(i, j) ? '1' : '0');
    }
  }
  return s;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return {};
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_SUITE("acceptance") {

TEST_CASE("criterion 1: all-ones mask inversion round trip") {
  Criterion crit(1);
  try {
    const auto t0 = std::chrono::steady_clock::now();
    const double sigmas[3] = {5.0, 15.0, 40.0};
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const tfgm::Signal x = white_noise(1024, 9000 + std::uint64_t(i));
      const tfgm::GaussianWindow g(sigmas[i % 3], 6.0);
      const tfgm::ComplexMatrix F = tfgm::stft(x, g, 512);
      const tfgm::MaskMatrix all =
          tfgm::MaskMatrix::Constant(512, Eigen::Index(x.size()), true);
      const tfgm::Signal back = tfgm::invert_masked(F, all, g, x.dt);
      worst = std::max(worst, tfgm::rel_error(x, back));
    }
    const double secs = seconds_since(t0);
    crit.expect(worst < 1e-9,
                "worst round-trip relative error " + tfgm::fmt_double(worst));
    crit.expect(secs < 10.0, "runtime " + tfgm::fmt_double(secs) + " s");
  } catch (const std::exception& e) {
    crit.expect(false, std::string("exception: ") + e.what());
  }
}

TEST_CASE("criterion 2: noise level estimate and 3-gamma retention") {
  Criterion crit(2);
  try {
    std::vector<double> gammas, stds, retentions;
    for (int seed = 0; seed < 30; ++seed) {
      const tfgm::Signal x = white_noise(1024, 100 + std::uint64_t(seed));
      const tfgm::GaussianWindow g(15.0, 6.0);
      const tfgm::ComplexMatrix F = tfgm::stft(x, g, 512);
      const double gamma = tfgm::estimate_gamma(F);
      gammas.push_back(gamma);
      // Empirical scale of the complex coefficients (mean is zero for pure
      // noise): sqrt of the average squared modulus.
      stds.push_back(std::sqrt(F.squaredNorm() / double(F.size())));
      const std::int64_t kept =
          (F.cwiseAbs().array() > 3.0 * gamma).count();
      retentions.push_back(double(kept) / double(F.size()));
    }
    const double med_gamma = tfgm::median(gammas);
    const double med_std = tfgm::median(stds);
    const double med_ret = tfgm::median(retentions);
    crit.expect(std::abs(med_gamma / med_std - 1.0) <= 0.05,
                "median gamma " + tfgm::fmt_double(med_gamma) +
                    " vs empirical scale " + tfgm::fmt_double(med_std));
    crit.expect(med_ret <= 0.015, "median retention at 3*gamma " +
                                      tfgm::fmt_double(med_ret));
  } catch (const std::exception& e) {
    crit.expect(false, std::string("exception: ") + e.what());
  }
}

TEST_CASE("criterion 3: graph equals brute-force oracle across settings") {
  Criterion crit(3);
  try {
    const auto t0 = std::chrono::steady_clock::now();
    std::uint64_t state = 777;
    int mismatches = 0;
    for (int trial = 0; trial < 100; ++trial) {
      tfgm::RealMatrix A(20, 20);
      tfgm::GaussianRng rng(tfgm::splitmix64(state));
      std::uint64_t coin_state = tfgm::splitmix64(state);
      for (Eigen::Index i = 0; i < A.rows(); ++i) {
        for (Eigen::Index j = 0; j < A.cols(); ++j) {
          const bool zero = (tfgm::splitmix64(coin_state) & 3u) == 0;
          A(i, j) = zero ? 0.0 : std::abs(rng());
        }
      }
      for (const tfgm::EdgeCriterion criterion :
           {tfgm::EdgeCriterion::kProduct, tfgm::EdgeCriterion::kMin}) {
        for (const int r : {1, 2, 3}) {
          for (const int p : {1, 2, tfgm::kPInf}) {
            tfgm::GraphConfig cfg;
            cfg.r = r;
            cfg.p = p;
            cfg.threshold.criterion = criterion;
            cfg.threshold.tau =
                criterion == tfgm::EdgeCriterion::kProduct ? 0.49 : 0.7;
            const tfgm::ComponentSet got = tfgm::build_components(A, cfg);
            const tfgm::ComponentSet want =
                oracles::brute_force_components(A, cfg);
            if (!same_components(got, want)) ++mismatches;
          }
        }
      }
    }
    const double secs = seconds_since(t0);
    crit.expect(mismatches == 0,
                std::to_string(mismatches) + " mismatching settings of 1800");
    crit.expect(secs < 30.0, "runtime " + tfgm::fmt_double(secs) + " s");
  } catch (const std::exception& e) {
    crit.expect(false, std::string("exception: ") + e.what());
  }
}

TEST_CASE("criterion 4: min-threshold pipeline equals binarize-then-label") {
  Criterion crit(4);
  try {
    const auto presets = tfgm::method_presets();
    int mismatches = 0;
    for (int i = 0; i < 20; ++i) {
      const double tone_f = 0.05 + 0.015 * double(i % 10);
      const double snr[3] = {5.0, 10.0, 20.0};
      const tfgm::Signal a = tfgm::gen_linear_chirp(512, tone_f, tone_f);
      const tfgm::Signal b = tfgm::gen_linear_chirp(512, 0.3, 0.42);
      const tfgm::Signal x =
          tfgm::add_noise(tfgm::mix({a, b}), snr[i % 3],
                          2000 + std::uint64_t(i));

      tfgm::MethodConfig cfg = presets.at("B");
      cfg.window_sigma = 8.0;
      cfg.n_bins = 128;
      cfg.selection = tfgm::SelectionPolicy{};
      const tfgm::MethodResult res = tfgm::run_method(x, cfg);

      const tfgm::GaussianWindow g(cfg.window_sigma, cfg.truncation);
      const tfgm::ComplexMatrix F = tfgm::stft(x, g, cfg.n_bins);
      const double gamma = tfgm::estimate_gamma(F);
      const tfgm::RealMatrix half =
          F.topRows(tfgm::half_bins(Eigen::Index(cfg.n_bins))).cwiseAbs();
      const tfgm::RealMatrix binarized =
          (half.array() >= 3.0 * gamma).select(half, 0.0);
      tfgm::GraphConfig gcfg = cfg.graph;
      gcfg.threshold.criterion = tfgm::EdgeCriterion::kMin;
      gcfg.threshold.tau = 0.0;
      const tfgm::ComponentSet labeled =
          tfgm::build_components(binarized, gcfg);

      std::vector<std::string> lhs, rhs;
      for (const tfgm::ComponentEstimate& est : res.components) {
        lhs.push_back(mask_fingerprint(est.mask));
      }
      for (const tfgm::Component& c : labeled.components) {
        rhs.push_back(mask_fingerprint(tfgm::component_to_mask(
            c, Eigen::Index(cfg.n_bins), Eigen::Index(x.size()))));
      }
      std::sort(lhs.begin(), lhs.end());
      std::sort(rhs.begin(), rhs.end());
      if (lhs != rhs) ++mismatches;
    }
    crit.expect(mismatches == 0,
                std::to_string(mismatches) + " of 20 signals disagree");
  } catch (const std::exception& e) {
    crit.expect(false, std::string("exception: ") + e.what());
  }
}

TEST_CASE("criterion 5: block toy and impulse-plus-chirps separation") {
  Criterion crit(5);
  try {
    // Two separated unit blocks label as exactly two components.
    tfgm::RealMatrix toy = tfgm::RealMatrix::Zero(20, 20);
    toy.block(2, 2, 3, 3).setOnes();
    toy.block(10, 12, 3, 3).setOnes();
    tfgm::GraphConfig toy_cfg;
    toy_cfg.r = 1;
    toy_cfg.p = 1;
    toy_cfg.threshold.criterion = tfgm::EdgeCriterion::kMin;
    toy_cfg.threshold.tau = 0.5;
    const tfgm::ComponentSet blocks = tfgm::build_components(toy, toy_cfg);
    crit.expect(blocks.components.size() == 2,
                "block toy found " +
                    std::to_string(blocks.components.size()) +
                    " components, expected 2");

    // Impulse plus two windowed exponential chirps at 20 dB, strongest
    // preset, medians over 10 noise seeds.
    const auto scenarios = tfgm::builtin_scenarios();
    const auto it = std::find_if(
        scenarios.begin(), scenarios.end(),
        [](const tfgm::Scenario& s) { return s.name == "impulse-chirps"; });
    if (it == scenarios.end()) {
      crit.expect(false, "builtin impulse-chirps scenario missing");
      return;
    }
    const tfgm::Scenario& sc = *it;

    std::vector<tfgm::Signal> truths;
    for (const tfgm::ComponentSpec& spec : sc.components) {
      truths.push_back(tfgm::realize_component(spec, sc.n, sc.dt));
    }
    const tfgm::Signal clean = tfgm::mix(truths);
    const tfgm::MethodConfig method_a = tfgm::method_presets().at("A");
    const Eigen::Index half = tfgm::half_bins(Eigen::Index(method_a.n_bins));

    std::vector<double> counts, verticals;
    std::vector<std::vector<double>> errors(truths.size());
    for (int seed = 0; seed < 10; ++seed) {
      const tfgm::Signal x =
          tfgm::add_noise(clean, 20.0, 5000 + std::uint64_t(seed));
      const tfgm::MethodResult res = tfgm::run_method(x, method_a);
      counts.push_back(double(res.components.size()));

      std::vector<tfgm::Signal> estimates;
      for (const tfgm::ComponentEstimate& est : res.components) {
        estimates.push_back(est.signal);
      }
      const tfgm::MatchResult match =
          tfgm::match_components(truths, estimates);
      for (std::size_t t = 0; t < truths.size(); ++t) {
        errors[t].push_back(match.errors[t]);
      }

      // The impulse is the first truth component; its mask should span
      // more frequency rows than time columns (a vertical stripe).
      bool vertical = false;
      if (match.match[0] >= 0) {
        const tfgm::MaskMatrix& mask =
            res.components[std::size_t(match.match[0])].mask;
        Eigen::Index min_row = half, max_row = -1;
        Eigen::Index min_col = mask.cols(), max_col = -1;
        for (Eigen::Index i = 0; i < half; ++i) {
          for (Eigen::Index j = 0; j < mask.cols(); ++j) {
            if (!mask(i, j)) continue;
            min_row = std::min(min_row, i);
            max_row = std::max(max_row, i);
            min_col = std::min(min_col, j);
            max_col = std::max(max_col, j);
          }
        }
        vertical = max_row >= 0 &&
                   (max_row - min_row) > (max_col - min_col);
      }
      verticals.push_back(vertical ? 1.0 : 0.0);
    }

    crit.expect(tfgm::median(counts) >= 3.0,
                "median selected components " +
                    tfgm::fmt_double(tfgm::median(counts)));
    for (std::size_t t = 0; t < truths.size(); ++t) {
      const double med = tfgm::median(errors[t]);
      crit.expect(med <= 0.5, "median error of truth component " +
                                  std::to_string(t) + " is " +
                                  tfgm::fmt_double(med));
    }
    crit.expect(tfgm::median(verticals) >= 0.5,
                "impulse mask vertically dominated in " +
                    tfgm::fmt_double(100.0 * tfgm::median(verticals)) +
                    "% (median) of seeds");
  } catch (const std::exception& e) {
    crit.expect(false, std::string("exception: ") + e.what());
  }
}

TEST_CASE("criterion 6: strongest preset beats squeezed presets on the "
          "curved component") {
  Criterion crit(6);
  try {
    const auto t0 = std::chrono::steady_clock::now();
    const auto scenarios = tfgm::builtin_scenarios();
    const auto it = std::find_if(
        scenarios.begin(), scenarios.end(),
        [](const tfgm::Scenario& s) { return s.name == "hermite-chirp"; });
    if (it == scenarios.end()) {
      crit.expect(false, "builtin hermite-chirp scenario missing");
      return;
    }
    tfgm::Scenario sc = *it;
    sc.snr_grid = {20.0};
    sc.realizations = 30;

    const auto presets = tfgm::method_presets();
    const tfgm::BenchResult result = tfgm::run_benchmark(
        sc, {presets.at("A"), presets.at("C"), presets.at("D")}, 0);
    double med_a = -1.0, med_c = -1.0, med_d = -1.0;
    for (const tfgm::SummaryRow& row : tfgm::summarize(result)) {
      if (row.component != "hermite") continue;
      if (row.method == "A") med_a = row.median;
      if (row.method == "C") med_c = row.median;
      if (row.method == "D") med_d = row.median;
    }
    const double secs = seconds_since(t0);
    crit.expect(med_a >= 0.0 && med_c >= 0.0 && med_d >= 0.0,
                "summary rows for the hermite component exist");
    crit.expect(med_a < med_c, "median error A " + tfgm::fmt_double(med_a) +
                                   " < C " + tfgm::fmt_double(med_c));
    crit.expect(med_a < med_d, "median error A " + tfgm::fmt_double(med_a) +
                                   " < D " + tfgm::fmt_double(med_d));
    crit.expect(secs < 300.0, "runtime " + tfgm::fmt_double(secs) + " s");
  } catch (const std::exception& e) {
    crit.expect(false, std::string("exception: ") + e.what());
  }
}

TEST_CASE("criterion 7: squeezed tone concentration and column "
          "conservation") {
  Criterion crit(7);
  try {
    const std::size_t n = 512;
    const std::size_t M = 256;
    const tfgm::Signal x = tfgm::gen_linear_chirp(n, 0.25, 0.25);
    const tfgm::GaussianWindow g(15.0, 6.0);
    const tfgm::ComplexMatrix F = tfgm::stft(x, g, M);
    const tfgm::IndexMatrix omega =
        tfgm::reassignment_operator(x, g, M, 2);
    const tfgm::ComplexMatrix S = tfgm::synchrosqueeze(F, omega);

    // Mass moved by the squeeze stays inside each column: the column sum of
    // S equals the sum of the F cells whose estimates landed in range.
    double worst_conservation = 0.0;
    for (Eigen::Index col = 0; col < S.cols(); ++col) {
      std::complex<double> moved = 0.0;
      for (Eigen::Index row = 0; row < S.rows(); ++row) {
        const std::int32_t target = omega(row, col);
        if (target != tfgm::kInvalidBin && target >= 0 &&
            target < std::int32_t(M)) {
          moved += F(row, col);
        }
      }
      const double diff = std::abs(S.col(col).sum() - moved);
      worst_conservation = std::max(
          worst_conservation, diff / std::max(1.0, std::abs(moved)));
    }
    crit.expect(worst_conservation <= 1e-12,
                "worst column conservation error " +
                    tfgm::fmt_double(worst_conservation));

    // Interior columns concentrate the tone's energy into a 3-bin band
    // around its true bin (0.25 cycles/sample * 256 bins = bin 64).
    const Eigen::Index half = tfgm::half_bins(Eigen::Index(M));
    const Eigen::Index tone_bin = 64;
    const Eigen::Index margin = Eigen::Index(g.half_width());
    double worst_fraction = 1.0;
    for (Eigen::Index col = margin; col < Eigen::Index(n) - margin; ++col) {
      double total = 0.0, band = 0.0;
      for (Eigen::Index row = 0; row < half; ++row) {
        const double e = std::norm(S(row, col));
        total += e;
        if (std::abs(row - tone_bin) <= 1) band += e;
      }
      if (total > 0.0) {
        worst_fraction = std::min(worst_fraction, band / total);
      }
    }
    crit.expect(worst_fraction >= 0.95,
                "worst interior 3-bin energy fraction " +
                    tfgm::fmt_double(worst_fraction));
  } catch (const std::exception& e) {
    crit.expect(false, std::string("exception: ") + e.what());
  }
}

TEST_CASE("criterion 8: benchmark runs are byte-identical under a fixed "
          "seed") {
  Criterion crit(8);
  try {
    const char* bin = std::getenv("TFGM_BIN");
    crit.expect(bin != nullptr, "TFGM_BIN points at the CLI binary");
    if (bin == nullptr) return;

    const fs::path base =
        fs::temp_directory_path() /
        ("tfgm-accept8-" + std::to_string(::getpid()));
    fs::create_directories(base);
    const std::string common =
        std::string(bin) +
        " bench --scenario hermite-chirp --methods A --snr 10"
        " --realizations 2 --seed 42 --out ";
    const std::string quiet = " > /dev/null 2>&1";
    const int rc1 =
        std::system((common + (base / "one").string() + quiet).c_str());
    const int rc2 =
        std::system((common + (base / "two").string() + quiet).c_str());
    crit.expect(WIFEXITED(rc1) && WEXITSTATUS(rc1) == 0, "first run exits 0");
    crit.expect(WIFEXITED(rc2) && WEXITSTATUS(rc2) == 0, "second run exits 0");

    const std::string results1 = slurp((base / "one" / "results.csv").string());
    const std::string results2 = slurp((base / "two" / "results.csv").string());
    const std::string summary1 = slurp((base / "one" / "summary.csv").string());
    const std::string summary2 = slurp((base / "two" / "summary.csv").string());
    crit.expect(!results1.empty() && results1 == results2,
                "results CSVs are byte-identical");
    crit.expect(!summary1.empty() && summary1 == summary2,
                "summary CSVs are byte-identical");
    std::error_code ec;
    fs::remove_all(base, ec);
  } catch (const std::exception& e) {
    crit.expect(false, std::string("exception: ") + e.what());
  }
}

TEST_CASE("criterion 9: mask inversion order cannot change any component") {
  Criterion crit(9);
  try {
    // A noisy two-tone mixture: the noise level keeps gamma (and thus the
    // edge threshold) high enough that the ridges split into separate
    // components.
    const tfgm::Signal x = tfgm::add_noise(
        tfgm::mix({tfgm::gen_linear_chirp(512, 0.1, 0.1),
                   tfgm::gen_linear_chirp(512, 0.32, 0.32)}),
        20.0, 99);
    tfgm::MethodConfig cfg = tfgm::method_presets().at("A");
    cfg.window_sigma = 8.0;
    cfg.n_bins = 128;
    const tfgm::MethodResult res = tfgm::run_method(x, cfg);
    crit.expect(res.components.size() >= 2,
                "separation produced " +
                    std::to_string(res.components.size()) + " components");

    const tfgm::GaussianWindow g(cfg.window_sigma, cfg.truncation);
    const tfgm::ComplexMatrix F = tfgm::stft(x, g, cfg.n_bins);

    std::vector<tfgm::Signal> forward(res.components.size());
    std::vector<tfgm::Signal> reversed(res.components.size());
    for (std::size_t i = 0; i < res.components.size(); ++i) {
      forward[i] = tfgm::invert_masked(F, res.components[i].mask, g, x.dt);
    }
    for (std::size_t k = res.components.size(); k-- > 0;) {
      reversed[k] = tfgm::invert_masked(F, res.components[k].mask, g, x.dt);
    }

    bool identical = true;
    for (std::size_t i = 0; i < res.components.size(); ++i) {
      identical = identical &&
                  forward[i].samples == reversed[i].samples &&
                  forward[i].samples == res.components[i].signal.samples;
    }
    crit.expect(identical,
                "components are bit-identical under permuted inversion");
  } catch (const std::exception& e) {
    crit.expect(false, std::string("exception: ") + e.what());
  }
}

}  // TEST_SUITE
