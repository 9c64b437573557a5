#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tfgm/methods.hpp"
#include "tfgm/signal.hpp"

namespace tfgm {

// Declarative description of one ground-truth component. `params` carries
// the generator's keyword arguments (see realize_component for the accepted
// keys per kind); `support` optionally windows the generated samples to
// [first, last) to make a component transient; `normalize` rescales to unit
// energy after windowing, which is how equal-energy scenarios are stated.
struct ComponentSpec {
  std::string kind;  // linear-chirp | hermite | sinusoidal-chirp |
                     // exponential-chirp | impulse | tone
  std::map<std::string, double> params;
  std::optional<std::pair<std::size_t, std::size_t>> support;
  bool normalize = false;
  std::string name;  // row label in benchmark output
};

Signal realize_component(const ComponentSpec& spec, std::size_t n, double dt);

struct Scenario {
  std::string name;
  std::size_t n = 1024;
  double dt = 1.0;
  std::vector<ComponentSpec> components;
  std::vector<double> snr_grid;  // dB; +inf allowed
  std::size_t realizations = 30;
  std::uint64_t seed = 0;
};

struct BenchRow {
  std::string scenario;
  std::string method;
  double snr_db = 0.0;
  std::size_t realization = 0;
  std::string component;
  double rel_error = 0.0;
  std::size_t component_count = 0;  // estimates the method produced
  double runtime_ms = 0.0;          // kept out of the deterministic CSV
};

struct BenchResult {
  std::vector<BenchRow> rows;
};

// Monte Carlo sweep: for every (snr, realization) the noisy mixture is
// synthesized once, from a seed derived deterministically from root_seed,
// the scenario seed, and the grid position, then every method runs on that
// same realization (paired comparison). Rows are emitted for every truth
// component of every cell; a method that fails to produce a matching
// estimate scores that component at rel_error 1.0 rather than dropping
// the row.
BenchResult run_benchmark(const Scenario& s,
                          const std::vector<MethodConfig>& methods,
                          std::uint64_t root_seed);

struct SummaryRow {
  std::string scenario;
  std::string method;
  double snr_db = 0.0;
  std::string component;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  std::size_t count = 0;
};

// Median and quartiles per (scenario, method, snr, component), ordered the
// way the rows first appear.
std::vector<SummaryRow> summarize(const BenchResult& r);

// Fixed-header CSV serializations. Runtime is excluded from the result CSV
// so identical seeds give byte-identical files; timings_to_csv exposes it
// separately for anyone who wants the numbers.
std::string bench_to_csv(const BenchResult& r);
std::string timings_to_csv(const BenchResult& r);
std::string summary_to_csv(const std::vector<SummaryRow>& rows);

// Scenario catalog serialization (the shipped defaults are embedded in the
// binary; --config can override with the same schema).
std::vector<Scenario> scenarios_from_json(const std::string& json_text);
std::string scenarios_to_json(const std::vector<Scenario>& scenarios);
std::vector<Scenario> builtin_scenarios();

}  // namespace tfgm
