#include "tfgm/bench.hpp"

#include <json.hpp>
#include <tfgm/embedded_configs.hpp>

#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "tfgm/util.hpp"

namespace tfgm {

using nlohmann::json;

namespace {

double param(const ComponentSpec& spec, const std::string& key,
             std::optional<double> fallback = std::nullopt) {
  auto it = spec.params.find(key);
  if (it != spec.params.end()) return it->second;
  if (fallback) return *fallback;
  throw invalid_input("component '" + spec.kind + "': missing parameter '" +
                      key + "'");
}

}  // namespace

Signal realize_component(const ComponentSpec& spec, std::size_t n, double dt) {
  Signal s;
  if (spec.kind == "linear-chirp") {
    s = gen_linear_chirp(n, param(spec, "f0"), param(spec, "f1"), dt,
                         param(spec, "amp", 1.0), param(spec, "t_start", 0.0),
                         param(spec, "t_end", -1.0));
  } else if (spec.kind == "tone") {
    const double f = param(spec, "f");
    s = gen_linear_chirp(n, f, f, dt, param(spec, "amp", 1.0));
  } else if (spec.kind == "hermite") {
    s = gen_hermite(static_cast<int>(param(spec, "order")),
                    param(spec, "center"), param(spec, "scale"), n, dt);
  } else if (spec.kind == "sinusoidal-chirp") {
    s = gen_sinusoidal_chirp(n, param(spec, "f_mean"), param(spec, "f_dev"),
                             param(spec, "f_mod"), dt,
                             param(spec, "amp", 1.0));
  } else if (spec.kind == "exponential-chirp") {
    s = gen_exponential_chirp(n, param(spec, "f0"), param(spec, "f1"), dt,
                              param(spec, "amp", 1.0));
  } else if (spec.kind == "impulse") {
    s = gen_impulse(n, static_cast<std::size_t>(param(spec, "position")),
                    param(spec, "amp", 1.0), dt);
  } else {
    throw invalid_input("unknown component kind: " + spec.kind);
  }
  if (spec.support) {
    const auto [first, last] = *spec.support;
    if (first >= last || last > s.size()) {
      throw invalid_input("component support window out of range");
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i < first || i >= last) s.samples[i] = 0.0;
    }
  }
  if (spec.normalize) s = normalize_energy(s);
  s.name = spec.name;
  return s;
}

namespace {

std::string component_label(const ComponentSpec& spec, std::size_t index) {
  if (!spec.name.empty()) return spec.name;
  return "component-" + std::to_string(index);
}

// One fixed seed per (scenario, snr index, realization), independent of the
// method list, so every method sees the same noisy realization.
std::uint64_t realization_seed(const Scenario& s, std::uint64_t root_seed,
                               std::size_t snr_index,
                               std::size_t realization) {
  std::uint64_t state = root_seed;
  state ^= splitmix64(state) + s.seed;
  state ^= splitmix64(state) + fnv1a(s.name);
  state ^= splitmix64(state) + snr_index;
  state ^= splitmix64(state) + realization;
  return splitmix64(state);
}

}  // namespace

BenchResult run_benchmark(const Scenario& s,
                          const std::vector<MethodConfig>& methods,
                          std::uint64_t root_seed) {
  if (s.components.empty()) {
    throw invalid_input("scenario '" + s.name + "' has no components");
  }
  if (s.components.size() > 6) {
    throw invalid_input("scenario '" + s.name +
                        "': component matching supports at most 6");
  }
  if (s.realizations < 1) {
    throw invalid_input("scenario '" + s.name + "': realizations must be >= 1");
  }
  if (s.snr_grid.empty()) {
    throw invalid_input("scenario '" + s.name + "': empty SNR grid");
  }
  if (methods.empty()) throw invalid_input("run_benchmark: no methods given");

  std::vector<Signal> truths;
  truths.reserve(s.components.size());
  for (const ComponentSpec& spec : s.components) {
    truths.push_back(realize_component(spec, s.n, s.dt));
  }
  const Signal clean = mix(truths);

  BenchResult result;
  for (std::size_t si = 0; si < s.snr_grid.size(); ++si) {
    for (std::size_t ri = 0; ri < s.realizations; ++ri) {
      const Signal noisy = add_noise(
          clean, s.snr_grid[si], realization_seed(s, root_seed, si, ri));
      for (const MethodConfig& cfg : methods) {
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<Signal> estimates;
        bool failed = false;
        try {
          MethodResult run = run_method(noisy, cfg);
          for (ComponentEstimate& est : run.components) {
            estimates.push_back(std::move(est.signal));
          }
        } catch (const std::exception&) {
          // A method failing on one realization scores its components as
          // missing; the sweep itself continues.
          failed = true;
        }
        const auto t1 = std::chrono::steady_clock::now();
        const double ms =
            std::chrono::duration<double, std::milli>(t1 - t0).count();

        MatchResult match;
        if (!failed) {
          match = match_components(truths, estimates);
        } else {
          match.errors.assign(truths.size(), 1.0);
        }
        for (std::size_t k = 0; k < truths.size(); ++k) {
          BenchRow row;
          row.scenario = s.name;
          row.method = cfg.name;
          row.snr_db = s.snr_grid[si];
          row.realization = ri;
          row.component = component_label(s.components[k], k);
          row.rel_error = match.errors[k];
          row.component_count = estimates.size();
          row.runtime_ms = ms;
          result.rows.push_back(std::move(row));
        }
      }
    }
  }
  return result;
}

std::vector<SummaryRow> summarize(const BenchResult& r) {
  if (r.rows.empty()) throw invalid_input("summarize: no rows");
  // Group keys in first-appearance order.
  std::vector<SummaryRow> out;
  std::map<std::string, std::size_t> index;
  std::vector<std::vector<double>> samples;
  for (const BenchRow& row : r.rows) {
    std::ostringstream key;
    key << row.scenario << '\x1f' << row.method << '\x1f'
        << fmt_double(row.snr_db) << '\x1f' << row.component;
    auto [it, inserted] = index.try_emplace(key.str(), out.size());
    if (inserted) {
      SummaryRow s;
      s.scenario = row.scenario;
      s.method = row.method;
      s.snr_db = row.snr_db;
      s.component = row.component;
      out.push_back(std::move(s));
      samples.emplace_back();
    }
    samples[it->second].push_back(row.rel_error);
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].count = samples[i].size();
    out[i].median = quantile(samples[i], 0.5);
    out[i].q1 = quantile(samples[i], 0.25);
    out[i].q3 = quantile(samples[i], 0.75);
  }
  return out;
}

std::string bench_to_csv(const BenchResult& r) {
  std::ostringstream os;
  os << "scenario,method,snr_db,realization,component,rel_error,"
        "component_count\n";
  for (const BenchRow& row : r.rows) {
    os << row.scenario << ',' << row.method << ',' << fmt_double(row.snr_db)
       << ',' << row.realization << ',' << row.component << ','
       << fmt_double(row.rel_error) << ',' << row.component_count << '\n';
  }
  return os.str();
}

std::string timings_to_csv(const BenchResult& r) {
  std::ostringstream os;
  os << "scenario,method,snr_db,realization,component,runtime_ms\n";
  for (const BenchRow& row : r.rows) {
    os << row.scenario << ',' << row.method << ',' << fmt_double(row.snr_db)
       << ',' << row.realization << ',' << row.component << ','
       << fmt_double(row.runtime_ms) << '\n';
  }
  return os.str();
}

std::string summary_to_csv(const std::vector<SummaryRow>& rows) {
  std::ostringstream os;
  os << "scenario,method,snr_db,component,count,median,q1,q3\n";
  for (const SummaryRow& row : rows) {
    os << row.scenario << ',' << row.method << ',' << fmt_double(row.snr_db)
       << ',' << row.component << ',' << row.count << ','
       << fmt_double(row.median) << ',' << fmt_double(row.q1) << ','
       << fmt_double(row.q3) << '\n';
  }
  return os.str();
}

namespace {

json component_to_json(const ComponentSpec& spec) {
  json j;
  j["kind"] = spec.kind;
  if (!spec.name.empty()) j["name"] = spec.name;
  if (spec.normalize) j["normalize"] = true;
  if (spec.support) {
    j["support"] = {spec.support->first, spec.support->second};
  }
  for (const auto& [key, value] : spec.params) j[key] = value;
  return j;
}

ComponentSpec component_from_json(const json& j) {
  ComponentSpec spec;
  spec.kind = j.at("kind").get<std::string>();
  for (const auto& [key, value] : j.items()) {
    if (key == "kind") continue;
    if (key == "name") {
      spec.name = value.get<std::string>();
    } else if (key == "normalize") {
      spec.normalize = value.get<bool>();
    } else if (key == "support") {
      if (!value.is_array() || value.size() != 2) {
        throw invalid_input("component support must be [first, last]");
      }
      spec.support = {value[0].get<std::size_t>(),
                      value[1].get<std::size_t>()};
    } else {
      spec.params[key] = value.get<double>();
    }
  }
  return spec;
}

double snr_value_from_json(const json& v) {
  if (v.is_string()) {
    if (v.get<std::string>() == "inf") {
      return std::numeric_limits<double>::infinity();
    }
    throw invalid_input("snr_db entries must be numbers or \"inf\"");
  }
  return v.get<double>();
}

}  // namespace

std::vector<Scenario> scenarios_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw invalid_input(std::string("scenario config: invalid JSON: ") +
                        e.what());
  }
  std::vector<Scenario> out;
  try {
    for (const json& sj : j.at("scenarios")) {
      Scenario s;
      s.name = sj.at("name").get<std::string>();
      if (sj.contains("n")) s.n = sj.at("n").get<std::size_t>();
      if (sj.contains("dt")) s.dt = sj.at("dt").get<double>();
      for (const json& cj : sj.at("components")) {
        s.components.push_back(component_from_json(cj));
      }
      if (sj.contains("snr_db")) {
        for (const json& v : sj.at("snr_db")) {
          s.snr_grid.push_back(snr_value_from_json(v));
        }
      }
      if (sj.contains("realizations")) {
        s.realizations = sj.at("realizations").get<std::size_t>();
      }
      if (sj.contains("seed")) s.seed = sj.at("seed").get<std::uint64_t>();
      out.push_back(std::move(s));
    }
  } catch (const json::exception& e) {
    throw invalid_input(std::string("scenario config: ") + e.what());
  }
  return out;
}

std::string scenarios_to_json(const std::vector<Scenario>& scenarios) {
  json j;
  j["scenarios"] = json::array();
  for (const Scenario& s : scenarios) {
    json sj;
    sj["name"] = s.name;
    sj["n"] = s.n;
    sj["dt"] = s.dt;
    sj["components"] = json::array();
    for (const ComponentSpec& c : s.components) {
      sj["components"].push_back(component_to_json(c));
    }
    sj["snr_db"] = json::array();
    for (double v : s.snr_grid) {
      if (std::isinf(v)) {
        sj["snr_db"].push_back("inf");
      } else {
        sj["snr_db"].push_back(v);
      }
    }
    sj["realizations"] = s.realizations;
    sj["seed"] = s.seed;
    j["scenarios"].push_back(std::move(sj));
  }
  return j.dump(2) + "\n";
}

std::vector<Scenario> builtin_scenarios() {
  return scenarios_from_json(embedded::kScenariosJson);
}

}  // namespace tfgm
