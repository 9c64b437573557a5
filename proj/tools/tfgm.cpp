// Command-line front end: synthesize test signals, extract components from
// a recording, and run the Monte Carlo benchmark. All file formats are
// plain text or standard containers (CSV, WAV, PGM, PBM, JSON).
//
// Exit codes: 0 success, 2 bad input, 3 bad configuration, 4 internal error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tfgm/bench.hpp"
#include "tfgm/io.hpp"
#include "tfgm/methods.hpp"
#include "tfgm/reconstruct.hpp"
#include "tfgm/signal.hpp"
#include "tfgm/util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Failures in user-supplied configuration (files or method selection).
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Failures writing artifacts or other unexpected conditions.
struct internal_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_strict_double(const std::string& token, const std::string& what) {
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size() || token.empty() || errno == ERANGE) {
    throw tfgm::invalid_input(what + ": cannot parse number '" + token + "'");
  }
  return v;
}

// "f=0.1,amp=2" -> {f: 0.1, amp: 2}
std::map<std::string, double> parse_params(const std::string& text,
                                           const std::string& flag) {
  std::map<std::string, double> params;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(start, comma - start);
    start = comma + 1;
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw tfgm::invalid_input(flag + ": expected key=value, got '" + item +
                                "'");
    }
    params[item.substr(0, eq)] =
        parse_strict_double(item.substr(eq + 1), flag);
  }
  return params;
}

double parse_snr(const std::string& text) {
  if (text == "inf") return std::numeric_limits<double>::infinity();
  return parse_strict_double(text, "--snr");
}

std::string slurp_config(const std::string& path) {
  try {
    return tfgm::read_file(path);
  } catch (const tfgm::io_error& e) {
    throw config_error(e.what());
  }
}

std::vector<tfgm::Scenario> load_scenarios(const std::string& path) {
  try {
    if (path.empty()) return tfgm::builtin_scenarios();
    return tfgm::scenarios_from_json(slurp_config(path));
  } catch (const tfgm::invalid_input& e) {
    throw config_error(e.what());
  }
}

const tfgm::Scenario& find_scenario(const std::vector<tfgm::Scenario>& all,
                                    const std::string& name) {
  for (const tfgm::Scenario& s : all) {
    if (s.name == name) return s;
  }
  std::string known;
  for (const tfgm::Scenario& s : all) {
    if (!known.empty()) known += ", ";
    known += s.name;
  }
  throw tfgm::invalid_input("unknown scenario '" + name + "' (available: " +
                            known + ")");
}

tfgm::MethodConfig resolve_method_config(const std::string& method,
                                         const std::string& config_path) {
  if (!config_path.empty()) {
    try {
      return tfgm::method_config_from_json(slurp_config(config_path));
    } catch (const tfgm::invalid_input& e) {
      throw config_error(e.what());
    }
  }
  if (method == "custom") {
    throw config_error("--method custom requires --config with a full "
                       "method configuration");
  }
  const auto presets = tfgm::method_presets();
  const auto it = presets.find(method);
  if (it == presets.end()) {
    throw config_error("unknown method '" + method +
                       "' (expected A, B, C, D, E, or custom)");
  }
  return it->second;
}

// Custom configs must pair the threshold with the representation it reads;
// presets are consistent by construction.
void check_method_config(const tfgm::MethodConfig& cfg) {
  const std::string expected = to_string(cfg.representation) + "-modulus";
  const bool preset = cfg.name.size() == 1 && cfg.name[0] >= 'A' &&
                      cfg.name[0] <= 'E';
  if (!preset && cfg.graph.threshold.target != expected) {
    throw config_error("config: threshold target '" +
                       cfg.graph.threshold.target +
                       "' does not match representation '" +
                       to_string(cfg.representation) + "'");
  }
}

tfgm::Signal load_input(const std::string& path) {
  const std::string ext = fs::path(path).extension().string();
  if (ext == ".wav") return tfgm::read_signal_wav(path);
  return tfgm::read_signal_csv(path);
}

json component_spec_json(const tfgm::ComponentSpec& spec) {
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

json snr_json(double snr) {
  if (std::isinf(snr)) return json("inf");
  return json(snr);
}

// Writes `contents` under dir/name and records the artifact for the
// manifest. Any write failure is an internal error: inputs were fine.
struct ArtifactWriter {
  fs::path dir;
  std::vector<std::string> names;

  std::string path_of(const std::string& name) const {
    return (dir / name).string();
  }
  template <typename Fn>
  void emit(const std::string& name, Fn&& write) {
    try {
      write(path_of(name));
    } catch (const tfgm::io_error& e) {
      throw internal_error(e.what());
    }
    names.push_back(name);
  }
  // The manifest lists every artifact with its checksum and is written
  // after all of them, so its presence marks a complete run.
  void finish_manifest(json manifest) {
    json artifacts = json::array();
    for (const std::string& name : names) {
      json entry;
      entry["path"] = name;
      entry["crc32"] = tfgm::file_crc32(path_of(name));
      artifacts.push_back(std::move(entry));
    }
    manifest["artifacts"] = std::move(artifacts);
    try {
      tfgm::atomic_write(path_of("manifest.json"), manifest.dump(2) + "\n");
    } catch (const tfgm::io_error& e) {
      throw internal_error(e.what());
    }
  }
};

// ---------------------------------------------------------------- synth --

struct SynthOptions {
  std::vector<std::pair<std::string, std::string>> generators;  // kind, params
  std::string scenario;
  std::string catalog_path;
  int component = -1;
  std::string snr = "inf";
  std::uint64_t seed = 0;
  std::size_t n = 1024;
  double dt = 1.0;
  std::string out = "signal";
  int bits = 32;
  bool dump_config = false;
};

int run_synth(const SynthOptions& opt) {
  if (opt.dump_config) {
    std::cout << tfgm::scenarios_to_json(load_scenarios(opt.catalog_path));
    return 0;
  }

  std::vector<tfgm::ComponentSpec> specs;
  std::size_t n = opt.n;
  double dt = opt.dt;
  if (!opt.scenario.empty()) {
    const auto catalog = load_scenarios(opt.catalog_path);
    const tfgm::Scenario& s = find_scenario(catalog, opt.scenario);
    specs = s.components;
    n = s.n;
    dt = s.dt;
  } else {
    for (const auto& [kind, params] : opt.generators) {
      tfgm::ComponentSpec spec;
      spec.kind = kind;
      spec.params = parse_params(params, "--" + kind);
      spec.name = kind;
      specs.push_back(std::move(spec));
    }
  }
  if (specs.empty()) {
    throw tfgm::invalid_input(
        "nothing to synthesize: give a generator flag or --scenario");
  }
  if (opt.component >= 0) {
    if (static_cast<std::size_t>(opt.component) >= specs.size()) {
      throw tfgm::invalid_input("--component index out of range (have " +
                                std::to_string(specs.size()) + ")");
    }
    specs = {specs[static_cast<std::size_t>(opt.component)]};
  }

  std::vector<tfgm::Signal> parts;
  for (const tfgm::ComponentSpec& spec : specs) {
    parts.push_back(tfgm::realize_component(spec, n, dt));
  }
  tfgm::Signal x = tfgm::mix(parts);
  const double snr = parse_snr(opt.snr);
  if (!std::isinf(snr)) x = tfgm::add_noise(x, snr, opt.seed);
  x.name = opt.scenario.empty() ? specs.front().name : opt.scenario;

  const std::string csv_path = opt.out + ".csv";
  const std::string wav_path = opt.out + ".wav";
  const std::string meta_path = opt.out + ".json";
  try {
    tfgm::write_signal_csv(csv_path, x);
    tfgm::write_signal_wav(wav_path, x, opt.bits);
    json meta;
    meta["name"] = x.name;
    meta["n"] = x.size();
    meta["dt"] = x.dt;
    meta["snr_db"] = snr_json(snr);
    if (!std::isinf(snr)) meta["seed"] = opt.seed;
    if (!opt.scenario.empty()) meta["scenario"] = opt.scenario;
    meta["components"] = json::array();
    for (const tfgm::ComponentSpec& spec : specs) {
      meta["components"].push_back(component_spec_json(spec));
    }
    json files;
    files[csv_path] = tfgm::file_crc32(csv_path);
    files[wav_path] = tfgm::file_crc32(wav_path);
    meta["files"] = std::move(files);
    tfgm::atomic_write(meta_path, meta.dump(2) + "\n");
  } catch (const tfgm::io_error& e) {
    throw internal_error(e.what());
  }
  std::cerr << "synth: wrote " << csv_path << ", " << wav_path << ", "
            << meta_path << " (" << x.size() << " samples)\n";
  return 0;
}

// -------------------------------------------------------------- extract --

struct ExtractOptions {
  std::string input;
  std::string method = "A";
  std::string config_path;
  std::string out = "tfgm-out";
  int bits = 32;
  bool dump_config = false;
};

int run_extract(const ExtractOptions& opt) {
  const tfgm::MethodConfig cfg =
      resolve_method_config(opt.method, opt.config_path);
  check_method_config(cfg);
  if (opt.dump_config) {
    std::cout << tfgm::method_config_to_json(cfg);
    return 0;
  }
  if (opt.input.empty()) {
    throw tfgm::invalid_input("extract: missing input file");
  }

  const tfgm::Signal x = load_input(opt.input);
  const tfgm::MethodResult res = tfgm::run_method(x, cfg);

  ArtifactWriter out{fs::path(opt.out), {}};
  char name[64];
  for (std::size_t i = 0; i < res.components.size(); ++i) {
    const tfgm::ComponentEstimate& est = res.components[i];
    std::snprintf(name, sizeof(name), "component-%02zu.csv", i);
    out.emit(name, [&](const std::string& p) {
      tfgm::write_signal_csv(p, est.signal);
    });
    std::snprintf(name, sizeof(name), "component-%02zu.wav", i);
    out.emit(name, [&](const std::string& p) {
      tfgm::write_signal_wav(p, est.signal, opt.bits);
    });
    std::snprintf(name, sizeof(name), "component-%02zu-mask.pbm", i);
    out.emit(name, [&](const std::string& p) {
      tfgm::write_mask_pbm(p, est.mask);
    });
    std::snprintf(name, sizeof(name), "component-%02zu-mask.csv", i);
    out.emit(name, [&](const std::string& p) {
      tfgm::write_mask_coords_csv(p, est.mask);
    });
  }
  out.emit("representation.pgm", [&](const std::string& p) {
    tfgm::write_matrix_pgm(p, res.representation);
  });
  out.emit("representation.csv", [&](const std::string& p) {
    tfgm::write_matrix_csv(p, res.representation);
  });
  out.emit("components.csv", [&](const std::string& p) {
    std::string body = "id,edge_count,pixel_count,energy\n";
    for (std::size_t i = 0; i < res.components.size(); ++i) {
      const tfgm::ComponentEstimate& est = res.components[i];
      body += std::to_string(i) + ',' + std::to_string(est.edge_count) + ',' +
              std::to_string(est.pixel_count) + ',' +
              tfgm::fmt_double(est.energy) + '\n';
    }
    tfgm::atomic_write(p, body);
  });
  out.emit("diagnostics.json", [&](const std::string& p) {
    json d;
    d["gamma"] = res.diagnostics.gamma;
    d["tau"] = res.diagnostics.tau;
    d["criterion"] = res.diagnostics.criterion;
    d["target"] = res.diagnostics.target;
    d["components_found"] = res.diagnostics.components_found;
    d["components_selected"] = res.diagnostics.components_selected;
    d["config"] = json::parse(tfgm::method_config_to_json(cfg));
    tfgm::atomic_write(p, d.dump(2) + "\n");
  });

  json manifest;
  manifest["input"] = opt.input;
  manifest["method"] = cfg.name;
  manifest["output_dir"] = opt.out;
  out.finish_manifest(std::move(manifest));

  std::cerr << "extract: " << res.components.size() << " component(s) -> "
            << opt.out << "\n";
  return 0;
}

// ---------------------------------------------------------------- bench --

struct BenchOptions {
  std::string scenario;
  std::string catalog_path;
  std::string methods = "A,B,C,D,E";
  std::string snr;  // optional comma list overriding the scenario grid
  std::size_t realizations = 0;  // 0 = keep the scenario's count
  std::uint64_t seed = 0;
  std::string out = "bench-out";
  bool timings = false;
  bool dump_config = false;
};

int run_bench(const BenchOptions& opt) {
  if (opt.dump_config) {
    std::cout << tfgm::scenarios_to_json(load_scenarios(opt.catalog_path));
    return 0;
  }
  if (opt.scenario.empty()) {
    throw tfgm::invalid_input("bench: missing --scenario");
  }

  const auto catalog = load_scenarios(opt.catalog_path);
  tfgm::Scenario scenario = find_scenario(catalog, opt.scenario);
  if (!opt.snr.empty()) {
    scenario.snr_grid.clear();
    std::size_t start = 0;
    while (start <= opt.snr.size()) {
      std::size_t comma = opt.snr.find(',', start);
      if (comma == std::string::npos) comma = opt.snr.size();
      scenario.snr_grid.push_back(parse_snr(opt.snr.substr(start, comma - start)));
      start = comma + 1;
    }
  }
  if (opt.realizations > 0) scenario.realizations = opt.realizations;

  std::vector<tfgm::MethodConfig> methods;
  const auto presets = tfgm::method_presets();
  std::size_t start = 0;
  while (start <= opt.methods.size()) {
    std::size_t comma = opt.methods.find(',', start);
    if (comma == std::string::npos) comma = opt.methods.size();
    const std::string name = opt.methods.substr(start, comma - start);
    start = comma + 1;
    if (name.empty()) continue;
    const auto it = presets.find(name);
    if (it == presets.end()) {
      throw config_error("unknown method '" + name +
                         "' in --methods (expected letters A..E)");
    }
    methods.push_back(it->second);
  }
  if (methods.empty()) throw config_error("--methods selected nothing");

  std::cerr << "bench: scenario '" << scenario.name << "': "
            << methods.size() << " method(s) x " << scenario.snr_grid.size()
            << " SNR level(s) x " << scenario.realizations
            << " realization(s)\n";

  const tfgm::BenchResult result =
      tfgm::run_benchmark(scenario, methods, opt.seed);

  ArtifactWriter out{fs::path(opt.out), {}};
  out.emit("results.csv", [&](const std::string& p) {
    tfgm::atomic_write(p, tfgm::bench_to_csv(result));
  });
  out.emit("summary.csv", [&](const std::string& p) {
    tfgm::atomic_write(p, tfgm::summary_to_csv(tfgm::summarize(result)));
  });
  if (opt.timings) {
    out.emit("timings.csv", [&](const std::string& p) {
      tfgm::atomic_write(p, tfgm::timings_to_csv(result));
    });
  }

  json manifest;
  manifest["scenario"] = scenario.name;
  manifest["methods"] = opt.methods;
  manifest["seed"] = opt.seed;
  manifest["output_dir"] = opt.out;
  out.finish_manifest(std::move(manifest));

  std::cerr << "bench: wrote " << result.rows.size() << " rows -> " << opt.out
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-frequency component separation via pixel-graph "
               "clustering"};
  app.set_version_flag("--version", "tfgm 0.1.0");
  app.require_subcommand(0, 1);

  SynthOptions synth;
  CLI::App* synth_cmd =
      app.add_subcommand("synth", "Generate a test signal (CSV + WAV + JSON)");
  std::vector<std::string> tones, linear, expo, sinus, hermites, impulses;
  synth_cmd->add_option("--tone", tones, "Pure tone, e.g. f=0.1,amp=1");
  synth_cmd->add_option("--linear-chirp", linear,
                        "Linear chirp, e.g. f0=0.1,f1=0.3,t_start=0,t_end=512");
  synth_cmd->add_option("--exponential-chirp", expo,
                        "Exponential chirp, e.g. f0=0.05,f1=0.2");
  synth_cmd->add_option("--sinusoidal-chirp", sinus,
                        "Sinusoidal FM, e.g. f_mean=0.25,f_dev=0.1,f_mod=0.002");
  synth_cmd->add_option("--hermite", hermites,
                        "Hermite function, e.g. order=20,center=512,scale=24");
  synth_cmd->add_option("--impulse", impulses, "Impulse, e.g. position=160");
  synth_cmd->add_option("--scenario", synth.scenario,
                        "Synthesize a benchmark scenario mixture by name");
  synth_cmd->add_option("--component", synth.component,
                        "Only this component of the mixture (0-based)");
  synth_cmd->add_option("--config", synth.catalog_path,
                        "Scenario catalog JSON overriding the built-ins");
  synth_cmd->add_option("--snr", synth.snr,
                        "Target SNR in dB, or 'inf' for no noise");
  synth_cmd->add_option("--seed", synth.seed, "Noise seed");
  synth_cmd->add_option("--n", synth.n, "Sample count (generator mode)");
  synth_cmd->add_option("--dt", synth.dt, "Sample spacing (generator mode)");
  synth_cmd->add_option("--out", synth.out,
                        "Output path prefix (writes .csv/.wav/.json)");
  synth_cmd->add_option("--bits", synth.bits, "WAV encoding: 16 or 32")
      ->check(CLI::IsMember({16, 32}));
  synth_cmd->add_flag("--dump-config", synth.dump_config,
                      "Print the scenario catalog and exit");

  ExtractOptions extract;
  CLI::App* extract_cmd = app.add_subcommand(
      "extract", "Separate a signal into components (files per component)");
  extract_cmd->add_option("input", extract.input,
                          "Input signal (.csv or .wav)");
  extract_cmd->add_option("--method", extract.method,
                          "Preset A..E, or 'custom' with --config");
  extract_cmd->add_option("--config", extract.config_path,
                          "Method configuration JSON");
  extract_cmd->add_option("--out", extract.out, "Output directory");
  extract_cmd->add_option("--bits", extract.bits, "WAV encoding: 16 or 32")
      ->check(CLI::IsMember({16, 32}));
  extract_cmd->add_flag("--dump-config", extract.dump_config,
                        "Print the resolved method configuration and exit");

  BenchOptions bench;
  CLI::App* bench_cmd = app.add_subcommand(
      "bench", "Monte Carlo benchmark over a scenario (CSV results)");
  bench_cmd->add_option("--scenario", bench.scenario, "Scenario name");
  bench_cmd->add_option("--config", bench.catalog_path,
                        "Scenario catalog JSON overriding the built-ins");
  bench_cmd->add_option("--methods", bench.methods,
                        "Comma-separated preset letters (default A,B,C,D,E)");
  bench_cmd->add_option("--snr", bench.snr,
                        "Override the SNR grid, e.g. 0,10,20 or inf");
  bench_cmd->add_option("--realizations", bench.realizations,
                        "Override the realization count");
  bench_cmd->add_option("--seed", bench.seed, "Root seed");
  bench_cmd->add_option("--out", bench.out, "Output directory");
  bench_cmd->add_flag("--timings", bench.timings,
                      "Also write per-run timings (not deterministic)");
  bench_cmd->add_flag("--dump-config", bench.dump_config,
                      "Print the scenario catalog and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (synth_cmd->parsed()) {
      const auto collect = [&](const std::vector<std::string>& values,
                               const char* kind) {
        for (const std::string& v : values) synth.generators.emplace_back(kind, v);
      };
      collect(tones, "tone");
      collect(linear, "linear-chirp");
      collect(expo, "exponential-chirp");
      collect(sinus, "sinusoidal-chirp");
      collect(hermites, "hermite");
      collect(impulses, "impulse");
      if (!synth.generators.empty() && !synth.scenario.empty()) {
        throw tfgm::invalid_input(
            "give either generator flags or --scenario, not both");
      }
      return run_synth(synth);
    }
    if (extract_cmd->parsed()) return run_extract(extract);
    if (bench_cmd->parsed()) return run_bench(bench);
    std::cerr << app.help();
    return 2;
  } catch (const config_error& e) {
    std::cerr << "tfgm: " << e.what() << "\n";
    return 3;
  } catch (const tfgm::invalid_input& e) {
    std::cerr << "tfgm: " << e.what() << "\n";
    return 2;
  } catch (const tfgm::io_error& e) {
    std::cerr << "tfgm: " << e.what() << "\n";
    return 2;
  } catch (const internal_error& e) {
    std::cerr << "tfgm: internal error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "tfgm: internal error: " << e.what() << "\n";
    return 4;
  }
}
