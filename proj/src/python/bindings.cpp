// Python bindings for the core operations: signal generators, transforms,
// pixel-graph clustering, masked inversion, the preset pipelines, and the
// benchmark driver. Configuration crosses the boundary as JSON text so the
// python side needs no mirror of the config structs.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "tfgm/bench.hpp"
#include "tfgm/graph.hpp"
#include "tfgm/methods.hpp"
#include "tfgm/noise.hpp"
#include "tfgm/reconstruct.hpp"
#include "tfgm/signal.hpp"
#include "tfgm/tfr.hpp"
#include "tfgm/util.hpp"
#include "tfgm/window.hpp"

namespace py = pybind11;

namespace {

tfgm::EdgeCriterion criterion_from_string(const std::string& s) {
  if (s == "product") return tfgm::EdgeCriterion::kProduct;
  if (s == "min") return tfgm::EdgeCriterion::kMin;
  throw tfgm::invalid_input("criterion must be 'product' or 'min', got '" +
                            s + "'");
}

std::string preset_json(const std::string& name) {
  const auto presets = tfgm::method_presets();
  const auto it = presets.find(name);
  if (it == presets.end()) {
    throw tfgm::invalid_input("unknown preset '" + name +
                              "' (expected A..E)");
  }
  return tfgm::method_config_to_json(it->second);
}

// Runs the Monte Carlo benchmark for a named builtin scenario and returns
// (results_csv, summary_csv). snr/realizations of None keep the scenario's
// own grid.
std::pair<std::string, std::string> run_benchmark_csv(
    const std::string& scenario_name, const std::vector<std::string>& methods,
    std::optional<std::vector<double>> snr_db,
    std::optional<std::size_t> realizations, std::uint64_t root_seed) {
  const auto scenarios = tfgm::builtin_scenarios();
  const auto it = std::find_if(
      scenarios.begin(), scenarios.end(),
      [&](const tfgm::Scenario& s) { return s.name == scenario_name; });
  if (it == scenarios.end()) {
    throw tfgm::invalid_input("unknown scenario '" + scenario_name + "'");
  }
  tfgm::Scenario scenario = *it;
  if (snr_db) scenario.snr_grid = *snr_db;
  if (realizations) scenario.realizations = *realizations;

  const auto presets = tfgm::method_presets();
  std::vector<tfgm::MethodConfig> configs;
  for (const std::string& name : methods) {
    const auto pit = presets.find(name);
    if (pit == presets.end()) {
      throw tfgm::invalid_input("unknown preset '" + name + "'");
    }
    configs.push_back(pit->second);
  }
  const tfgm::BenchResult result =
      tfgm::run_benchmark(scenario, configs, root_seed);
  return {tfgm::bench_to_csv(result),
          tfgm::summary_to_csv(tfgm::summarize(result))};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Separation of multicomponent signals via time-frequency "
            "pixel graphs";
  m.attr("__version__") = "0.1.0";

  py::register_exception<tfgm::invalid_input>(m, "InvalidInput",
                                              PyExc_ValueError);
  py::register_exception<tfgm::io_error>(m, "IoError", PyExc_OSError);

  py::class_<tfgm::Signal>(m, "Signal")
      .def(py::init([](std::vector<double> samples, double dt,
                       std::string name) {
             tfgm::Signal x;
             x.samples = std::move(samples);
             x.dt = dt;
             x.name = std::move(name);
             return x;
           }),
           py::arg("samples"), py::arg("dt") = 1.0, py::arg("name") = "")
      .def_readwrite("samples", &tfgm::Signal::samples)
      .def_readwrite("dt", &tfgm::Signal::dt)
      .def_readwrite("name", &tfgm::Signal::name)
      .def("__len__", &tfgm::Signal::size)
      .def("__repr__", [](const tfgm::Signal& x) {
        return "Signal(n=" + std::to_string(x.size()) +
               ", dt=" + tfgm::fmt_double(x.dt) +
               (x.name.empty() ? std::string() : ", name='" + x.name + "'") +
               ")";
      });

  m.def("gen_linear_chirp", &tfgm::gen_linear_chirp, py::arg("n"),
        py::arg("f0"), py::arg("f1"), py::arg("dt") = 1.0,
        py::arg("amp") = 1.0, py::arg("t_start") = 0.0,
        py::arg("t_end") = -1.0);
  m.def("gen_hermite", &tfgm::gen_hermite, py::arg("order"),
        py::arg("center"), py::arg("scale"), py::arg("n"),
        py::arg("dt") = 1.0);
  m.def("gen_sinusoidal_chirp", &tfgm::gen_sinusoidal_chirp, py::arg("n"),
        py::arg("f_mean"), py::arg("f_dev"), py::arg("f_mod"),
        py::arg("dt") = 1.0, py::arg("amp") = 1.0);
  m.def("gen_exponential_chirp", &tfgm::gen_exponential_chirp, py::arg("n"),
        py::arg("f0"), py::arg("f1"), py::arg("dt") = 1.0,
        py::arg("amp") = 1.0);
  m.def("gen_impulse", &tfgm::gen_impulse, py::arg("n"), py::arg("position"),
        py::arg("amp") = 1.0, py::arg("dt") = 1.0);
  m.def("add_noise", &tfgm::add_noise, py::arg("x"), py::arg("snr_db"),
        py::arg("seed"));
  m.def("snr_db", &tfgm::snr_db, py::arg("ref"), py::arg("est"));
  m.def("mix", &tfgm::mix, py::arg("parts"));
  m.def("energy", &tfgm::energy, py::arg("x"));
  m.def("normalize_energy", &tfgm::normalize_energy, py::arg("x"));

  py::class_<tfgm::GaussianWindow>(m, "GaussianWindow")
      .def(py::init<double, double>(), py::arg("sigma"),
           py::arg("truncation") = 6.0)
      .def_property_readonly("sigma", &tfgm::GaussianWindow::sigma)
      .def_property_readonly("half_width", &tfgm::GaussianWindow::half_width)
      .def("taps", &tfgm::GaussianWindow::taps)
      .def("__len__", &tfgm::GaussianWindow::size);

  m.def("stft", &tfgm::stft, py::arg("x"), py::arg("window"),
        py::arg("n_bins"));
  m.def("reassignment_operator", &tfgm::reassignment_operator, py::arg("x"),
        py::arg("window"), py::arg("n_bins"), py::arg("order") = 2);
  m.def("synchrosqueeze", &tfgm::synchrosqueeze, py::arg("F"),
        py::arg("omega"));
  m.def("smooth_modulus", &tfgm::smooth_modulus, py::arg("A"),
        py::arg("kernel_sigma"));
  m.def("half_bins",
        [](std::size_t M) { return tfgm::half_bins(Eigen::Index(M)); },
        py::arg("n_bins"));
  m.attr("INVALID_BIN") = tfgm::kInvalidBin;

  m.def("estimate_gamma", &tfgm::estimate_gamma, py::arg("F"));

  py::class_<tfgm::Pixel>(m, "Pixel")
      .def_readonly("bin", &tfgm::Pixel::bin)
      .def_readonly("time", &tfgm::Pixel::time)
      .def("__repr__", [](const tfgm::Pixel& p) {
        return "Pixel(bin=" + std::to_string(p.bin) +
               ", time=" + std::to_string(p.time) + ")";
      });
  py::class_<tfgm::Component>(m, "Component")
      .def_readonly("pixels", &tfgm::Component::pixels)
      .def_readonly("edge_count", &tfgm::Component::edge_count)
      .def_readonly("energy", &tfgm::Component::energy);
  py::class_<tfgm::ComponentSet>(m, "ComponentSet")
      .def_readonly("components", &tfgm::ComponentSet::components)
      .def_readonly("rows", &tfgm::ComponentSet::rows)
      .def_readonly("cols", &tfgm::ComponentSet::cols)
      .def("__len__",
           [](const tfgm::ComponentSet& s) { return s.components.size(); });

  m.def(
      "build_components",
      [](const tfgm::RealMatrix& A, double tau, const std::string& criterion,
         int r, int p) {
        tfgm::GraphConfig cfg;
        cfg.r = r;
        cfg.p = p < 0 ? tfgm::kPInf : p;
        cfg.threshold.criterion = criterion_from_string(criterion);
        cfg.threshold.tau = tau;
        return tfgm::build_components(A, cfg);
      },
      py::arg("A"), py::arg("tau"), py::arg("criterion") = "min",
      py::arg("r") = 1, py::arg("p") = 2,
      "Connected components of the pixel graph over a modulus matrix; "
      "p < 0 selects the l-infinity norm.");
  m.def(
      "select_components",
      [](const tfgm::ComponentSet& set, std::optional<std::size_t> top_k,
         std::uint64_t min_edges, double min_energy_fraction) {
        tfgm::SelectionPolicy policy;
        if (top_k) policy.top_k = *top_k;
        policy.min_edges = min_edges;
        policy.min_energy_fraction = min_energy_fraction;
        return tfgm::select_components(set, policy);
      },
      py::arg("set"), py::arg("top_k") = py::none(),
      py::arg("min_edges") = 0, py::arg("min_energy_fraction") = 0.0);
  m.def(
      "component_to_mask",
      [](const tfgm::Component& c, std::size_t full_rows, std::size_t cols) {
        return tfgm::component_to_mask(c, Eigen::Index(full_rows),
                                       Eigen::Index(cols));
      },
      py::arg("component"), py::arg("full_rows"), py::arg("cols"));

  m.def("invert_masked", &tfgm::invert_masked, py::arg("R"), py::arg("mask"),
        py::arg("window"), py::arg("dt") = 1.0);
  m.def("rel_error", &tfgm::rel_error, py::arg("ref"), py::arg("est"));

  py::class_<tfgm::MatchResult>(m, "MatchResult")
      .def_readonly("match", &tfgm::MatchResult::match)
      .def_readonly("errors", &tfgm::MatchResult::errors);
  m.def("match_components", &tfgm::match_components, py::arg("truth"),
        py::arg("estimates"));

  py::class_<tfgm::ComponentEstimate>(m, "ComponentEstimate")
      .def_readonly("signal", &tfgm::ComponentEstimate::signal)
      .def_readonly("mask", &tfgm::ComponentEstimate::mask)
      .def_readonly("source_kind", &tfgm::ComponentEstimate::source_kind)
      .def_readonly("edge_count", &tfgm::ComponentEstimate::edge_count)
      .def_readonly("pixel_count", &tfgm::ComponentEstimate::pixel_count)
      .def_readonly("energy", &tfgm::ComponentEstimate::energy);
  py::class_<tfgm::MethodResult>(m, "MethodResult")
      .def_readonly("components", &tfgm::MethodResult::components)
      .def_readonly("representation", &tfgm::MethodResult::representation)
      .def_property_readonly("diagnostics", [](const tfgm::MethodResult& r) {
        py::dict d;
        d["gamma"] = r.diagnostics.gamma;
        d["tau"] = r.diagnostics.tau;
        d["criterion"] = r.diagnostics.criterion;
        d["target"] = r.diagnostics.target;
        d["components_found"] = r.diagnostics.components_found;
        d["components_selected"] = r.diagnostics.components_selected;
        return d;
      });

  m.def(
      "run_method",
      [](const tfgm::Signal& x, const std::string& config_json) {
        return tfgm::run_method(x,
                                tfgm::method_config_from_json(config_json));
      },
      py::arg("x"), py::arg("config_json"),
      "Full pipeline on a signal; the configuration is JSON text (see "
      "method_preset_json).");
  m.def("method_preset_json", &preset_json, py::arg("name"),
        "Configuration of a preset pipeline (A..E) as JSON text.");
  m.def("scenario_catalog_json",
        []() { return tfgm::scenarios_to_json(tfgm::builtin_scenarios()); },
        "Builtin benchmark scenarios as JSON text.");
  m.def("run_benchmark_csv", &run_benchmark_csv, py::arg("scenario"),
        py::arg("methods"), py::arg("snr_db") = py::none(),
        py::arg("realizations") = py::none(), py::arg("root_seed") = 0,
        "Monte Carlo benchmark of preset methods on a builtin scenario; "
        "returns (results_csv, summary_csv).");
}
