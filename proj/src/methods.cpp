#include "tfgm/methods.hpp"

#include <json.hpp>

#include <cmath>

#include "tfgm/util.hpp"

namespace tfgm {

using nlohmann::json;

std::string to_string(Representation r) {
  switch (r) {
    case Representation::kStft: return "stft";
    case Representation::kSst2: return "sst2";
    case Representation::kSmoothedStft: return "smoothed-stft";
  }
  throw invalid_input("unknown representation");
}

Representation representation_from_string(const std::string& s) {
  if (s == "stft") return Representation::kStft;
  if (s == "sst2") return Representation::kSst2;
  if (s == "smoothed-stft") return Representation::kSmoothedStft;
  throw invalid_input("unknown representation: " + s);
}

namespace {

std::string expected_target(Representation r) {
  switch (r) {
    case Representation::kStft: return "stft-modulus";
    case Representation::kSst2: return "sst2-modulus";
    case Representation::kSmoothedStft: return "smoothed-stft-modulus";
  }
  throw invalid_input("unknown representation");
}

bool is_preset_name(const std::string& name) {
  return name.size() == 1 && name[0] >= 'A' && name[0] <= 'E';
}

}  // namespace

MethodResult run_method(const Signal& x, const MethodConfig& cfg) {
  if (x.size() == 0) throw invalid_input("run_method: empty signal");
  if (cfg.n_bins < 2) throw invalid_input("run_method: n_bins must be >= 2");

  const GaussianWindow window(cfg.window_sigma, cfg.truncation);
  const ComplexMatrix F = stft(x, window, cfg.n_bins);

  // The noise level always comes from the plain STFT; the squeezed-domain
  // methods rescale it by sigma in their threshold rule instead of
  // re-estimating on the squeezed matrix.
  const double gamma = estimate_gamma(F);

  ThresholdSpec threshold;
  if (is_preset_name(cfg.name)) {
    threshold =
        method_threshold(cfg.name[0], gamma, cfg.window_sigma, cfg.e_quantile);
  } else {
    threshold = cfg.graph.threshold;
  }
  if (threshold.target != expected_target(cfg.representation)) {
    throw invalid_input("run_method: threshold target '" + threshold.target +
                        "' does not match representation '" +
                        to_string(cfg.representation) + "'");
  }

  // The representation that gets masked and inverted, plus the modulus
  // matrix the pixel graph is built on (nonredundant rows only).
  const ComplexMatrix* inverted = &F;
  ComplexMatrix S;
  const Eigen::Index half = half_bins(F.rows());
  RealMatrix graph_input;
  switch (cfg.representation) {
    case Representation::kStft:
      graph_input = F.topRows(half).cwiseAbs();
      break;
    case Representation::kSst2: {
      const IndexMatrix omega =
          reassignment_operator(x, window, cfg.n_bins, 2);
      S = synchrosqueeze(F, omega);
      inverted = &S;
      graph_input = S.topRows(half).cwiseAbs();
      break;
    }
    case Representation::kSmoothedStft:
      // Smoothing shapes the mask only; the inversion still works on the
      // raw STFT, since blurring destroys the phase.
      graph_input = smooth_modulus(F.topRows(half).cwiseAbs(),
                                   cfg.kernel_sigma);
      break;
  }

  if (threshold.quantile) {
    std::vector<double> values(graph_input.data(),
                               graph_input.data() + graph_input.size());
    threshold.tau = quantile(std::move(values), *threshold.quantile);
  }

  GraphConfig graph_cfg = cfg.graph;
  graph_cfg.threshold = threshold;
  const ComponentSet all = build_components(graph_input, graph_cfg);
  const ComponentSet selected = select_components(all, cfg.selection);

  MethodResult result;
  result.diagnostics.gamma = gamma;
  result.diagnostics.tau = threshold.tau;
  result.diagnostics.criterion =
      threshold.criterion == EdgeCriterion::kProduct ? "product" : "min";
  result.diagnostics.target = threshold.target;
  result.diagnostics.components_found = all.components.size();
  result.diagnostics.components_selected = selected.components.size();

  for (const Component& c : selected.components) {
    ComponentEstimate est;
    est.mask = component_to_mask(c, F.rows(), F.cols());
    est.signal = invert_masked(*inverted, est.mask, window, x.dt);
    est.source_kind =
        cfg.representation == Representation::kSst2 ? "sst2" : "stft";
    est.edge_count = c.edge_count;
    est.pixel_count = c.pixels.size();
    est.energy = c.energy;
    result.components.push_back(std::move(est));
  }
  result.representation = std::move(graph_input);
  return result;
}

std::map<std::string, MethodConfig> method_presets() {
  std::map<std::string, MethodConfig> presets;

  MethodConfig base;
  base.window_sigma = 15.0;
  base.truncation = 6.0;
  base.n_bins = 512;
  base.graph.r = 2;
  base.graph.p = 1;
  base.selection.min_energy_fraction = 1e-3;

  {
    MethodConfig a = base;
    a.name = "A";
    a.representation = Representation::kStft;
    a.graph.threshold.criterion = EdgeCriterion::kProduct;
    a.graph.threshold.target = "stft-modulus";
    presets["A"] = a;
  }
  {
    MethodConfig b = base;
    b.name = "B";
    b.representation = Representation::kStft;
    b.graph.threshold.criterion = EdgeCriterion::kMin;
    b.graph.threshold.target = "stft-modulus";
    presets["B"] = b;
  }
  {
    MethodConfig c = base;
    c.name = "C";
    c.representation = Representation::kSst2;
    c.graph.threshold.criterion = EdgeCriterion::kProduct;
    c.graph.threshold.target = "sst2-modulus";
    presets["C"] = c;
  }
  {
    MethodConfig d = base;
    d.name = "D";
    d.representation = Representation::kSst2;
    d.graph.threshold.criterion = EdgeCriterion::kMin;
    d.graph.threshold.target = "sst2-modulus";
    presets["D"] = d;
  }
  {
    MethodConfig e = base;
    e.name = "E";
    e.representation = Representation::kSmoothedStft;
    e.graph.threshold.criterion = EdgeCriterion::kMin;
    e.graph.threshold.target = "smoothed-stft-modulus";
    e.graph.threshold.quantile = 0.80;
    presets["E"] = e;
  }
  return presets;
}

namespace {

json threshold_to_json(const ThresholdSpec& t) {
  json j;
  j["criterion"] = t.criterion == EdgeCriterion::kProduct ? "product" : "min";
  j["tau"] = t.tau;
  j["target"] = t.target;
  if (t.quantile) j["quantile"] = *t.quantile;
  return j;
}

ThresholdSpec threshold_from_json(const json& j, ThresholdSpec base) {
  if (j.contains("criterion")) {
    const std::string c = j.at("criterion").get<std::string>();
    if (c == "product") {
      base.criterion = EdgeCriterion::kProduct;
    } else if (c == "min") {
      base.criterion = EdgeCriterion::kMin;
    } else {
      throw invalid_input("config: criterion must be 'product' or 'min'");
    }
  }
  if (j.contains("tau")) base.tau = j.at("tau").get<double>();
  if (j.contains("target")) base.target = j.at("target").get<std::string>();
  if (j.contains("quantile")) {
    base.quantile = j.at("quantile").get<double>();
  }
  return base;
}

}  // namespace

std::string method_config_to_json(const MethodConfig& cfg) {
  json j;
  j["name"] = cfg.name;
  j["representation"] = to_string(cfg.representation);
  j["window_sigma"] = cfg.window_sigma;
  j["truncation"] = cfg.truncation;
  j["n_bins"] = cfg.n_bins;
  j["graph"]["r"] = cfg.graph.r;
  if (cfg.graph.p == kPInf) {
    j["graph"]["p"] = "inf";
  } else {
    j["graph"]["p"] = cfg.graph.p;
  }
  j["graph"]["threshold"] = threshold_to_json(cfg.graph.threshold);
  json sel;
  if (cfg.selection.top_k != std::numeric_limits<std::size_t>::max()) {
    sel["top_k"] = cfg.selection.top_k;
  }
  sel["min_edges"] = cfg.selection.min_edges;
  sel["min_energy_fraction"] = cfg.selection.min_energy_fraction;
  j["selection"] = sel;
  j["kernel_sigma"] = cfg.kernel_sigma;
  j["e_quantile"] = cfg.e_quantile;
  return j.dump(2) + "\n";
}

MethodConfig method_config_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw invalid_input(std::string("config: invalid JSON: ") + e.what());
  }

  MethodConfig cfg;
  if (j.contains("name")) {
    cfg.name = j.at("name").get<std::string>();
    auto presets = method_presets();
    if (auto it = presets.find(cfg.name); it != presets.end()) {
      cfg = it->second;  // preset as the base, explicit keys override
    }
  }
  try {
    if (j.contains("representation")) {
      cfg.representation =
          representation_from_string(j.at("representation").get<std::string>());
    }
    if (j.contains("window_sigma")) {
      cfg.window_sigma = j.at("window_sigma").get<double>();
    }
    if (j.contains("truncation")) {
      cfg.truncation = j.at("truncation").get<double>();
    }
    if (j.contains("n_bins")) cfg.n_bins = j.at("n_bins").get<std::size_t>();
    if (j.contains("graph")) {
      const json& gj = j.at("graph");
      if (gj.contains("r")) cfg.graph.r = gj.at("r").get<int>();
      if (gj.contains("p")) {
        if (gj.at("p").is_string()) {
          if (gj.at("p").get<std::string>() != "inf") {
            throw invalid_input("config: graph.p must be 1, 2, or \"inf\"");
          }
          cfg.graph.p = kPInf;
        } else {
          cfg.graph.p = gj.at("p").get<int>();
        }
      }
      if (gj.contains("threshold")) {
        cfg.graph.threshold =
            threshold_from_json(gj.at("threshold"), cfg.graph.threshold);
      }
    }
    if (j.contains("selection")) {
      const json& sj = j.at("selection");
      if (sj.contains("top_k")) {
        cfg.selection.top_k = sj.at("top_k").get<std::size_t>();
      }
      if (sj.contains("min_edges")) {
        cfg.selection.min_edges = sj.at("min_edges").get<std::uint64_t>();
      }
      if (sj.contains("min_energy_fraction")) {
        cfg.selection.min_energy_fraction =
            sj.at("min_energy_fraction").get<double>();
      }
    }
    if (j.contains("kernel_sigma")) {
      cfg.kernel_sigma = j.at("kernel_sigma").get<double>();
    }
    if (j.contains("e_quantile")) {
      cfg.e_quantile = j.at("e_quantile").get<double>();
    }
  } catch (const json::exception& e) {
    throw invalid_input(std::string("config: ") + e.what());
  }
  return cfg;
}

}  // namespace tfgm
