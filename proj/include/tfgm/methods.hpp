#pragma once

#include <map>
#include <string>
#include <vector>

#include "tfgm/graph.hpp"
#include "tfgm/reconstruct.hpp"

namespace tfgm {

enum class Representation { kStft, kSst2, kSmoothedStft };

std::string to_string(Representation r);
Representation representation_from_string(const std::string& s);

// Everything needed to run one masking method end to end. The five presets
// differ in representation, edge criterion, and threshold rule; a custom
// config can mix them freely as long as the threshold target matches the
// representation.
struct MethodConfig {
  std::string name = "custom";  // "A".."E" or "custom"
  Representation representation = Representation::kStft;
  double window_sigma = 15.0;  // samples
  double truncation = 6.0;     // window support in multiples of sigma
  std::size_t n_bins = 512;    // M
  GraphConfig graph;
  SelectionPolicy selection;
  double kernel_sigma = 2.0;   // smoothing width, smoothed-stft only
  double e_quantile = 0.80;    // binarization quantile, smoothed-stft only
};

// Per-run numbers worth surfacing: the noise estimate, the resolved
// threshold, and component stats before/after selection.
struct MethodDiagnostics {
  double gamma = 0.0;
  double tau = 0.0;
  std::string criterion;
  std::string target;
  std::size_t components_found = 0;
  std::size_t components_selected = 0;
};

struct MethodResult {
  std::vector<ComponentEstimate> components;
  MethodDiagnostics diagnostics;
  RealMatrix representation;  // modulus matrix the graph ran on (half spectrum)
};

// Full pipeline: representation -> noise level (always from the plain STFT)
// -> threshold -> pixel graph -> component selection -> mirrored masks ->
// one inversion per mask. All components come out of the same pass; nothing
// is peeled off between extractions.
MethodResult run_method(const Signal& x, const MethodConfig& cfg);

// The five preset pipelines, keyed "A".."E".
std::map<std::string, MethodConfig> method_presets();

// JSON round-trip for configs (used by --config / --dump-config).
std::string method_config_to_json(const MethodConfig& cfg);
MethodConfig method_config_from_json(const std::string& json_text);

}  // namespace tfgm
