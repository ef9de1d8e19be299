#pragma once

// Named scenarios behind the command-line runner: presets that regenerate the
// data for each figure panel, JSON configuration files, and flag overrides.

#include <array>
#include <string>
#include <vector>

#include <json.hpp>

#include "modhom/interferogram.hpp"
#include "modhom/io.hpp"
#include "modhom/maps.hpp"
#include "modhom/model.hpp"

namespace modhom {

enum class Computation {
  Interferogram,
  SpectralMap,
  FreqDelayMap,
  ConjugateMap,
  CombReport,
  Design,
  Validate,
  VisibilityMap,
};

std::string to_string(Computation computation);
Computation computation_from_string(const std::string& name);

struct Scenario {
  std::string name = "custom";
  std::string description;
  Computation computation = Computation::Interferogram;

  PumpRegime pump = PumpRegime::Pulsed;
  double sigma_plus = 5.0;   // rad/ps, ignored for CW
  double sigma_minus = 5.0;  // rad/ps
  double tau0 = 3.0;         // ps
  double phi = 0.0;          // rad
  double tau = 0.0;          // ps

  // Delay axis: interferogram abscissa, freq-delay rows.
  double tau_min = -6.0;
  double tau_max = 6.0;
  Eigen::Index tau_points = 1201;
  std::vector<double> phis;  // interferogram columns; empty means {phi}
  RateMethod method = RateMethod::ClosedForm;

  // Spectral axes: +/- span with `points` nodes per axis.
  double span = 15.0;
  Eigen::Index points = 256;
  bool sum_difference = false;
  MapKind map_kind = MapKind::ModifiedHOM;

  // Comb analysis. Empty sources means the scenario's own source.
  std::vector<std::array<double, 2>> sources;
  std::vector<double> tau0s;
  std::vector<int> targets;
  double window_sigmas = 3.0;
  double threshold = 0.1;

  std::string out_dir = ".";
  OutputFormat format = OutputFormat::Csv;

  SourceModel model() const;
  InterferometerConfig config() const;
};

struct PresetInfo {
  std::string name;
  std::string description;
};

/// Every preset, in a fixed order.
std::vector<PresetInfo> list_presets();

/// Throws InvalidInput for an unknown name.
Scenario preset(const std::string& name);

/// Accepts "1.5", "pi", "-pi/4", "3pi/2", "3*pi/2".
double parse_phase(const std::string& text);

/// Overlay a JSON configuration on a scenario. Unknown keys are rejected.
/// Layout: {preset, name, computation, source{pump, sigma_plus, sigma_minus},
/// interferometer{tau0, phi, tau}, scan{tau_min, tau_max, points, phis, method},
/// grid{span, points, frame}, map{kind}, comb{sources, tau0s, targets,
/// window_sigmas, threshold}, output{dir, format}}.
void apply_config(Scenario& scenario, const nlohmann::json& config);

/// Read a JSON file; its "preset" key, if any, selects the base scenario.
Scenario load_config(const std::string& path);

/// "N" or "SPAN:N". Sets the delay axis for interferograms, the spectral axes
/// for maps; rejected for the other computations.
void apply_grid_override(Scenario& scenario, const std::string& text);

struct RunResult {
  std::string summary;  // one line
  std::vector<std::string> files;
  std::vector<std::string> warnings;
  bool ok = true;  // false when a validation run has failing points
};

RunResult run(const Scenario& scenario);

}  // namespace modhom
