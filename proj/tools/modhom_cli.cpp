// modhom: scenario runner for the modified HOM interferometer library.
//
//   modhom list
//   modhom run fig1b --out results
//   modhom run --config my.json --phi pi/2 --format json
//
// Exit codes: 0 success, 1 validation failure, 2 configuration or input
// error, 3 numerical resolution / window / search failure.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "modhom/error.hpp"
#include "modhom/scenario.hpp"

namespace {

int report_error(const std::string& kind, const std::string& message, int code) {
  const nlohmann::json record{{"error", kind}, {"message", message}, {"exit_code", code}};
  std::cerr << record.dump() << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modified Hong-Ou-Mandel interferometer: interferograms, spectral maps, comb analysis"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List the built-in presets");

  auto* run = app.add_subcommand("run", "Run a preset or a JSON configuration");
  std::string preset_name;
  std::string config_path;
  std::optional<double> tau0, sigma_plus, sigma_minus;
  std::optional<std::string> phi, grid, out, format;
  run->add_option("preset", preset_name, "Preset name (see `modhom list`)");
  run->add_option("--config", config_path, "JSON configuration file; its 'preset' key selects a base");
  run->add_option("--tau0", tau0, "Interferometer imbalance tau0 in ps");
  run->add_option("--phi", phi, "Phase in rad; accepts forms like pi/2 or 3pi/2");
  run->add_option("--sigma-plus", sigma_plus, "Sum-frequency linewidth sigma+ in rad/ps");
  run->add_option("--sigma-minus", sigma_minus, "Difference-frequency linewidth sigma- in rad/ps");
  run->add_option("--grid", grid, "N or SPAN:N; delay axis for interferograms, spectral axes for maps");
  run->add_option("--out", out, "Output directory (default: current directory)");
  run->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return report_error("usage", e.what(), 2);
  }

  try {
    if (list->parsed()) {
      for (const auto& p : modhom::list_presets()) std::cout << p.name << '\t' << p.description << '\n';
      return 0;
    }

    modhom::Scenario scenario;
    if (!config_path.empty()) {
      scenario = modhom::load_config(config_path);
      if (!preset_name.empty()) {
        throw modhom::InvalidInput("give either a preset name or --config, not both");
      }
    } else if (!preset_name.empty()) {
      scenario = modhom::preset(preset_name);
    } else {
      throw modhom::InvalidInput("run needs a preset name or --config");
    }

    if (tau0) scenario.tau0 = *tau0;
    if (phi) scenario.phi = modhom::parse_phase(*phi);
    if (sigma_plus) {
      if (scenario.pump == modhom::PumpRegime::CW) {
        throw modhom::InvalidInput("--sigma-plus does not apply to a CW-pumped scenario");
      }
      scenario.sigma_plus = *sigma_plus;
    }
    if (sigma_minus) scenario.sigma_minus = *sigma_minus;
    if (grid) modhom::apply_grid_override(scenario, *grid);
    if (out) scenario.out_dir = *out;
    if (format) scenario.format = modhom::output_format_from_string(*format);

    const modhom::RunResult result = modhom::run(scenario);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
    std::cout << result.summary << '\n';
    return result.ok ? 0 : 1;
  } catch (const modhom::WindowError& e) {
    return report_error("window", e.what(), 3);
  } catch (const modhom::ResolutionError& e) {
    return report_error("resolution", e.what(), 3);
  } catch (const modhom::NotFound& e) {
    return report_error("not_found", e.what(), 3);
  } catch (const modhom::ContractViolation& e) {
    return report_error("contract", e.what(), 2);
  } catch (const std::invalid_argument& e) {
    return report_error("config", e.what(), 2);
  } catch (const std::exception& e) {
    return report_error("internal", e.what(), 4);
  }
}
