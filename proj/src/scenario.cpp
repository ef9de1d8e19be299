#include "modhom/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "modhom/comb.hpp"
#include "modhom/error.hpp"
#include "modhom/validation.hpp"

namespace modhom {

namespace {

constexpr double kPi = std::numbers::pi;

using json = nlohmann::json;

std::string fmt(double v, int digits = 6) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_double(v[i]);
  return s;
}

std::vector<double> to_vector(const Eigen::ArrayXd& a) { return {a.data(), a.data() + a.size()}; }

// Column name for a phase: phi0, phi_pi2, phi_pi, phi_3pi2, else phi_<value>.
std::string phase_column(double phi) {
  const double q = phi / (kPi / 2);
  const double k = std::round(q);
  if (std::abs(q - k) < 1e-12 && k >= 0 && k <= 3) {
    static const char* names[] = {"phi0", "phi_pi2", "phi_pi", "phi_3pi2"};
    return names[static_cast<int>(k)];
  }
  return "phi_" + format_double(phi);
}

std::string pump_name(PumpRegime p) { return p == PumpRegime::CW ? "cw" : "pulsed"; }

Metadata base_metadata(const Scenario& s) {
  Metadata m{{"scenario", s.name},
             {"computation", to_string(s.computation)},
             {"pump", pump_name(s.pump)},
             {"sigma_minus", format_double(s.sigma_minus)}};
  if (s.pump == PumpRegime::Pulsed) m.emplace_back("sigma_plus", format_double(s.sigma_plus));
  m.emplace_back("tau0", format_double(s.tau0));
  m.emplace_back("phi", format_double(s.phi));
  m.emplace_back("tau", format_double(s.tau));
  m.emplace_back("units", "detuning rad/ps, delay ps, phase rad");
  return m;
}

class Output {
 public:
  explicit Output(const Scenario& s) : s_(s) {
    std::filesystem::create_directories(s.out_dir.empty() ? "." : s.out_dir);
  }

  std::string path(const std::string& suffix) const {
    const std::filesystem::path dir(s_.out_dir.empty() ? "." : s_.out_dir);
    return (dir / (s_.name + suffix + extension(s_.format))).string();
  }

  void map(RunResult& r, const std::string& suffix, const SpectralMap& m, const Metadata& meta) {
    const std::string p = path(suffix);
    write_map(p, s_.format, m, meta);
    r.files.push_back(p);
  }

  void table(RunResult& r, const std::string& suffix, const Table& t, const Metadata& meta) {
    const std::string p = path(suffix);
    write_table(p, s_.format, t, meta);
    r.files.push_back(p);
  }

 private:
  const Scenario& s_;
};

struct Extremum {
  double value;
  Eigen::Index index;
};

Extremum arg_min(const Eigen::ArrayXd& a) {
  Eigen::Index i = 0;
  const double v = a.minCoeff(&i);
  return {v, i};
}

Extremum arg_max(const Eigen::ArrayXd& a) {
  Eigen::Index i = 0;
  const double v = a.maxCoeff(&i);
  return {v, i};
}

RunResult run_interferogram(const Scenario& s) {
  const SourceModel model = s.model();
  const Grid1D delays = Grid1D::linspace(s.tau_min, s.tau_max, s.tau_points, AxisLabel::Delay);
  const std::vector<double> phis = s.phis.empty() ? std::vector<double>{s.phi} : s.phis;

  RunResult result;
  Table table;
  table.add("tau", to_vector(delays.nodes()));
  std::string summary = s.name + ": interferogram, " + std::to_string(delays.count()) +
                        " delays in [" + fmt(s.tau_min) + ", " + fmt(s.tau_max) + "] ps;";
  Metadata meta = base_metadata(s);
  meta.emplace_back("method", s.method == RateMethod::ClosedForm ? "closed-form" : "quadrature");
  meta.emplace_back("phis", join(phis));
  for (double phi : phis) {
    const InterferometerConfig config(s.tau0, phi, 0.0);
    const Interferogram ig = scan(model, config, delays, s.method);
    for (const auto& w : ig.warnings) {
      if (std::find(result.warnings.begin(), result.warnings.end(), w) == result.warnings.end()) {
        result.warnings.push_back(w);
      }
    }
    const std::string name = phase_column(phi);
    table.add(name, to_vector(ig.values));
    meta.emplace_back("baseline_" + name, format_double(ig.baseline));
    const Extremum lo = arg_min(ig.values);
    const Extremum hi = arg_max(ig.values);
    const Eigen::Index mid = delays.nearest(0.0);
    summary += " " + name + " min " + fmt(lo.value) + " at tau=" + fmt(delays.node(lo.index)) +
               ", max " + fmt(hi.value) + " at tau=" + fmt(delays.node(hi.index)) +
               ", R(0)=" + fmt(ig.values(mid)) + ";";
    if (phi == phis.front()) {
      try {
        const DipCharacterization dips = characterize_from_dips(ig);
        summary += " side dips at " + fmt(dips.left_dip) + ", " + fmt(dips.right_dip) +
                   " ps (tau0 estimate " + fmt(dips.tau0_estimate.value()) + ");";
      } catch (const NotFound&) {
        summary += " side dips not found;";
      }
    }
  }
  Output out(s);
  out.table(result, "", table, meta);
  summary.pop_back();
  result.summary = summary;
  return result;
}

Grid2D spectral_grid(const Scenario& s) {
  if (s.sum_difference) {
    return {Grid1D::centered(s.span, s.points, AxisLabel::SumDetuning),
            Grid1D::centered(s.span, s.points, AxisLabel::DifferenceDetuning)};
  }
  return {Grid1D::centered(s.span, s.points, AxisLabel::SignalDetuning),
          Grid1D::centered(s.span, s.points, AxisLabel::IdlerDetuning)};
}

std::string map_summary(const SpectralMap& m) {
  Eigen::Index r = 0, c = 0;
  const double hi = m.values.maxCoeff(&r, &c);
  const double lo = m.values.minCoeff();
  return to_string(m.kind) + " map " + std::to_string(m.values.rows()) + "x" +
         std::to_string(m.values.cols()) + " over (" + to_string(m.grid.rows.label()) + ", " +
         to_string(m.grid.cols.label()) + "); min " + fmt(lo) + ", max " + fmt(hi) + " at (" +
         fmt(m.grid.rows.node(r)) + ", " + fmt(m.grid.cols.node(c)) + ")";
}

RunResult run_spectral_map(const Scenario& s) {
  const SourceModel model = s.model();
  const Grid2D grid = spectral_grid(s);
  const SpectralMap m = s.map_kind == MapKind::JSI ? jsi_map(model, grid)
                                                   : spectral_map(model, s.config(), grid, s.map_kind);
  RunResult result;
  Metadata meta = base_metadata(s);
  meta.emplace_back("kind", to_string(m.kind));
  Output(s).map(result, "", m, meta);
  result.summary = s.name + ": " + map_summary(m);
  return result;
}

RunResult run_freq_delay(const Scenario& s, bool with_conjugate) {
  const SourceModel model = s.model();
  if (!model.is_cw()) throw ContractViolation("frequency-delay maps need a CW source");
  const Grid1D taus = Grid1D::linspace(s.tau_min, s.tau_max, s.tau_points, AxisLabel::Delay);
  const Grid1D omega = commensurate_omega_grid(2.0 * s.tau0, s.span, s.points);
  const SpectralMap fd = freq_delay_map(model, taus, omega, Delay(s.tau0), s.phi);

  RunResult result;
  Output out(s);
  Metadata meta = base_metadata(s);
  out.map(result, "_freq_delay", fd, meta);

  // Frequency-integrated profile and the closed form on the same delays.
  const double norm = baseline_integral(model);
  const Eigen::ArrayXd integrated = project(fd, ProjectionAxis::Tau).values / norm;
  const Interferogram closed = scan(model, s.config(), taus, RateMethod::ClosedForm);
  result.warnings = closed.warnings;
  Table profiles;
  profiles.add("tau", to_vector(taus.nodes()));
  profiles.add("omega_integral", to_vector(integrated));
  profiles.add("closed_form", to_vector(closed.values));

  std::string summary = s.name + ": " + map_summary(fd) + "; omega-integral vs closed form max dev " +
                        fmt((integrated - closed.values).abs().maxCoeff(), 3);
  if (with_conjugate) {
    const SpectralMap ct = conjugate_time_map(fd);
    out.map(result, "_conjugate", ct, meta);
    const Eigen::Index t0_col = ct.grid.cols.nearest(0.0);
    const Eigen::ArrayXd t0_row =
        ct.values.col(t0_col) * std::sqrt(2.0 * kPi) / norm;
    profiles.add("t0_row", to_vector(t0_row));

    const Eigen::Index tau0_row = taus.nearest(0.0);
    const double centre = ct.values(tau0_row, t0_col);
    const double left = ct.values(tau0_row, ct.grid.cols.nearest(-2.0 * s.tau0));
    const double right = ct.values(tau0_row, ct.grid.cols.nearest(2.0 * s.tau0));
    summary += "; tau=0 conjugate peaks at T=0, +/-" + fmt(2.0 * s.tau0) + " ps, side/centre " +
               fmt(left / centre) + ", " + fmt(right / centre);
  }
  out.table(result, "_profiles", profiles, meta);
  result.summary = summary;
  return result;
}

std::vector<std::array<double, 2>> comb_sources(const Scenario& s) {
  if (!s.sources.empty()) return s.sources;
  return {{s.sigma_plus, s.sigma_minus}};
}

SourceModel comb_model(const Scenario& s, const std::array<double, 2>& src) {
  return s.pump == PumpRegime::CW ? SourceModel::cw(src[1]) : SourceModel::pulsed(src[0], src[1]);
}

RunResult run_comb(const Scenario& s) {
  const std::vector<double> tau0s = s.tau0s.empty() ? std::vector<double>{s.tau0} : s.tau0s;
  const auto sources = comb_sources(s);

  RunResult result;
  Output out(s);
  Table report;
  std::vector<double> row_idx, sp, sm, t0c, sig_teeth, sig_spacing, sig_vis, sig_centre, dom_sum,
      dom_teeth, dom_spacing, dom_vis;
  std::string summary = s.name + ": teeth (signal/dominant) ";
  for (std::size_t r = 0; r < sources.size(); ++r) {
    const SourceModel model = comb_model(s, sources[r]);
    const MarginalAxis dom = dominant_axis(model);
    const double t_max = *std::max_element(tau0s.begin(), tau0s.end());
    const Grid1D common =
        marginal_grid(model, InterferometerConfig(t_max, s.phi, 0.0), MarginalAxis::Signal,
                      s.window_sigmas);
    Table spectra;
    spectra.add("omega_s", to_vector(common.nodes()));
    summary += (r ? " | " : "") + std::string("row ") + std::to_string(r + 1) + ":";
    for (double t0 : tau0s) {
      const InterferometerConfig config(t0, s.phi, 0.0);
      const CombReport sig = comb_report(model, config, MarginalAxis::Signal, s.window_sigmas,
                                         s.threshold);
      const CombReport dr = comb_report(model, config, dom, s.window_sigmas, s.threshold);
      const Spectrum marginal = marginal_spectrum(model, config, MarginalAxis::Signal, common);
      const double peak = marginal.values.maxCoeff();
      spectra.add("tau0_" + format_double(t0), to_vector(marginal.values));

      row_idx.push_back(static_cast<double>(r + 1));
      sp.push_back(model.sigma_plus());
      sm.push_back(model.sigma_minus());
      t0c.push_back(t0);
      sig_teeth.push_back(sig.dimensionality);
      sig_spacing.push_back(sig.spacing);
      sig_vis.push_back(sig.visibility);
      sig_centre.push_back(peak > 0 ? marginal.values(common.nearest(0.0)) / peak : 0.0);
      dom_sum.push_back(dom == MarginalAxis::SumAxis ? 1.0 : 0.0);
      dom_teeth.push_back(dr.dimensionality);
      dom_spacing.push_back(dr.spacing);
      dom_vis.push_back(dr.visibility);
      summary += " " + std::to_string(sig.dimensionality) + "/" + std::to_string(dr.dimensionality);
    }
    Metadata meta = base_metadata(s);
    meta.emplace_back("row", std::to_string(r + 1));
    meta.emplace_back("row_sigma_plus", format_double(model.sigma_plus()));
    meta.emplace_back("row_sigma_minus", format_double(model.sigma_minus()));
    out.table(result, "_row" + std::to_string(r + 1), spectra, meta);
  }
  report.add("row", row_idx);
  report.add("sigma_plus", sp);
  report.add("sigma_minus", sm);
  report.add("tau0", t0c);
  report.add("signal_teeth", sig_teeth);
  report.add("signal_spacing", sig_spacing);
  report.add("signal_visibility", sig_vis);
  report.add("signal_centre", sig_centre);
  report.add("dominant_is_sum", dom_sum);
  report.add("dominant_teeth", dom_teeth);
  report.add("dominant_spacing", dom_spacing);
  report.add("dominant_visibility", dom_vis);
  Metadata meta = base_metadata(s);
  meta.emplace_back("window_sigmas", format_double(s.window_sigmas));
  meta.emplace_back("threshold", format_double(s.threshold));
  out.table(result, "_report", report, meta);
  result.summary = summary;
  return result;
}

RunResult run_design(const Scenario& s) {
  if (s.targets.empty()) throw InvalidInput("design needs at least one target dimension");
  const SourceModel model = comb_model(s, comb_sources(s).front());
  std::vector<double> target, tau0, achieved;
  std::string summary = s.name + ": tau0 for dimensionality";
  for (int d : s.targets) {
    const Delay t0 = design_tau0(model, d, s.window_sigmas, s.phi);
    const CombReport rep = comb_report(model, InterferometerConfig(t0, s.phi, Delay(0.0)),
                                       dominant_axis(model), s.window_sigmas, 0.1);
    target.push_back(d);
    tau0.push_back(t0.value());
    achieved.push_back(rep.dimensionality);
    summary += " " + std::to_string(d) + "->" + fmt(t0.value()) + " ps";
  }
  Table t;
  t.add("target", target);
  t.add("tau0", tau0);
  t.add("achieved", achieved);
  RunResult result;
  Metadata meta = base_metadata(s);
  meta.emplace_back("window_sigmas", format_double(s.window_sigmas));
  Output(s).table(result, "", t, meta);
  result.summary = summary;
  return result;
}

RunResult run_validate(const Scenario& s) {
  const auto points = run_validation(validation_matrix());
  Table t;
  std::vector<double> ratio, sp, sm, t0, phi, tau, cf, q, j, d, pass;
  std::size_t passed = 0;
  double worst = 0.0;
  for (const auto& p : points) {
    ratio.push_back(p.config.ratio);
    sp.push_back(p.config.sigma_plus);
    sm.push_back(p.config.sigma_minus);
    t0.push_back(p.config.tau0);
    phi.push_back(p.config.phi);
    tau.push_back(p.tau);
    cf.push_back(p.closed_form);
    q.push_back(p.quadrature);
    j.push_back(p.jti);
    d.push_back(p.max_pairwise);
    pass.push_back(p.pass ? 1.0 : 0.0);
    passed += p.pass ? 1 : 0;
    worst = std::max(worst, p.max_pairwise);
  }
  for (auto [name, col] : {std::pair{"ratio", &ratio}, {"sigma_plus", &sp}, {"sigma_minus", &sm},
                           {"tau0", &t0}, {"phi", &phi}, {"tau", &tau}, {"closed_form", &cf},
                           {"quadrature", &q}, {"jti", &j}, {"max_pairwise", &d}, {"pass", &pass}}) {
    t.add(name, *col);
  }
  RunResult result;
  Metadata meta{{"scenario", s.name}, {"computation", to_string(s.computation)},
                {"tolerance", "2e-05"}};
  Output(s).table(result, "", t, meta);
  result.ok = passed == points.size();
  result.summary = s.name + ": three-route agreement " + std::to_string(passed) + "/" +
                   std::to_string(points.size()) + " points within 2e-5, worst " + fmt(worst, 3) +
                   (result.ok ? " (PASS)" : " (FAIL)");
  return result;
}

// Middle-feature visibility b = cos(phi) g+(tau0) over (sigma+, phi).
RunResult run_visibility(const Scenario& s) {
  const Grid1D sig = Grid1D::linspace(s.span / static_cast<double>(s.points), s.span, s.points,
                                      AxisLabel::SumDetuning);
  const Grid1D phis = Grid1D::linspace(0.0, 2.0 * kPi, 73, AxisLabel::Delay);
  std::vector<double> sp, ph, b;
  for (Eigen::Index i = 0; i < sig.count(); ++i) {
    const SourceModel model = SourceModel::pulsed(sig.node(i), s.sigma_minus);
    for (Eigen::Index k = 0; k < phis.count(); ++k) {
      sp.push_back(sig.node(i));
      ph.push_back(phis.node(k));
      b.push_back(dip_coefficients(model, InterferometerConfig(s.tau0, phis.node(k), 0.0)).b);
    }
  }
  Table t;
  t.add("sigma_plus", sp);
  t.add("phi", ph);
  t.add("b", b);
  RunResult result;
  Output(s).table(result, "", t, base_metadata(s));
  const auto [lo, hi] = std::minmax_element(b.begin(), b.end());
  result.summary = s.name + ": b over " + std::to_string(sig.count()) + " sigma+ x " +
                   std::to_string(phis.count()) + " phases; range [" + fmt(*lo) + ", " +
                   fmt(*hi) + "]";
  return result;
}

template <class T>
T get_as(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("config key '") + key + "': " + e.what());
  }
}

double get_phase(const json& j, const char* key) {
  const json& v = j.at(key);
  if (v.is_string()) return parse_phase(v.get<std::string>());
  if (v.is_number()) return v.get<double>();
  throw InvalidInput(std::string("config key '") + key + "' must be a number or phase string");
}

void check_keys(const json& j, const char* section, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw InvalidInput(std::string("config section '") + section + "' must be an object");
  for (const auto& [k, v] : j.items()) {
    (void)v;
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; })) {
      throw InvalidInput(std::string("unknown config key '") + k + "' in " + section);
    }
  }
}

Eigen::Index get_count(const json& j, const char* key) {
  const long long n = get_as<long long>(j, key);
  if (n < 2) throw InvalidInput(std::string("config key '") + key + "' must be >= 2");
  return static_cast<Eigen::Index>(n);
}

}  // namespace

std::string to_string(Computation c) {
  switch (c) {
    case Computation::Interferogram: return "interferogram";
    case Computation::SpectralMap: return "spectral-map";
    case Computation::FreqDelayMap: return "freq-delay-map";
    case Computation::ConjugateMap: return "conjugate-map";
    case Computation::CombReport: return "comb-report";
    case Computation::Design: return "design";
    case Computation::Validate: return "validate";
    case Computation::VisibilityMap: return "visibility-map";
  }
  return "unknown";
}

Computation computation_from_string(const std::string& name) {
  for (auto c : {Computation::Interferogram, Computation::SpectralMap, Computation::FreqDelayMap,
                 Computation::ConjugateMap, Computation::CombReport, Computation::Design,
                 Computation::Validate, Computation::VisibilityMap}) {
    if (to_string(c) == name) return c;
  }
  throw InvalidInput("unknown computation: " + name);
}

SourceModel Scenario::model() const {
  return pump == PumpRegime::CW ? SourceModel::cw(sigma_minus)
                                : SourceModel::pulsed(sigma_plus, sigma_minus);
}

InterferometerConfig Scenario::config() const { return {tau0, phi, tau}; }

std::vector<PresetInfo> list_presets() {
  return {
      {"fig1b", "CW interferograms for phi = 0, pi/2, pi (sigma- = 5 rad/ps, tau0 = 3 ps)"},
      {"fig1b-inset", "middle-feature visibility b over sigma+ and phi (tau0 = 3 ps)"},
      {"fig2a", "standard HOM spectral map at tau = 3 ps (sigma+ = sigma- = 5 rad/ps)"},
      {"fig2b", "N00N spectral map, phi = 0, tau = 3 ps"},
      {"fig2c", "N00N spectral map, phi = pi, tau = 3 ps"},
      {"fig2d", "modified HOM spectral map, tau0 = 3 ps, phi = 0, tau = 0"},
      {"fig2e", "modified HOM spectral map, tau0 = 3 ps, phi = pi, tau = 0"},
      {"fig2f", "modified HOM spectral map, tau0 = 3 ps, phi = 0, tau = 1 ps"},
      {"fig3", "CW frequency-delay map and its conjugate-time map, phi = pi/2"},
      {"fig4-grid", "comb teeth for 3 sources x tau0 in {1, 1.5, 2, 2.5, 3} ps"},
      {"design", "tau0 for 4, 6, 8, 10, 12 comb teeth, anti-correlated source"},
      {"validate", "three-route agreement over the 20-configuration matrix"},
  };
}

Scenario preset(const std::string& name) {
  Scenario s;
  s.name = name;
  for (const auto& p : list_presets()) {
    if (p.name == name) s.description = p.description;
  }
  if (s.description.empty()) throw InvalidInput("unknown preset: " + name);

  auto spectral = [&](MapKind kind, double phi, double tau) {
    s.computation = Computation::SpectralMap;
    s.map_kind = kind;
    s.phi = phi;
    s.tau = tau;
  };
  if (name == "fig1b") {
    s.pump = PumpRegime::CW;
    s.phis = {0.0, kPi / 2, kPi};
  } else if (name == "fig1b-inset") {
    s.computation = Computation::VisibilityMap;
    s.span = 1.0;
    s.points = 200;
  } else if (name == "fig2a") {
    spectral(MapKind::StandardHOM, 0.0, 3.0);
  } else if (name == "fig2b") {
    spectral(MapKind::NOON, 0.0, 3.0);
  } else if (name == "fig2c") {
    spectral(MapKind::NOON, kPi, 3.0);
  } else if (name == "fig2d") {
    spectral(MapKind::ModifiedHOM, 0.0, 0.0);
  } else if (name == "fig2e") {
    spectral(MapKind::ModifiedHOM, kPi, 0.0);
  } else if (name == "fig2f") {
    spectral(MapKind::ModifiedHOM, 0.0, 1.0);
  } else if (name == "fig3") {
    s.computation = Computation::ConjugateMap;
    s.pump = PumpRegime::CW;
    s.phi = kPi / 2;
    s.tau_points = 241;
  } else if (name == "fig4-grid") {
    s.computation = Computation::CombReport;
    s.sources = {{0.1, 5.0}, {5.0, 0.1}, {1.0, 5.0}};
    s.tau0s = {1.0, 1.5, 2.0, 2.5, 3.0};
  } else if (name == "design") {
    s.computation = Computation::Design;
    s.sigma_plus = 0.1;
    s.targets = {4, 6, 8, 10, 12};
  } else if (name == "validate") {
    s.computation = Computation::Validate;
  }
  return s;
}

double parse_phase(const std::string& text) {
  std::string t;
  for (char c : text) {
    if (c != ' ' && c != '*') t += c;
  }
  if (t.empty()) throw InvalidInput("empty phase");
  const auto pi_pos = t.find("pi");
  if (pi_pos == std::string::npos) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      throw InvalidInput("cannot parse phase: " + text);
    }
    if (used != t.size() || !std::isfinite(v)) throw InvalidInput("cannot parse phase: " + text);
    return v;
  }
  const std::string coeff = t.substr(0, pi_pos);
  const std::string rest = t.substr(pi_pos + 2);
  double k = 1.0;
  if (coeff == "-") k = -1.0;
  else if (!coeff.empty() && coeff != "+") {
    std::size_t used = 0;
    try {
      k = std::stod(coeff, &used);
    } catch (const std::exception&) {
      throw InvalidInput("cannot parse phase: " + text);
    }
    if (used != coeff.size()) throw InvalidInput("cannot parse phase: " + text);
  }
  double d = 1.0;
  if (!rest.empty()) {
    if (rest[0] != '/' || rest.size() < 2) throw InvalidInput("cannot parse phase: " + text);
    std::size_t used = 0;
    try {
      d = std::stod(rest.substr(1), &used);
    } catch (const std::exception&) {
      throw InvalidInput("cannot parse phase: " + text);
    }
    if (used != rest.size() - 1 || d == 0.0) throw InvalidInput("cannot parse phase: " + text);
  }
  return k * kPi / d;
}

void apply_config(Scenario& s, const json& j) {
  check_keys(j, "config", {"preset", "name", "computation", "source", "interferometer", "scan",
                           "grid", "map", "comb", "output"});
  if (j.contains("name")) s.name = get_as<std::string>(j, "name");
  if (j.contains("computation")) s.computation = computation_from_string(get_as<std::string>(j, "computation"));
  if (j.contains("source")) {
    const json& src = j["source"];
    check_keys(src, "source", {"pump", "sigma_plus", "sigma_minus"});
    if (src.contains("pump")) {
      const auto p = get_as<std::string>(src, "pump");
      if (p == "cw") s.pump = PumpRegime::CW;
      else if (p == "pulsed") s.pump = PumpRegime::Pulsed;
      else throw InvalidInput("source.pump must be 'cw' or 'pulsed'");
    }
    if (src.contains("sigma_plus")) s.sigma_plus = get_as<double>(src, "sigma_plus");
    if (src.contains("sigma_minus")) s.sigma_minus = get_as<double>(src, "sigma_minus");
  }
  if (j.contains("interferometer")) {
    const json& in = j["interferometer"];
    check_keys(in, "interferometer", {"tau0", "phi", "tau"});
    if (in.contains("tau0")) s.tau0 = get_as<double>(in, "tau0");
    if (in.contains("phi")) s.phi = get_phase(in, "phi");
    if (in.contains("tau")) s.tau = get_as<double>(in, "tau");
  }
  if (j.contains("scan")) {
    const json& sc = j["scan"];
    check_keys(sc, "scan", {"tau_min", "tau_max", "points", "phis", "method"});
    if (sc.contains("tau_min")) s.tau_min = get_as<double>(sc, "tau_min");
    if (sc.contains("tau_max")) s.tau_max = get_as<double>(sc, "tau_max");
    if (sc.contains("points")) s.tau_points = get_count(sc, "points");
    if (sc.contains("phis")) {
      if (!sc["phis"].is_array()) throw InvalidInput("scan.phis must be an array");
      s.phis.clear();
      for (const auto& p : sc["phis"]) {
        s.phis.push_back(p.is_string() ? parse_phase(p.get<std::string>()) : p.get<double>());
      }
    }
    if (sc.contains("method")) {
      const auto m = get_as<std::string>(sc, "method");
      if (m == "closed-form") s.method = RateMethod::ClosedForm;
      else if (m == "quadrature") s.method = RateMethod::Quadrature;
      else throw InvalidInput("scan.method must be 'closed-form' or 'quadrature'");
    }
  }
  if (j.contains("grid")) {
    const json& g = j["grid"];
    check_keys(g, "grid", {"span", "points", "frame"});
    if (g.contains("span")) s.span = get_as<double>(g, "span");
    if (g.contains("points")) s.points = get_count(g, "points");
    if (g.contains("frame")) {
      const auto f = get_as<std::string>(g, "frame");
      if (f == "signal-idler") s.sum_difference = false;
      else if (f == "sum-difference") s.sum_difference = true;
      else throw InvalidInput("grid.frame must be 'signal-idler' or 'sum-difference'");
    }
  }
  if (j.contains("map")) {
    check_keys(j["map"], "map", {"kind"});
    if (j["map"].contains("kind")) s.map_kind = map_kind_from_string(get_as<std::string>(j["map"], "kind"));
  }
  if (j.contains("comb")) {
    const json& c = j["comb"];
    check_keys(c, "comb", {"sources", "tau0s", "targets", "window_sigmas", "threshold"});
    if (c.contains("sources")) s.sources = get_as<std::vector<std::array<double, 2>>>(c, "sources");
    if (c.contains("tau0s")) s.tau0s = get_as<std::vector<double>>(c, "tau0s");
    if (c.contains("targets")) s.targets = get_as<std::vector<int>>(c, "targets");
    if (c.contains("window_sigmas")) s.window_sigmas = get_as<double>(c, "window_sigmas");
    if (c.contains("threshold")) s.threshold = get_as<double>(c, "threshold");
  }
  if (j.contains("output")) {
    const json& o = j["output"];
    check_keys(o, "output", {"dir", "format"});
    if (o.contains("dir")) s.out_dir = get_as<std::string>(o, "dir");
    if (o.contains("format")) s.format = output_format_from_string(get_as<std::string>(o, "format"));
  }
}

Scenario load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput("config file " + path + " is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw InvalidInput("config file must hold a JSON object");
  Scenario s = j.contains("preset") ? preset(get_as<std::string>(j, "preset")) : Scenario{};
  apply_config(s, j);
  return s;
}

void apply_grid_override(Scenario& s, const std::string& text) {
  const auto colon = text.find(':');
  std::optional<double> span;
  long long n = 0;
  try {
    std::size_t used = 0;
    if (colon != std::string::npos) {
      span = std::stod(text.substr(0, colon), &used);
      if (used != colon) throw InvalidInput("");
    }
    const std::string count = colon == std::string::npos ? text : text.substr(colon + 1);
    n = std::stoll(count, &used);
    if (used != count.size()) throw InvalidInput("");
  } catch (const std::exception&) {
    throw InvalidInput("--grid expects N or SPAN:N, got '" + text + "'");
  }
  if (n < 2) throw InvalidInput("--grid needs at least 2 points");
  if (span && !(*span > 0.0)) throw InvalidInput("--grid span must be positive");
  switch (s.computation) {
    case Computation::Interferogram:
      s.tau_points = static_cast<Eigen::Index>(n);
      if (span) s.tau_min = -*span, s.tau_max = *span;
      return;
    case Computation::SpectralMap:
    case Computation::FreqDelayMap:
    case Computation::ConjugateMap:
      s.points = static_cast<Eigen::Index>(n);
      if (span) s.span = *span;
      return;
    default:
      throw InvalidInput("--grid does not apply to " + to_string(s.computation) + " scenarios");
  }
}

RunResult run(const Scenario& s) {
  require_positive(s.sigma_minus, "sigma_minus");
  if (s.pump == PumpRegime::Pulsed) require_positive(s.sigma_plus, "sigma_plus");
  if (!(s.tau0 >= 0.0)) throw InvalidInput("tau0 must be >= 0");
  if (!(s.tau_max > s.tau_min)) throw InvalidInput("scan needs tau_max > tau_min");
  switch (s.computation) {
    case Computation::Interferogram: return run_interferogram(s);
    case Computation::SpectralMap: return run_spectral_map(s);
    case Computation::FreqDelayMap: return run_freq_delay(s, false);
    case Computation::ConjugateMap: return run_freq_delay(s, true);
    case Computation::CombReport: return run_comb(s);
    case Computation::Design: return run_design(s);
    case Computation::Validate: return run_validate(s);
    case Computation::VisibilityMap: return run_visibility(s);
  }
  throw ContractViolation("unhandled computation");
}

}  // namespace modhom
