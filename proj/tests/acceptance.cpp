// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "modhom/comb.hpp"
#include "modhom/interferogram.hpp"
#include "modhom/jti.hpp"
#include "modhom/kernels.hpp"
#include "modhom/maps.hpp"
#include "modhom/scenario.hpp"
#include "modhom/validation.hpp"
#include "support.hpp"

using namespace modhom;
using oracle::kPi;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// Local minima of y (interior points), as axis coordinates.
std::vector<double> local_minima(const Spectrum& s) {
  std::vector<double> out;
  for (Eigen::Index i = 1; i + 1 < s.values.size(); ++i) {
    if (s.values(i) < s.values(i - 1) && s.values(i) <= s.values(i + 1)) out.push_back(s.axis.node(i));
  }
  return out;
}

Outcome criterion1() {
  const auto dir = oracle::scratch_dir("accept1");
  Scenario s = preset("fig1b");
  s.out_dir = dir.string();
  const auto t = Clock::now();
  run(s);
  const double elapsed = seconds_since(t);
  std::filesystem::remove_all(dir);

  const SourceModel cw = s.model();
  const Grid1D delays = Grid1D::linspace(s.tau_min, s.tau_max, s.tau_points, AxisLabel::Delay);
  double worst_centre = 0.0;
  double worst_side = 0.0;
  double worst_place = 0.0;
  for (double phi : s.phis) {
    const Interferogram ig = scan(cw, InterferometerConfig(s.tau0, phi, 0.0), delays);
    worst_centre = std::max(worst_centre, std::abs(ig.values(delays.nearest(0.0)) - (1 - std::cos(phi))));
    for (double side : {-s.tau0, s.tau0}) {
      // Minimum over the node window tau0 +/- one step.
      const Eigen::Index c = delays.nearest(side);
      const double lo = ig.values.segment(c - 1, 3).minCoeff();
      worst_side = std::max(worst_side, std::abs(lo - 0.5));
      Eigen::Index arg = 0;
      const Eigen::Index from = side < 0 ? 0 : delays.nearest(0.5 * s.tau0);
      const Eigen::Index len = side < 0 ? delays.nearest(-0.5 * s.tau0) : delays.count() - from;
      ig.values.segment(from, len).minCoeff(&arg);
      worst_place = std::max(worst_place, std::abs(delays.node(from + arg) - side));
    }
  }
  const bool pass = worst_centre <= 1e-6 && worst_side <= 1e-3 && worst_place <= delays.step() + 1e-12 &&
                    elapsed < 1.0;
  return {pass, "|R(0)-(1-cos phi)| " + fmt(worst_centre) + ", |side min-0.5| " + fmt(worst_side) +
                    ", dip offset " + fmt(worst_place) + " ps, runtime " + fmt(elapsed) + " s"};
}

Outcome criterion2() {
  const auto t = Clock::now();
  const auto points = run_validation(validation_matrix());
  const double elapsed = seconds_since(t);
  double worst = 0.0;
  bool all = true;
  for (const auto& p : points) {
    worst = std::max(worst, p.max_pairwise);
    all = all && p.pass;
  }
  return {all && worst <= 2e-5 && points.size() == 60 && elapsed < 120.0,
          std::to_string(points.size()) + " points, max pairwise " + fmt(worst) + ", runtime " + fmt(elapsed) +
              " s"};
}

Outcome criterion3() {
  double worst = 0.0;
  for (const char* name : {"fig2d", "fig2e"}) {
    const Scenario s = preset(name);
    const SourceModel m = s.model();
    const InterferometerConfig cfg = s.config();
    const double t0 = cfg.tau0();
    const Grid2D grid{Grid1D::centered(s.span, s.points, AxisLabel::SignalDetuning),
                      Grid1D::centered(s.span, s.points, AxisLabel::IdlerDetuning)};
    const double peak = spectral_map(m, cfg, grid, MapKind::ModifiedHOM).values.maxCoeff();
    const double reach = 2 * s.span;
    for (int k = -20; k <= 20; ++k) {
      const double line_m = 2 * kPi * k / t0;
      const double line_p = (2 * kPi * k - cfg.phi()) / t0;
      for (int j = 0; j <= 200; ++j) {
        const double x = -reach + 2 * reach * j / 200.0;
        if (std::abs(line_m) <= reach) {
          worst = std::max(worst, cpd_modified(m, cfg, Detuning(x), Detuning(line_m)) / peak);
        }
        if (std::abs(line_p) <= reach) {
          worst = std::max(worst, cpd_modified(m, cfg, Detuning(line_p), Detuning(x)) / peak);
        }
      }
    }
  }
  // Sum-axis zeros located numerically along Omega- = pi / tau0.
  auto sum_zero = [](const Scenario& s) {
    const SourceModel m = s.model();
    const InterferometerConfig cfg = s.config();
    const double y = kPi / cfg.tau0();
    auto f = [&](double p) { return cpd_modified(m, cfg, Detuning(p), Detuning(y)); };
    // Coarse scan over one period, then golden-section refinement.
    const double lo = -0.25 * kPi / cfg.tau0(), hi = 1.75 * kPi / cfg.tau0();
    const double h = (hi - lo) / 4000.0;
    double best = lo;
    for (int i = 0; i <= 4000; ++i) {
      if (f(lo + h * i) < f(best)) best = lo + h * i;
    }
    double a = best - h, b = best + h;
    const double g = 0.5 * (std::sqrt(5.0) - 1);
    for (int i = 0; i < 100; ++i) {
      const double c = b - g * (b - a), d = a + g * (b - a);
      if (f(c) < f(d)) {
        b = d;
      } else {
        a = c;
      }
    }
    return 0.5 * (a + b);
  };
  const Scenario d = preset("fig2d");
  const Scenario e = preset("fig2e");
  const double shift = std::abs(sum_zero(e) - sum_zero(d));
  const double expect = kPi / d.tau0;
  const double shift_err = std::abs(std::remainder(shift - expect, 2 * kPi / d.tau0));
  return {worst < 1e-10 && shift_err < 1e-6,
          "max on zero lines " + fmt(worst) + " x peak, phi=pi shift error " + fmt(shift_err) + " rad/ps"};
}

Outcome criterion4() {
  const SourceModel m = SourceModel::pulsed(5, 5);
  const GaussianTpsa& f = m.tpsa();
  double var_hom = 0.0;
  double var_noon = 0.0;
  auto variance = [](const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return s / static_cast<double>(v.size());
  };
  for (double fixed : {-7.0, -2.0, 0.3, 4.0, 9.0}) {
    for (double tau : {0.5, 1.0, 3.0}) {
      std::vector<double> hom, noon;
      for (int j = 0; j <= 200; ++j) {
        const double x = -10 + 20 * j / 200.0;
        // Omega+ = x varies with Omega- fixed, and vice versa.
        const SignalIdler a = to_signal_idler({x, fixed});
        hom.push_back(cpd_standard_hom(m, Delay(tau), Detuning(a.signal), Detuning(a.idler)) /
                      f.intensity(x, fixed));
        const SignalIdler b = to_signal_idler({fixed, x});
        noon.push_back(cpd_noon(m, Delay(tau), 0.0, Detuning(b.signal), Detuning(b.idler)) /
                       f.intensity(fixed, x));
      }
      var_hom = std::max(var_hom, variance(hom));
      var_noon = std::max(var_noon, variance(noon));
    }
  }

  // Half-period offset between the N00N and modified-HOM sum-axis modulations.
  const double t0 = 3.0;
  const Grid1D sum = Grid1D::centered(15, 1201, AxisLabel::SumDetuning);
  const Grid1D diff = Grid1D::centered(15, 1201, AxisLabel::DifferenceDetuning);
  const Grid2D grid{sum, diff};
  const SpectralMap jsi = jsi_map(m, grid);
  const SpectralMap noon = spectral_map(m, InterferometerConfig(t0, 0.0, t0), grid, MapKind::NOON);
  const SpectralMap mod = spectral_map(m, InterferometerConfig(t0, 0.0, 0.0), grid, MapKind::ModifiedHOM);
  Spectrum noon_col = column_slice(noon, 0.0);
  Spectrum mod_col = column_slice(mod, kPi / t0);
  noon_col.values /= column_slice(jsi, 0.0).values;
  mod_col.values /= column_slice(jsi, kPi / t0).values;
  const auto nz = local_minima(noon_col);
  const auto mz = local_minima(mod_col);
  double offset_err = 1e9;
  const double period = 2 * kPi / t0;
  for (double a : nz) {
    for (double b : mz) {
      offset_err = std::min(offset_err, std::abs(std::abs(a - b) - 0.5 * period));
    }
  }
  const bool pass = var_hom < 1e-20 && var_noon < 1e-20 && offset_err <= sum.step() && !nz.empty() && !mz.empty();
  return {pass, "orthogonal variance " + fmt(var_hom) + " / " + fmt(var_noon) + ", offset error " +
                    fmt(offset_err) + " rad/ps (step " + fmt(sum.step()) + ")"};
}

Outcome criterion5() {
  const Scenario s = preset("fig3");
  const SourceModel cw = s.model();
  const Grid1D taus = Grid1D::linspace(s.tau_min, s.tau_max, s.tau_points, AxisLabel::Delay);
  const Grid1D omega = commensurate_omega_grid(2 * s.tau0, s.span, s.points);
  const SpectralMap fd = freq_delay_map(cw, taus, omega, Delay(s.tau0), s.phi);
  const SpectralMap ct = conjugate_time_map(fd);

  const Spectrum row = row_slice(ct, 0.0);
  const double top = row.values.maxCoeff();
  std::vector<double> peaks;
  for (Eigen::Index i = 1; i + 1 < row.values.size(); ++i) {
    if (row.values(i) > row.values(i - 1) && row.values(i) > row.values(i + 1) && row.values(i) > 1e-3 * top) {
      peaks.push_back(row.axis.node(i));
    }
  }
  const double centre = row.values(row.axis.nearest(0.0));
  const double left = row.values(row.axis.nearest(-2 * s.tau0)) / centre;
  const double right = row.values(row.axis.nearest(2 * s.tau0)) / centre;
  bool placed = peaks.size() == 3;
  if (placed) {
    placed = std::abs(peaks[0] + 2 * s.tau0) < 1e-9 && std::abs(peaks[1]) < 1e-9 &&
             std::abs(peaks[2] - 2 * s.tau0) < 1e-9;
  }

  // T = 0 column against the temporal interferogram, both normalized by the
  // frequency integral of the far-delay CPD.
  const Spectrum t0col = column_slice(ct, 0.0);
  const double norm = std::sqrt(2 * kPi) / baseline_integral(cw);
  double worst = 0.0;
  for (Eigen::Index r = 0; r < taus.count(); ++r) {
    const double rate = rate_modified_cw(cw, InterferometerConfig(s.tau0, s.phi, taus.node(r)));
    worst = std::max(worst, std::abs(t0col.values(r) * norm - rate));
  }
  const bool pass = placed && std::abs(left - 0.5) <= 1e-3 && std::abs(right - 0.5) <= 1e-3 && worst <= 1e-6;
  return {pass, std::to_string(peaks.size()) + " peaks, side/centre " + fmt(left) + " / " + fmt(right) +
                    ", T=0 profile deviation " + fmt(worst)};
}

Outcome criterion6() {
  double worst = 0.0;
  const double t0 = 3.0;
  for (double phi : {0.0, kPi / 2, kPi}) {
    const InterferometerConfig cfg(t0, phi, 0.0);
    for (int orient = 0; orient < 2; ++orient) {
      const SourceModel m = orient == 0 ? SourceModel::pulsed(0.1, 5) : SourceModel::pulsed(5, 0.1);
      const MarginalAxis axis = orient == 0 ? MarginalAxis::DiffAxis : MarginalAxis::SumAxis;
      const Grid1D g = marginal_grid(m, cfg, axis);
      const Spectrum s = marginal_spectrum(m, cfg, axis, g);
      Eigen::ArrayXd ref(g.count());
      for (Eigen::Index k = 0; k < g.count(); ++k) {
        const double x = g.node(k);
        ref(k) = std::exp(-x * x / 50) * (1 - std::cos((orient == 0 ? 0.0 : phi) + x * t0));
      }
      worst = std::max(worst, (s.values / s.values.maxCoeff() - ref / ref.maxCoeff()).abs().maxCoeff());
    }
  }
  return {worst <= 0.01, "max deviation " + fmt(worst) + " of peak"};
}

Outcome criterion7() {
  const std::vector<std::array<double, 2>> rows{{0.1, 5}, {5, 0.1}, {1, 5}};
  const std::vector<double> t0s{1, 1.5, 2, 2.5, 3};
  bool monotone = true;
  double spacing_err = 0.0;
  std::string counts;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const SourceModel m = SourceModel::pulsed(rows[r][0], rows[r][1]);
    int last_sig = 0, last_dom = 0;
    for (double t0 : t0s) {
      const InterferometerConfig cfg(t0, 0.0, 0.0);
      const CombReport sig = comb_report(m, cfg, MarginalAxis::Signal);
      const CombReport dom = comb_report(m, cfg, dominant_axis(m));
      monotone = monotone && sig.dimensionality >= last_sig && dom.dimensionality >= last_dom;
      last_sig = sig.dimensionality;
      last_dom = dom.dimensionality;
      counts += std::to_string(sig.dimensionality) + "/" + std::to_string(dom.dimensionality) + " ";
      // Spacing check in the perfect regimes where sigma * tau0 >= 10.
      if (r < 2 && 5.0 * t0 >= 10.0) {
        spacing_err = std::max(spacing_err, std::abs(dom.spacing * t0 / (2 * kPi) - 1));
      }
    }
    counts += r + 1 < rows.size() ? "| " : "";
  }

  double dip_err = 0.0;
  double worst_step_ratio = 0.0;
  int interferograms = 0;
  for (const auto& info : list_presets()) {
    const Scenario s = preset(info.name);
    if (s.computation != Computation::Interferogram) continue;
    const Grid1D delays = Grid1D::linspace(s.tau_min, s.tau_max, s.tau_points, AxisLabel::Delay);
    for (double phi : s.phis.empty() ? std::vector<double>{s.phi} : s.phis) {
      const Interferogram ig = scan(s.model(), InterferometerConfig(s.tau0, phi, 0.0), delays, s.method);
      const double err = std::abs(characterize_from_dips(ig).tau0_estimate.value() - s.tau0);
      dip_err = std::max(dip_err, err);
      worst_step_ratio = std::max(worst_step_ratio, err / delays.step());
      ++interferograms;
    }
  }
  const bool pass = monotone && spacing_err <= 0.02 && worst_step_ratio <= 1.0 && interferograms > 0;
  return {pass, "teeth " + counts + (monotone ? "non-decreasing" : "NOT monotone") + ", spacing error " +
                    fmt(100 * spacing_err) + "%, dip read-back error " + fmt(dip_err) + " ps over " +
                    std::to_string(interferograms) + " interferograms"};
}

Outcome criterion8() {
  const auto t = Clock::now();
  constexpr int kCases = 250;
  int failures = 0;
  for (int n = 0; n < kCases; ++n) {
    const double sp = oracle::log_uniform(0.05, 20), sm = oracle::log_uniform(0.2, 20);
    const double t0 = oracle::uniform(0, 5), phi = oracle::uniform(0, 2 * kPi);
    const double tau = oracle::uniform(-8, 8);
    const double p = oracle::uniform(-2 * sp, 2 * sp), q = oracle::uniform(-2 * sm, 2 * sm);
    const SourceModel m = SourceModel::pulsed(sp, sm);
    const InterferometerConfig cfg(t0, phi, tau);

    const double v = cpd_modified(m, cfg, Detuning(p), Detuning(q));
    if (!(v >= 0.0)) ++failures;
    if (std::abs(v - cpd_modified(m, cfg, Detuning(p), Detuning(-q))) > 1e-12 * std::max(v, 1e-300)) ++failures;
    if (std::abs(rate_modified_pulsed(m, cfg) - rate_modified_pulsed(m, cfg.with_tau(-tau))) > 1e-14) ++failures;
    const InterferometerConfig far = cfg.with_tau(t0 + 60.0 / sm);
    if (std::abs(rate_modified_pulsed(m, far) - (1 + dip_coefficients(m, far).a)) > 1e-12) ++failures;
  }

  // Parseval for the numerical temporal transform.
  for (int n = 0; n < kCases; ++n) {
    const double sp = oracle::log_uniform(0.5, 2), sm = oracle::log_uniform(0.5, 2);
    auto f = [&](double ws, double wi) {
      const double a = ws + wi, b = ws - wi;
      return std::exp(-a * a / (4 * sp * sp) - b * b / (4 * sm * sm));
    };
    const Grid1D w = Grid1D::centered(24, 128, AxisLabel::SignalDetuning);
    const Grid2D fg{w, Grid1D(w.start(), w.step(), w.count(), AxisLabel::IdlerDetuning)};
    const SampledAmplitude a = temporal_amplitude_numeric(f, fg);
    double lhs = 0.0, rhs = 0.0;
    for (Eigen::Index r = 0; r < w.count(); ++r) {
      for (Eigen::Index c = 0; c < w.count(); ++c) {
        lhs += std::norm(a.values(r, c));
        rhs += std::pow(f(w.node(r), w.node(c)), 2);
      }
    }
    lhs *= a.grid.rows.step() * a.grid.cols.step();
    rhs *= w.step() * w.step();
    if (std::abs(lhs - rhs) > 1e-9 * rhs) ++failures;
  }
  const double elapsed = seconds_since(t);
  return {failures == 0 && elapsed < 60.0,
          std::to_string(failures) + " failures over " + std::to_string(2 * kCases) + " randomized cases, runtime " +
              fmt(elapsed) + " s"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"fig1b interferogram", criterion1},      {"three-route equivalence", criterion2},
      {"zero-line placement", criterion3},      {"direction selectivity", criterion4},
      {"Fourier-conjugate structure", criterion5}, {"one-dimensional comb limits", criterion6},
      {"comb monotonicity and read-back", criterion7}, {"property suites", criterion8},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o{false, ""};
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s criterion %zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
