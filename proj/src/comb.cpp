#include "modhom/comb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "modhom/error.hpp"
#include "modhom/kernels.hpp"

namespace modhom {

namespace {

constexpr double kPi = std::numbers::pi;

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Offset (in samples) of the vertex of the parabola through y[i-1], y[i], y[i+1].
double vertex_offset(double left, double mid, double right) {
  const double denom = left - 2.0 * mid + right;
  if (denom == 0.0) return 0.0;
  return std::clamp(0.5 * (left - right) / denom, -0.5, 0.5);
}

double half_crossing(const Eigen::ArrayXd& y, Eigen::Index peak, double half, int dir) {
  Eigen::Index j = peak;
  while (true) {
    const Eigen::Index next = j + dir;
    if (next < 0 || next >= y.size()) return static_cast<double>(j);
    if (y(next) <= half) {
      const double frac = (y(j) - half) / (y(j) - y(next));
      return static_cast<double>(j) + dir * frac;
    }
    if (y(next) > y(j)) return static_cast<double>(j);  // hit a neighbouring trough
    j = next;
  }
}

// Node on the integration axis for the complementary direction.
Grid1D integration_axis(double sigma, double oscillation, double extra_half_span,
                        AxisLabel label) {
  const double half = 8.0 * sigma + extra_half_span;
  double step = 0.5 * sigma;
  if (oscillation > 0.0) step = std::min(step, 1.0 / (4.0 * oscillation));
  auto n = static_cast<Eigen::Index>(std::ceil(2.0 * half / step)) + 1;
  if (n % 2 == 0) ++n;
  return Grid1D::centered(half, n, label);
}

void require_axis(const Grid1D& grid, MarginalAxis which) {
  if (grid.label() != axis_label(which)) {
    throw InvalidInput("marginal grid must be labelled " + to_string(axis_label(which)));
  }
}

// Projection of a zero-delay map kind (ModifiedHOM or JSI) onto `which`.
Spectrum project_zero_delay(const SourceModel& model, const InterferometerConfig& config,
                            MarginalAxis which, const Grid1D& grid, MapKind kind) {
  require_axis(grid, which);
  const double t0 = config.tau0();

  if (model.is_cw()) {
    Eigen::ArrayXd values(grid.count());
    for (Eigen::Index k = 0; k < grid.count(); ++k) {
      const double x = grid.node(k);
      double omega = 0.0;
      switch (which) {
        case MarginalAxis::Signal: omega = x; break;
        case MarginalAxis::Idler: omega = -x; break;
        case MarginalAxis::DiffAxis: omega = 0.5 * x; break;
        case MarginalAxis::SumAxis:
          throw ContractViolation("a CW source has no sum-frequency spread");
      }
      values(k) = kind == MapKind::JSI ? model.cw_intensity(omega)
                                       : cpd_cw(model, config, Detuning(omega));
    }
    return {grid, std::move(values)};
  }

  const double sp = model.sigma_plus();
  const double sm = model.sigma_minus();
  const double extent = std::max(std::abs(grid.start()), std::abs(grid.back()));
  Grid2D map_grid{grid, grid};
  ProjectionAxis onto = ProjectionAxis::Signal;
  switch (which) {
    case MarginalAxis::SumAxis:
      map_grid = {grid, integration_axis(sm, t0, 0.0, AxisLabel::DifferenceDetuning)};
      onto = ProjectionAxis::Sum;
      break;
    case MarginalAxis::DiffAxis:
      map_grid = {integration_axis(sp, t0, 0.0, AxisLabel::SumDetuning), grid};
      onto = ProjectionAxis::Difference;
      break;
    case MarginalAxis::Signal:
      map_grid = {grid, integration_axis(std::min(sp, sm), 2.0 * t0,
                                         extent + 8.0 * std::max(sp, sm) - 8.0 * std::min(sp, sm),
                                         AxisLabel::IdlerDetuning)};
      onto = ProjectionAxis::Signal;
      break;
    case MarginalAxis::Idler:
      map_grid = {integration_axis(std::min(sp, sm), 2.0 * t0,
                                   extent + 8.0 * std::max(sp, sm) - 8.0 * std::min(sp, sm),
                                   AxisLabel::SignalDetuning),
                  grid};
      onto = ProjectionAxis::Idler;
      break;
  }
  const SpectralMap map = kind == MapKind::JSI ? jsi_map(model, map_grid)
                                               : spectral_map(model, config, map_grid, kind);
  return project(map, onto);
}

}  // namespace

AxisLabel axis_label(MarginalAxis which) {
  switch (which) {
    case MarginalAxis::Signal: return AxisLabel::SignalDetuning;
    case MarginalAxis::Idler: return AxisLabel::IdlerDetuning;
    case MarginalAxis::SumAxis: return AxisLabel::SumDetuning;
    case MarginalAxis::DiffAxis: return AxisLabel::DifferenceDetuning;
  }
  return AxisLabel::SignalDetuning;
}

double axis_sigma(const SourceModel& model, MarginalAxis which) {
  const double sp = model.sigma_plus();
  const double sm = model.sigma_minus();
  switch (which) {
    case MarginalAxis::SumAxis:
      if (model.is_cw()) throw ContractViolation("a CW source has no sum-frequency spread");
      return sp;
    case MarginalAxis::DiffAxis:
      return sm;
    case MarginalAxis::Signal:
    case MarginalAxis::Idler:
      return model.is_cw() ? 0.5 * sm : 0.5 * std::hypot(sp, sm);
  }
  return sm;
}

MarginalAxis dominant_axis(const SourceModel& model) {
  if (model.is_cw() || model.sigma_plus() <= model.sigma_minus()) return MarginalAxis::DiffAxis;
  return MarginalAxis::SumAxis;
}

Grid1D marginal_grid(const SourceModel& model, const InterferometerConfig& config,
                     MarginalAxis which, double window_sigmas) {
  require_positive(window_sigmas, "window_sigmas");
  const double half = window_sigmas * axis_sigma(model, which);
  const bool single_photon = which == MarginalAxis::Signal || which == MarginalAxis::Idler;
  Eigen::Index count = 401;
  if (config.tau0() > 0.0) {
    const double period = (single_photon ? kPi : 2.0 * kPi) / config.tau0();
    count = std::max<Eigen::Index>(
        count, static_cast<Eigen::Index>(std::ceil(2.0 * half / (period / 16.0))) + 1);
  }
  if (count % 2 == 0) ++count;
  return Grid1D::centered(half, count, axis_label(which));
}

Spectrum marginal_spectrum(const SourceModel& model, const InterferometerConfig& config,
                           MarginalAxis which, const Grid1D& grid) {
  if (config.tau() != 0.0) throw ContractViolation("marginal spectra are defined at tau = 0");
  return project_zero_delay(model, config, which, grid, MapKind::ModifiedHOM);
}

Spectrum envelope_marginal(const SourceModel& model, MarginalAxis which, const Grid1D& grid) {
  return project_zero_delay(model, InterferometerConfig(0.0, 0.0, 0.0), which, grid, MapKind::JSI);
}

CombReport count_teeth(const Spectrum& spectrum, double threshold_fraction,
                       const Spectrum* envelope) {
  if (!(threshold_fraction > 0.0 && threshold_fraction < 1.0)) {
    throw InvalidInput("threshold_fraction must lie in (0, 1)");
  }
  const Eigen::ArrayXd& y = spectrum.values;
  const Grid1D& axis = spectrum.axis;
  CombReport report;
  const double peak = y.maxCoeff();
  if (!(peak > 0.0)) return report;
  // A spectrum at round-off level relative to its envelope has no teeth.
  if (envelope != nullptr && peak <= 1e-12 * envelope->values.maxCoeff()) return report;

  std::vector<Eigen::Index> maxima;
  for (Eigen::Index i = 1; i + 1 < y.size(); ++i) {
    if (y(i) > y(i - 1) && y(i) > y(i + 1) && y(i) >= threshold_fraction * peak) {
      maxima.push_back(i);
    }
  }

  if (maxima.size() >= 2) {
    std::vector<double> gaps;
    for (std::size_t k = 1; k < maxima.size(); ++k) {
      gaps.push_back(static_cast<double>(maxima[k] - maxima[k - 1]));
    }
    if (median(gaps) < 8.0) {
      throw ResolutionError("spectrum has fewer than 8 samples per comb period");
    }
  }

  for (const Eigen::Index i : maxima) {
    const double d = vertex_offset(y(i - 1), y(i), y(i + 1));
    const double height = y(i) - 0.25 * (y(i - 1) - y(i + 1)) * d;
    const double left = half_crossing(y, i, 0.5 * height, -1);
    const double right = half_crossing(y, i, 0.5 * height, +1);
    report.teeth.push_back({axis.node(i) + d * axis.step(), height, (right - left) * axis.step()});
  }
  report.dimensionality = static_cast<int>(report.teeth.size());

  if (report.teeth.size() >= 2) {
    std::vector<double> gaps;
    for (std::size_t k = 1; k < report.teeth.size(); ++k) {
      gaps.push_back(report.teeth[k].center - report.teeth[k - 1].center);
    }
    report.spacing = median(gaps);
  }

  Eigen::ArrayXd normalized = y;
  if (envelope != nullptr) {
    if (envelope->values.size() != y.size()) throw InvalidInput("envelope size mismatch");
    const double env_peak = envelope->values.maxCoeff();
    std::vector<double> kept;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      if (envelope->values(i) >= 1e-6 * env_peak) kept.push_back(y(i) / envelope->values(i));
    }
    normalized = Eigen::Map<const Eigen::ArrayXd>(kept.data(), static_cast<Eigen::Index>(kept.size()));
  }
  const double hi = normalized.maxCoeff();
  const double lo = std::max(normalized.minCoeff(), 0.0);
  report.visibility = hi + lo > 0.0 ? std::clamp((hi - lo) / (hi + lo), 0.0, 1.0) : 0.0;
  return report;
}

CombReport comb_report(const SourceModel& model, const InterferometerConfig& config,
                       MarginalAxis which, double window_sigmas, double threshold_fraction) {
  const Grid1D grid = marginal_grid(model, config, which, window_sigmas);
  const Spectrum spectrum = marginal_spectrum(model, config, which, grid);
  const Spectrum envelope = envelope_marginal(model, which, grid);
  return count_teeth(spectrum, threshold_fraction, &envelope);
}

Delay design_tau0(const SourceModel& model, int target_dimension, double window_sigmas,
                  double phi) {
  if (target_dimension < 2) throw InvalidInput("target dimension must be >= 2");
  if (!model.is_cw()) {
    const double ratio = model.sigma_plus() / model.sigma_minus();
    if (ratio > 0.1 && ratio < 10.0) {
      throw ContractViolation("design_tau0 needs sigma+/sigma- <= 0.1 or >= 10");
    }
  }
  const MarginalAxis axis = dominant_axis(model);
  auto teeth_at = [&](double tau0) {
    return comb_report(model, InterferometerConfig(tau0, phi, 0.0), axis, window_sigmas, 0.1)
        .dimensionality;
  };

  constexpr double kMin = 0.01;
  constexpr double kMax = 100.0;
  if (teeth_at(kMin) == target_dimension) return Delay(kMin);

  // Geometric bracket, then bisection on the first tau0 reaching the target.
  double lo = kMin;
  double hi = kMin;
  while (true) {
    hi = std::min(lo * 1.05, kMax);
    if (teeth_at(hi) >= target_dimension) break;
    if (hi >= kMax) throw NotFound("target dimension not reachable for tau0 <= 100 ps");
    lo = hi;
  }
  while (hi - lo > 1e-5) {
    const double mid = 0.5 * (lo + hi);
    if (teeth_at(mid) >= target_dimension) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  if (teeth_at(hi) != target_dimension) {
    throw NotFound("tooth count jumps past the target dimension");
  }
  return Delay(hi);
}

DipCharacterization characterize_from_dips(const Interferogram& interferogram) {
  const Eigen::ArrayXd& y = interferogram.values;
  const Grid1D& axis = interferogram.delays;
  const double depth_floor = 0.05 * interferogram.baseline;

  Eigen::Index left = -1;
  Eigen::Index right = -1;
  for (Eigen::Index i = 1; i + 1 < y.size(); ++i) {
    if (!(y(i) < y(i - 1) && y(i) <= y(i + 1)) && !(y(i) <= y(i - 1) && y(i) < y(i + 1))) continue;
    if (interferogram.baseline - y(i) < depth_floor) continue;
    const double t = axis.node(i);
    if (std::abs(t) < 0.5 * axis.step()) continue;  // the middle feature
    if (t < 0.0 && (left < 0 || y(i) < y(left))) left = i;
    if (t > 0.0 && (right < 0 || y(i) < y(right))) right = i;
  }
  if (left < 0 || right < 0) throw NotFound("interferogram does not show two side dips");

  auto refine = [&](Eigen::Index i) {
    return axis.node(i) + vertex_offset(y(i - 1), y(i), y(i + 1)) * axis.step();
  };
  const double tl = refine(left);
  const double tr = refine(right);
  const double tau0 = 0.5 * (tr - tl);

  const InterferometerConfig at(tau0, interferogram.config.phi(), 0.0);
  const int dim = comb_report(interferogram.model, at, dominant_axis(interferogram.model))
                      .dimensionality;
  return {Delay(tau0), dim, tl, tr};
}

}  // namespace modhom
