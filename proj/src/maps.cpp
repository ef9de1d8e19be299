#include "modhom/maps.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include <unsupported/Eigen/FFT>

#include "modhom/error.hpp"
#include "modhom/kernels.hpp"

namespace modhom {

namespace {

enum class Frame { SignalIdler, SumDifference };

Frame frame_of(const Grid2D& grid) {
  const AxisLabel r = grid.rows.label();
  const AxisLabel c = grid.cols.label();
  if (r == AxisLabel::SignalDetuning && c == AxisLabel::IdlerDetuning) return Frame::SignalIdler;
  if (r == AxisLabel::SumDetuning && c == AxisLabel::DifferenceDetuning) {
    return Frame::SumDifference;
  }
  throw InvalidInput("spectral grid must be (omega_s, omega_i) or (omega_plus, omega_minus), got (" +
                     to_string(r) + ", " + to_string(c) + ")");
}

// Omega+ and Omega- at every node of a spectral grid.
void sum_difference_nodes(const Grid2D& grid, RowMajorArrayXXd& plus, RowMajorArrayXXd& minus) {
  const Eigen::ArrayXd r = grid.rows.nodes();
  const Eigen::ArrayXd c = grid.cols.nodes();
  const Eigen::Index nr = r.size();
  const Eigen::Index nc = c.size();
  const RowMajorArrayXXd rr = r.replicate(1, nc);
  const RowMajorArrayXXd cc = c.transpose().replicate(nr, 1);
  if (frame_of(grid) == Frame::SignalIdler) {
    plus = rr + cc;
    minus = rr - cc;
  } else {
    plus = rr;
    minus = cc;
  }
}

}  // namespace

std::string to_string(MapKind kind) {
  switch (kind) {
    case MapKind::JSI: return "JSI";
    case MapKind::ModifiedHOM: return "ModifiedHOM";
    case MapKind::StandardHOM: return "StandardHOM";
    case MapKind::NOON: return "NOON";
    case MapKind::FreqDelay: return "FreqDelay";
    case MapKind::ConjugateTime: return "ConjugateTime";
  }
  return "unknown";
}

MapKind map_kind_from_string(const std::string& name) {
  for (auto kind : {MapKind::JSI, MapKind::ModifiedHOM, MapKind::StandardHOM, MapKind::NOON,
                    MapKind::FreqDelay, MapKind::ConjugateTime}) {
    if (to_string(kind) == name) return kind;
  }
  throw InvalidInput("unknown map kind: " + name);
}

SpectralMap jsi_map(const SourceModel& model, const Grid2D& grid) {
  RowMajorArrayXXd plus, minus;
  sum_difference_nodes(grid, plus, minus);
  return {MapKind::JSI, grid, model.tpsa().intensity(plus, minus)};
}

SpectralMap spectral_map(const SourceModel& model, const InterferometerConfig& config,
                         const Grid2D& grid, MapKind kind) {
  RowMajorArrayXXd plus, minus;
  sum_difference_nodes(grid, plus, minus);
  switch (kind) {
    case MapKind::JSI:
      return {kind, grid, model.tpsa().intensity(plus, minus)};
    case MapKind::ModifiedHOM:
      return {kind, grid, cpd_modified(model, config, plus, minus)};
    case MapKind::StandardHOM:
      return {kind, grid, cpd_standard_hom(model, Delay(config.tau()), plus, minus)};
    case MapKind::NOON:
      return {kind, grid, cpd_noon(model, Delay(config.tau()), config.phi(), plus, minus)};
    case MapKind::FreqDelay:
    case MapKind::ConjugateTime:
      break;
  }
  throw InvalidInput("spectral_map does not produce " + to_string(kind) + " maps");
}

SpectralMap freq_delay_map(const SourceModel& model, const Grid1D& tau_grid,
                           const Grid1D& omega_grid, Delay tau0, double phi) {
  if (!model.is_cw()) throw ContractViolation("freq_delay_map requires a CW-pumped source");
  if (tau_grid.label() != AxisLabel::Delay || omega_grid.label() != AxisLabel::Omega) {
    throw InvalidInput("freq_delay_map expects (tau, omega) axes");
  }
  RowMajorArrayXXd values(tau_grid.count(), omega_grid.count());
  for (Eigen::Index r = 0; r < tau_grid.count(); ++r) {
    const InterferometerConfig config(tau0, phi, Delay(tau_grid.node(r)));
    for (Eigen::Index c = 0; c < omega_grid.count(); ++c) {
      values(r, c) = cpd_cw(model, config, Detuning(omega_grid.node(c)));
    }
  }
  return {MapKind::FreqDelay, {tau_grid, omega_grid}, std::move(values)};
}

Grid1D conjugate_axis(const Grid1D& omega) {
  const Eigen::Index n = omega.count();
  const double dt = 2.0 * std::numbers::pi / (static_cast<double>(n) * omega.step());
  return {-static_cast<double>(n / 2) * dt, dt, n, AxisLabel::ConjugateTime};
}

Grid1D commensurate_omega_grid(double period, double min_half_span, Eigen::Index n) {
  require_positive(period, "period");
  require_positive(min_half_span, "min_half_span");
  if (n < 4) throw InvalidInput("commensurate_omega_grid needs at least 4 nodes");
  const auto m = static_cast<Eigen::Index>(std::ceil(min_half_span * period / std::numbers::pi));
  if (m >= n / 2) {
    throw ResolutionError("too few Omega nodes to place T = " + std::to_string(period) +
                          " on the conjugate axis");
  }
  const double width = 2.0 * std::numbers::pi * static_cast<double>(m) / period;
  const double step = width / static_cast<double>(n);
  return {-0.5 * width, step, n, AxisLabel::Omega};
}

SpectralMap conjugate_time_map(const SpectralMap& freq_delay) {
  if (freq_delay.kind != MapKind::FreqDelay) {
    throw InvalidInput("conjugate_time_map expects a FreqDelay map");
  }
  const Grid1D& omega = freq_delay.grid.cols;
  if (omega.label() != AxisLabel::Omega) throw InvalidInput("columns must be a uniform omega axis");

  const Eigen::Index n = omega.count();
  const Grid1D t_axis = conjugate_axis(omega);
  const double scale = omega.step() / std::sqrt(2.0 * std::numbers::pi);

  Eigen::FFT<double> fft;
  std::vector<double> row(static_cast<std::size_t>(n));
  std::vector<std::complex<double>> spectrum;
  RowMajorArrayXXd out(freq_delay.values.rows(), n);
  for (Eigen::Index r = 0; r < freq_delay.values.rows(); ++r) {
    for (Eigen::Index k = 0; k < n; ++k) row[static_cast<std::size_t>(k)] = freq_delay.values(r, k);
    fft.fwd(spectrum, row);
    // The forward FFT uses exp(-i...); for real input the exp(+i...) sum is its
    // conjugate, which leaves magnitudes unchanged. The start-offset phase
    // exp(i Omega_0 T) is likewise unit-modulus.
    for (Eigen::Index j = 0; j < n; ++j) {
      const Eigen::Index m = j - n / 2;              // T index, ascending
      const Eigen::Index bin = ((m % n) + n) % n;    // DFT bin holding that T
      out(r, j) = scale * std::abs(spectrum[static_cast<std::size_t>(bin)]);
    }
  }
  return {MapKind::ConjugateTime, {freq_delay.grid.rows, t_axis}, std::move(out)};
}

Spectrum project(const SpectralMap& map, ProjectionAxis onto) {
  auto label_of = [](ProjectionAxis a) {
    switch (a) {
      case ProjectionAxis::Signal: return AxisLabel::SignalDetuning;
      case ProjectionAxis::Idler: return AxisLabel::IdlerDetuning;
      case ProjectionAxis::Sum: return AxisLabel::SumDetuning;
      case ProjectionAxis::Difference: return AxisLabel::DifferenceDetuning;
      case ProjectionAxis::Omega: return AxisLabel::Omega;
      case ProjectionAxis::Tau: return AxisLabel::Delay;
      case ProjectionAxis::ConjugateTime: return AxisLabel::ConjugateTime;
    }
    return AxisLabel::Delay;
  };
  const AxisLabel want = label_of(onto);
  if (map.grid.rows.label() == want) {
    const Eigen::ArrayXd w = trapezoid_weights(map.grid.cols);
    return {map.grid.rows, (map.values.rowwise() * w.transpose()).rowwise().sum()};
  }
  if (map.grid.cols.label() == want) {
    const Eigen::ArrayXd w = trapezoid_weights(map.grid.rows);
    return {map.grid.cols, (map.values.colwise() * w).colwise().sum().transpose()};
  }
  throw InvalidInput("map has no " + to_string(want) + " axis");
}

Spectrum row_slice(const SpectralMap& map, double row_coordinate) {
  const Eigen::Index r = map.grid.rows.nearest(row_coordinate);
  return {map.grid.cols, map.values.row(r).transpose()};
}

Spectrum column_slice(const SpectralMap& map, double column_coordinate) {
  const Eigen::Index c = map.grid.cols.nearest(column_coordinate);
  return {map.grid.rows, map.values.col(c)};
}

}  // namespace modhom
