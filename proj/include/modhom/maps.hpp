#pragma once

// Spectrally resolved interference maps, projections and conjugate-time maps.

#include <string>

#include <Eigen/Core>

#include "modhom/model.hpp"

namespace modhom {

using RowMajorArrayXXd = Eigen::Array<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class MapKind { JSI, ModifiedHOM, StandardHOM, NOON, FreqDelay, ConjugateTime };

std::string to_string(MapKind kind);
MapKind map_kind_from_string(const std::string& name);

/// Values on a Grid2D; values(r, c) sits at (grid.rows.node(r), grid.cols.node(c)).
struct SpectralMap {
  MapKind kind;
  Grid2D grid;
  RowMajorArrayXXd values;
};

/// A 1-D array over a labelled axis (marginals, projections, map slices).
struct Spectrum {
  Grid1D axis;
  Eigen::ArrayXd values;
};

/// |f|^2 over a (signal, idler) or (sum, difference) grid.
SpectralMap jsi_map(const SourceModel& model, const Grid2D& grid);

/// CPD map of the requested kind over a (signal, idler) or (sum, difference)
/// grid. ModifiedHOM uses (tau0, phi, tau) from config; StandardHOM uses
/// config.tau; NOON uses config.tau as the delay and config.phi as phi_noon.
SpectralMap spectral_map(const SourceModel& model, const InterferometerConfig& config,
                         const Grid2D& grid, MapKind kind);

/// CW frequency-delay map r_c(tau, Omega): rows are delays, columns detunings.
SpectralMap freq_delay_map(const SourceModel& model, const Grid1D& tau_grid,
                           const Grid1D& omega_grid, Delay tau0, double phi);

/// For every delay row of a FreqDelay map, |r~(tau, T)| with
///   r~(T) = (1/sqrt(2 pi)) sum_k r(Omega_k) exp(i Omega_k T) dOmega
/// on T_m = 2 pi m / (N dOmega), m = -N/2 .. N/2 - 1 (ascending).
SpectralMap conjugate_time_map(const SpectralMap& freq_delay);

/// The conjugate-time axis produced for an Omega grid.
Grid1D conjugate_axis(const Grid1D& omega);

/// Centered n-node Omega grid whose conjugate axis contains T = period
/// exactly: n dOmega = 2 pi m / period with the smallest integer m giving a
/// half-span >= min_half_span. Throws ResolutionError if m >= n / 2.
Grid1D commensurate_omega_grid(double period, double min_half_span, Eigen::Index n);

enum class ProjectionAxis { Signal, Idler, Sum, Difference, Omega, Tau, ConjugateTime };

/// Trapezoid-integrate the map over the complementary axis, leaving a
/// function of `onto`. Throws InvalidInput if the map has no such axis.
Spectrum project(const SpectralMap& map, ProjectionAxis onto);

/// Row or column slice nearest to the given coordinate.
Spectrum row_slice(const SpectralMap& map, double row_coordinate);
Spectrum column_slice(const SpectralMap& map, double column_coordinate);

}  // namespace modhom
