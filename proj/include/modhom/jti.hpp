#pragma once

// Time-domain route: four shifted temporal biphoton amplitudes, the joint
// temporal intensity (JTI), and its integral as a coincidence rate.
//
// Conventions. The temporal amplitude is the unitary 2-D transform
//   A(t_s, t_i) = (1/2pi) \int\int f(Omega_s, Omega_i) e^{-i(Omega_s t_s + Omega_i t_i)} dOmega_s dOmega_i,
// so a spectral factor e^{-i Omega_s d} shifts A to A(t_s + d, t_i), and
// \int\int |A|^2 dt_s dt_i = \int\int |f|^2 dOmega_s dOmega_i.
// The carrier phase e^{-i phi} rides on the two amplitudes shifted by 2 tau0
// (A3 and A4), exactly as in the frequency-domain kernel.

#include <array>
#include <complex>
#include <functional>

#include <Eigen/Core>

#include "modhom/maps.hpp"
#include "modhom/model.hpp"

namespace modhom {

/// Closed-form transform of the Gaussian TPSA:
///   A = sigma+ sigma- exp(-sigma+^2 (t_s + t_i)^2 / 4 - sigma-^2 (t_s - t_i)^2 / 4).
class TemporalAmplitude {
 public:
  TemporalAmplitude(double sigma_plus, double sigma_minus)
      : sigma_plus_(require_positive(sigma_plus, "sigma_plus")),
        sigma_minus_(require_positive(sigma_minus, "sigma_minus")) {}

  double operator()(double t_s, double t_i) const {
    const double tp = t_s + t_i;
    const double tm = t_s - t_i;
    return sigma_plus_ * sigma_minus_ *
           std::exp(-0.25 * (sigma_plus_ * sigma_plus_ * tp * tp + sigma_minus_ * sigma_minus_ * tm * tm));
  }

  double sigma_plus() const { return sigma_plus_; }
  double sigma_minus() const { return sigma_minus_; }

 private:
  double sigma_plus_;
  double sigma_minus_;
};

TemporalAmplitude temporal_amplitude(const SourceModel& model);

/// Sampled complex amplitude on a (t_s, t_i) grid.
struct SampledAmplitude {
  Grid2D grid;  // rows t_s, cols t_i (both labelled Delay)
  Eigen::Array<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> values;
};

/// Numerical 2-D transform of any TPSA f(Omega_s, Omega_i) sampled on a
/// (signal, idler) grid, via FFT. The time axes are the conjugate axes of the
/// frequency axes. Throws ResolutionError if |f| on the grid boundary exceeds
/// 1e-10 of its peak.
SampledAmplitude temporal_amplitude_numeric(const std::function<double(double, double)>& tpsa,
                                            const Grid2D& frequency_grid);

/// A1..A4 at (t_s, t_i) with carrier phases attached; Psi = A1 - A2 + A3 - A4.
std::array<std::complex<double>, 4> jti_amplitudes(const SourceModel& model,
                                                   const InterferometerConfig& config, double t_s,
                                                   double t_i);

/// |A1 - A2 + A3 - A4|^2 by direct complex arithmetic.
double jti(const SourceModel& model, const InterferometerConfig& config, double t_s, double t_i);

/// The 16-term expansion, summed in four groups:
///   [0] |A1|^2 + |A2|^2 + |A3|^2 + |A4|^2        (baseline)
///   [1] A1*A3 + A1A3* + A2*A4 + A2A4*            (a term)
///   [2] -(A1*A4 + A1A4* + A2*A3 + A2A3*)         (b g-(tau) term)
///   [3] -(A1*A2 + A1A2* + A3*A4 + A3A4*)         (side dips)
std::array<double, 4> jti_term_groups(const SourceModel& model, const InterferometerConfig& config,
                                      double t_s, double t_i);

/// Sum of jti_term_groups.
double jti_expanded(const SourceModel& model, const InterferometerConfig& config, double t_s,
                    double t_i);

/// Square (t_s, t_i) window covering every amplitude center with a margin of
/// 6 / min(sigma+, sigma-) and a step of 0.5 / max(sigma+, sigma-); at least
/// 512 nodes per axis.
Grid2D default_time_grid(const SourceModel& model, const InterferometerConfig& config);

/// Integrated term groups divided by the normalization 8 pi sigma+ sigma-
/// (the sum/difference-coordinate measure; a factor 2 converts from
/// dt_s dt_i). Their sum is the normalized rate. Throws WindowError when the
/// outermost ring of cells holds more than 1e-8 of the total.
std::array<double, 4> jti_group_rates(const SourceModel& model, const InterferometerConfig& config,
                                      const Grid2D& time_grid);

/// Time-domain normalized rate at config.tau.
double rate_from_jti(const SourceModel& model, const InterferometerConfig& config,
                     const Grid2D& time_grid);
double rate_from_jti(const SourceModel& model, const InterferometerConfig& config);

}  // namespace modhom
