#pragma once

// Temporal coincidence-rate curves R(tau) for the modified HOM interferometer.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "modhom/model.hpp"

namespace modhom {

/// Normalized real Fourier transform g(tau) = Re[G(tau) / G(0)] of the
/// Gaussian envelope |f|^2 = exp(-Omega^2 / 2 sigma^2): exp(-sigma^2 tau^2 / 2).
double g_fourier(double sigma, Delay tau);

/// Re[G(tau) / G(0)] for an arbitrary real spectrum F sampled on `omega`,
/// by trapezoid quadrature of F(Omega) cos(Omega tau).
double g_fourier_numeric(const std::function<double(double)>& spectrum, Delay tau,
                         const Grid1D& omega);

/// Middle-feature coefficients a = cos(phi) g+(tau0) g-(tau0), b = cos(phi) g+(tau0).
struct DipCoefficients {
  double a;
  double b;
};

DipCoefficients dip_coefficients(const SourceModel& model, const InterferometerConfig& config);

/// Closed-form normalized rate, pulsed pump:
///   1 + a - b g-(tau) - g-(tau + tau0)/2 - g-(tau - tau0)/2.
double rate_modified_pulsed(const SourceModel& model, const InterferometerConfig& config);

/// Closed-form normalized rate, CW pump:
///   1 - cos(phi) g(2 tau) - g(2(tau + tau0))/2 - g(2(tau - tau0))/2.
double rate_modified_cw(const SourceModel& model, const InterferometerConfig& config);

/// Dispatches on the pump regime.
double rate_closed_form(const SourceModel& model, const InterferometerConfig& config);

/// Analytic normalization 4 * integral |f|^2: over (Omega+, Omega-) for a pulsed
/// pump (8 pi sigma+ sigma-), over Omega for CW (4 sigma- sqrt(pi/2)).
double baseline_integral(const SourceModel& model);

/// Trapezoid quadrature settings. Node counts left unset are chosen
/// automatically to satisfy the resolution guards.
struct QuadratureSpec {
  double span_sigmas = 8.0;
  std::optional<Eigen::Index> nodes_plus;
  std::optional<Eigen::Index> nodes_minus;
};

/// Frequency-domain route: trapezoid integral of the CPD over (Omega+, Omega-)
/// (or over Omega for CW) divided by baseline_integral(model).
/// Throws ResolutionError if span < 5 sigma or step > 1 / (4 (|tau| + tau0)).
double rate_modified_quadrature(const SourceModel& model, const InterferometerConfig& config,
                                const QuadratureSpec& quad = {});

/// Quadrature axis that satisfies the guards for one integration direction.
Grid1D quadrature_axis(double sigma, double oscillation, const QuadratureSpec& quad,
                       std::optional<Eigen::Index> nodes, AxisLabel label);

enum class RateMethod { ClosedForm, Quadrature };

struct Interferogram {
  Grid1D delays;
  Eigen::ArrayXd values;
  /// Large-delay level 1 + a (1 for the CW closed form).
  double baseline;
  SourceModel model;
  InterferometerConfig config;
  RateMethod method;
  std::vector<std::string> warnings;
};

/// Evaluate the rate at every node of `delays`; config.tau is ignored.
Interferogram scan(const SourceModel& model, const InterferometerConfig& config,
                   const Grid1D& delays, RateMethod method = RateMethod::ClosedForm);

/// Advisory messages for parameter combinations outside the intended regime
/// (currently tau0 <= coherence time).
std::vector<std::string> validity_warnings(const SourceModel& model,
                                           const InterferometerConfig& config);

}  // namespace modhom
