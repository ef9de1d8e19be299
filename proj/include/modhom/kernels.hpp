#pragma once

// Coincidence-probability-density (CPD) kernels.
//
// All kernels work in detuning coordinates. The optical carrier never appears
// explicitly: the global factor exp(-i omega_p (tau0 + tau) / 2) cancels in the
// modulus, and the remaining carrier dependence enters only through the phase
// phi = omega_p tau0 (modified HOM) or phi_noon = omega_p tau (N00N).

#include <cmath>
#include <complex>

#include <Eigen/Core>

#include "modhom/error.hpp"
#include "modhom/model.hpp"

namespace modhom {

/// Modified-HOM CPD from the two-amplitude modulus, in (Omega_s, Omega_i).
///
///   r = | f(i,s) (1 + e^{-i(phi + 2 Omega_i tau0)}) e^{-i Omega_s (tau0 + tau)}
///       - f(s,i) (1 + e^{-i(phi + 2 Omega_s tau0)}) e^{-i Omega_i (tau0 + tau)} |^2
///
/// Independent of the trigonometric form in cpd_modified.
inline double cpd_modified_raw(const SourceModel& model, const InterferometerConfig& config,
                               Detuning omega_s, Detuning omega_i) {
  using namespace std::complex_literals;
  const double ws = omega_s.value();
  const double wi = omega_i.value();
  const double t0 = config.tau0();
  const double t = config.tau();
  const double phi = config.phi();

  const double f_si = model.tpsa().amplitude(ws + wi, ws - wi);
  const double f_is = model.tpsa().amplitude(wi + ws, wi - ws);

  const std::complex<double> first =
      f_is * (1.0 + std::exp(-1i * (phi + 2.0 * wi * t0))) * std::exp(-1i * (ws * (t0 + t)));
  const std::complex<double> second =
      f_si * (1.0 + std::exp(-1i * (phi + 2.0 * ws * t0))) * std::exp(-1i * (wi * (t0 + t)));
  return std::norm(first - second);
}

/// Modified-HOM CPD at tau = 0, separable in Omega+ and Omega-:
///   4 |f|^2 (1 - cos(phi + Omega+ tau0)) (1 - cos(Omega- tau0)).
inline double cpd_modified_zero_delay(const SourceModel& model, const InterferometerConfig& config,
                                      Detuning omega_plus, Detuning omega_minus) {
  if (config.tau() != 0.0) {
    throw ContractViolation("cpd_modified_zero_delay requires tau = 0");
  }
  const double op = omega_plus.value();
  const double om = omega_minus.value();
  const double t0 = config.tau0();
  return 4.0 * model.tpsa().intensity(op, om) * (1.0 - std::cos(config.phi() + op * t0)) *
         (1.0 - std::cos(om * t0));
}

/// Modified-HOM CPD in sum/difference coordinates (pulsed pump).
inline double cpd_modified(const SourceModel& model, const InterferometerConfig& config,
                           Detuning omega_plus, Detuning omega_minus) {
  if (config.tau() == 0.0) return cpd_modified_zero_delay(model, config, omega_plus, omega_minus);
  const double op = omega_plus.value();
  const double om = omega_minus.value();
  const double t0 = config.tau0();
  const double t = config.tau();
  const double c = std::cos(config.phi() + op * t0);
  const double bracket = 1.0 + c * std::cos(om * t0) - c * std::cos(om * t) -
                         0.5 * std::cos(om * (t + t0)) - 0.5 * std::cos(om * (t - t0));
  // The bracket is a squared modulus in disguise; clamp round-off below zero.
  return 4.0 * model.tpsa().intensity(op, om) * std::max(bracket, 0.0);
}

/// CW-pump CPD r_c(tau, Omega) with Omega+ = 0, Omega- = 2 Omega.
inline double cpd_cw(const SourceModel& model, const InterferometerConfig& config, Detuning omega) {
  if (!model.is_cw()) throw ContractViolation("cpd_cw requires a CW-pumped source");
  const double w = omega.value();
  const double t0 = config.tau0();
  const double t = config.tau();
  const double cphi = std::cos(config.phi());
  if (t == 0.0) {
    return 4.0 * model.cw_intensity(w) * (1.0 - cphi) * (1.0 - std::cos(2.0 * w * t0));
  }
  const double bracket = 1.0 + cphi * std::cos(2.0 * w * t0) - cphi * std::cos(2.0 * w * t) -
                         0.5 * std::cos(2.0 * w * (t + t0)) - 0.5 * std::cos(2.0 * w * (t - t0));
  return 4.0 * model.cw_intensity(w) * std::max(bracket, 0.0);
}

/// Standard HOM: |f|^2 (1 - cos(Omega- tau)).
inline double cpd_standard_hom(const SourceModel& model, Delay tau, Detuning omega_s,
                               Detuning omega_i) {
  const SumDifference p = to_sum_difference({omega_s.value(), omega_i.value()});
  return model.tpsa().intensity(p.plus, p.minus) * (1.0 - std::cos(p.minus * tau.value()));
}

/// N00N: |f|^2 (1 + cos(phi_noon + Omega+ tau)), phi_noon = omega_p tau.
inline double cpd_noon(const SourceModel& model, Delay tau, double phi_noon, Detuning omega_s,
                       Detuning omega_i) {
  require_finite(phi_noon, "phi_noon");
  const SumDifference p = to_sum_difference({omega_s.value(), omega_i.value()});
  return model.tpsa().intensity(p.plus, p.minus) *
         (1.0 + std::cos(phi_noon + p.plus * tau.value()));
}

// ---------------------------------------------------------------------------
// Array forms. Each takes Omega+ and Omega- arrays of equal shape and returns
// the kernel evaluated element-wise; used for map and quadrature sweeps.

template <typename DerivedP, typename DerivedM>
typename DerivedP::PlainObject cpd_modified(const SourceModel& model,
                                            const InterferometerConfig& config,
                                            const Eigen::ArrayBase<DerivedP>& omega_plus,
                                            const Eigen::ArrayBase<DerivedM>& omega_minus) {
  if (!omega_plus.allFinite() || !omega_minus.allFinite()) {
    throw InvalidInput("detuning arrays must be finite");
  }
  const double t0 = config.tau0();
  const double t = config.tau();
  const auto envelope = model.tpsa().intensity(omega_plus, omega_minus);
  if (t == 0.0) {
    return 4.0 * envelope * (1.0 - (config.phi() + omega_plus * t0).cos()) *
           (1.0 - (omega_minus * t0).cos());
  }
  const typename DerivedP::PlainObject c = (config.phi() + omega_plus * t0).cos();
  const typename DerivedP::PlainObject bracket =
      1.0 + c * (omega_minus * t0).cos() - c * (omega_minus * t).cos() -
      0.5 * (omega_minus * (t + t0)).cos() - 0.5 * (omega_minus * (t - t0)).cos();
  return 4.0 * envelope * bracket.max(0.0);
}

template <typename DerivedP, typename DerivedM>
typename DerivedP::PlainObject cpd_standard_hom(const SourceModel& model, Delay tau,
                                                const Eigen::ArrayBase<DerivedP>& omega_plus,
                                                const Eigen::ArrayBase<DerivedM>& omega_minus) {
  return model.tpsa().intensity(omega_plus, omega_minus) *
         (1.0 - (omega_minus * tau.value()).cos());
}

template <typename DerivedP, typename DerivedM>
typename DerivedP::PlainObject cpd_noon(const SourceModel& model, Delay tau, double phi_noon,
                                        const Eigen::ArrayBase<DerivedP>& omega_plus,
                                        const Eigen::ArrayBase<DerivedM>& omega_minus) {
  return model.tpsa().intensity(omega_plus, omega_minus) *
         (1.0 + (phi_noon + omega_plus * tau.value()).cos());
}

}  // namespace modhom
