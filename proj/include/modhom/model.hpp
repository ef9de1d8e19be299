#pragma once

// Physical quantities and two-photon source models.
//
// Unit convention: every frequency (linewidths sigma_+/-, detunings Omega) is
// an ANGULAR frequency in rad/ps and every delay is in ps, so products such as
// sigma * tau are dimensionless without 2*pi factors. Detunings are measured
// from half the pump carrier, omega = omega_p / 2 + Omega.

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "modhom/error.hpp"

namespace modhom {

/// Angular-frequency detuning in rad/ps.
class Detuning {
 public:
  explicit Detuning(double value) : value_(require_finite(value, "detuning")) {}
  double value() const { return value_; }

 private:
  double value_;
};

/// Time delay in ps (tau, tau0, or the conjugate time T).
class Delay {
 public:
  explicit Delay(double value) : value_(require_finite(value, "delay")) {}
  double value() const { return value_; }

 private:
  double value_;
};

/// Gaussian-product two-photon spectral amplitude
///   f(Omega+, Omega-) = exp(-Omega+^2 / 4 sigma+^2) exp(-Omega-^2 / 4 sigma-^2).
/// Real, non-negative, peak-normalized and even in Omega- (exchange symmetric).
class GaussianTpsa {
 public:
  GaussianTpsa(double sigma_plus, double sigma_minus)
      : sigma_plus_(require_positive(sigma_plus, "sigma_plus")),
        sigma_minus_(require_positive(sigma_minus, "sigma_minus")) {}

  double sigma_plus() const { return sigma_plus_; }
  double sigma_minus() const { return sigma_minus_; }

  double amplitude(double omega_plus, double omega_minus) const {
    return std::exp(-omega_plus * omega_plus / (4.0 * sigma_plus_ * sigma_plus_) -
                    omega_minus * omega_minus / (4.0 * sigma_minus_ * sigma_minus_));
  }

  /// |f|^2, the joint spectral intensity.
  double intensity(double omega_plus, double omega_minus) const {
    return std::exp(-omega_plus * omega_plus / (2.0 * sigma_plus_ * sigma_plus_) -
                    omega_minus * omega_minus / (2.0 * sigma_minus_ * sigma_minus_));
  }

  template <typename DerivedP, typename DerivedM>
  auto intensity(const Eigen::ArrayBase<DerivedP>& omega_plus,
                 const Eigen::ArrayBase<DerivedM>& omega_minus) const {
    return (-omega_plus.square() / (2.0 * sigma_plus_ * sigma_plus_) -
            omega_minus.square() / (2.0 * sigma_minus_ * sigma_minus_))
        .exp();
  }

 private:
  double sigma_plus_;
  double sigma_minus_;
};

enum class PumpRegime { CW, Pulsed };

enum class Correlation { AntiCorrelated, Correlated, Uncorrelated };

/// Photon-pair source: TPSA plus pump regime.
///
/// For a CW pump the sum detuning is pinned, Omega+ = 0 and Omega- = 2 Omega,
/// so only sigma_minus is physical; the CW marginal amplitude is f(0, 2 Omega).
class SourceModel {
 public:
  SourceModel(GaussianTpsa tpsa, PumpRegime pump) : tpsa_(tpsa), pump_(pump) {}

  static SourceModel pulsed(double sigma_plus, double sigma_minus) {
    return {GaussianTpsa(sigma_plus, sigma_minus), PumpRegime::Pulsed};
  }
  // sigma_plus is unused for CW; it is set equal to sigma_minus so the TPSA
  // stays a valid Gaussian.
  static SourceModel cw(double sigma_minus) {
    return {GaussianTpsa(sigma_minus, sigma_minus), PumpRegime::CW};
  }

  const GaussianTpsa& tpsa() const { return tpsa_; }
  PumpRegime pump() const { return pump_; }
  bool is_cw() const { return pump_ == PumpRegime::CW; }
  double sigma_plus() const { return tpsa_.sigma_plus(); }
  double sigma_minus() const { return tpsa_.sigma_minus(); }

  Correlation correlation() const {
    if (is_cw() || sigma_plus() < sigma_minus()) return Correlation::AntiCorrelated;
    if (sigma_plus() > sigma_minus()) return Correlation::Correlated;
    return Correlation::Uncorrelated;
  }

  /// CW marginal amplitude f(Omega) = f(Omega+ = 0, Omega- = 2 Omega).
  double cw_amplitude(double omega) const { return tpsa_.amplitude(0.0, 2.0 * omega); }
  double cw_intensity(double omega) const { return tpsa_.intensity(0.0, 2.0 * omega); }

 private:
  GaussianTpsa tpsa_;
  PumpRegime pump_;
};

/// Modified-HOM settings: MZ imbalance tau0 = dL/c, carrier phase
/// phi = omega_p tau0, and the BS3 scan delay tau = 2x/c.
class InterferometerConfig {
 public:
  InterferometerConfig(Delay tau0, double phi, Delay tau)
      : tau0_(tau0), phi_(require_finite(phi, "phi")), tau_(tau) {
    if (tau0_.value() < 0.0) throw InvalidInput("tau0 must be >= 0");
  }
  InterferometerConfig(double tau0, double phi, double tau)
      : InterferometerConfig(Delay(tau0), phi, Delay(tau)) {}

  double tau0() const { return tau0_.value(); }
  double tau() const { return tau_.value(); }
  /// Phase as supplied.
  double phi() const { return phi_; }
  /// Phase reduced to [0, 2 pi).
  double phi_reduced() const {
    double r = std::fmod(phi_, 2.0 * std::numbers::pi);
    if (r < 0.0) r += 2.0 * std::numbers::pi;
    return r;
  }

  InterferometerConfig with_tau(double tau) const { return {tau0_, phi_, Delay(tau)}; }
  InterferometerConfig with_tau0(double tau0) const { return {Delay(tau0), phi_, tau_}; }
  InterferometerConfig with_phi(double phi) const { return {tau0_, phi, tau_}; }

  friend bool operator==(const InterferometerConfig& a, const InterferometerConfig& b) {
    return a.tau0() == b.tau0() && a.tau() == b.tau() && a.phi_reduced() == b.phi_reduced();
  }

 private:
  Delay tau0_;
  double phi_;
  Delay tau_;
};

inline double tpsa_eval(const GaussianTpsa& tpsa, Detuning omega_plus, Detuning omega_minus) {
  return tpsa.amplitude(omega_plus.value(), omega_minus.value());
}

/// Biphoton coherence-time scale 1/sigma_minus.
inline Delay coherence_time(const SourceModel& model) { return Delay(1.0 / model.sigma_minus()); }

// ---------------------------------------------------------------------------
// Coordinates and grids

struct SumDifference {
  double plus;
  double minus;
};

struct SignalIdler {
  double signal;
  double idler;
};

inline SumDifference to_sum_difference(SignalIdler p) {
  return {p.signal + p.idler, p.signal - p.idler};
}

inline SignalIdler to_signal_idler(SumDifference p) {
  return {0.5 * (p.plus + p.minus), 0.5 * (p.plus - p.minus)};
}

enum class AxisLabel {
  SignalDetuning,      // Omega_s, rad/ps
  IdlerDetuning,       // Omega_i, rad/ps
  SumDetuning,         // Omega+, rad/ps
  DifferenceDetuning,  // Omega-, rad/ps
  Omega,               // CW single detuning, rad/ps
  Delay,               // tau, ps
  ConjugateTime,       // T, ps
};

inline std::string to_string(AxisLabel label) {
  switch (label) {
    case AxisLabel::SignalDetuning: return "omega_s";
    case AxisLabel::IdlerDetuning: return "omega_i";
    case AxisLabel::SumDetuning: return "omega_plus";
    case AxisLabel::DifferenceDetuning: return "omega_minus";
    case AxisLabel::Omega: return "omega";
    case AxisLabel::Delay: return "tau";
    case AxisLabel::ConjugateTime: return "T";
  }
  return "unknown";
}

inline AxisLabel axis_label_from_string(const std::string& name) {
  for (auto label : {AxisLabel::SignalDetuning, AxisLabel::IdlerDetuning, AxisLabel::SumDetuning,
                     AxisLabel::DifferenceDetuning, AxisLabel::Omega, AxisLabel::Delay,
                     AxisLabel::ConjugateTime}) {
    if (to_string(label) == name) return label;
  }
  throw InvalidInput("unknown axis label: " + name);
}

/// Uniform axis: node(i) = start + i * step, i in [0, count).
class Grid1D {
 public:
  Grid1D(double start, double step, Eigen::Index count, AxisLabel label)
      : start_(require_finite(start, "grid start")),
        step_(require_positive(step, "grid step")),
        count_(count),
        label_(label) {
    if (count_ < 2) throw InvalidInput("grid needs at least 2 nodes");
  }

  /// count nodes spanning [lo, hi] inclusive.
  static Grid1D linspace(double lo, double hi, Eigen::Index count, AxisLabel label) {
    if (count < 2) throw InvalidInput("grid needs at least 2 nodes");
    return {lo, (hi - lo) / static_cast<double>(count - 1), count, label};
  }

  /// Symmetric grid [-half_span, half_span].
  static Grid1D centered(double half_span, Eigen::Index count, AxisLabel label) {
    return linspace(-half_span, half_span, count, label);
  }

  double start() const { return start_; }
  double step() const { return step_; }
  Eigen::Index count() const { return count_; }
  AxisLabel label() const { return label_; }
  double node(Eigen::Index i) const { return start_ + static_cast<double>(i) * step_; }
  double back() const { return node(count_ - 1); }

  Eigen::ArrayXd nodes() const {
    return start_ + step_ * Eigen::ArrayXd::LinSpaced(count_, 0.0, static_cast<double>(count_ - 1));
  }

  /// Index of the node nearest to x (clamped).
  Eigen::Index nearest(double x) const {
    const double r = std::round((x - start_) / step_);
    if (r < 0.0) return 0;
    if (r > static_cast<double>(count_ - 1)) return count_ - 1;
    return static_cast<Eigen::Index>(r);
  }

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  double start_;
  double step_;
  Eigen::Index count_;
  AxisLabel label_;
};

/// Row axis x column axis; values are stored row-major.
struct Grid2D {
  Grid1D rows;
  Grid1D cols;

  friend bool operator==(const Grid2D&, const Grid2D&) = default;
};

/// Composite trapezoid weights for a uniform grid.
inline Eigen::ArrayXd trapezoid_weights(const Grid1D& grid) {
  Eigen::ArrayXd w = Eigen::ArrayXd::Constant(grid.count(), grid.step());
  w(0) *= 0.5;
  w(grid.count() - 1) *= 0.5;
  return w;
}

}  // namespace modhom
