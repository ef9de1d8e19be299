#include "modhom/interferogram.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "modhom/error.hpp"
#include "modhom/kernels.hpp"

namespace modhom {

namespace {

// g for the CW marginal |f(Omega)|^2 = exp(-2 Omega^2 / sigma-^2), whose
// standard deviation is sigma- / 2.
double g_cw(const SourceModel& model, double tau) {
  return g_fourier(0.5 * model.sigma_minus(), Delay(tau));
}

Eigen::Index odd_count_for(double half_span, double max_step) {
  auto n = static_cast<Eigen::Index>(std::ceil(2.0 * half_span / max_step)) + 1;
  if (n % 2 == 0) ++n;
  return std::max<Eigen::Index>(n, 3);
}

}  // namespace

double g_fourier(double sigma, Delay tau) {
  require_positive(sigma, "sigma");
  const double x = sigma * tau.value();
  return std::exp(-0.5 * x * x);
}

double g_fourier_numeric(const std::function<double(double)>& spectrum, Delay tau,
                         const Grid1D& omega) {
  const Eigen::ArrayXd w = trapezoid_weights(omega);
  const Eigen::ArrayXd nodes = omega.nodes();
  double num = 0.0;
  double den = 0.0;
  for (Eigen::Index k = 0; k < omega.count(); ++k) {
    const double f = spectrum(nodes(k));
    num += w(k) * f * std::cos(nodes(k) * tau.value());
    den += w(k) * f;
  }
  if (!(den > 0.0)) throw InvalidInput("spectrum has no positive mass on the grid");
  return num / den;
}

DipCoefficients dip_coefficients(const SourceModel& model, const InterferometerConfig& config) {
  const double cphi = std::cos(config.phi());
  if (model.is_cw()) {
    return {cphi * g_cw(model, 2.0 * config.tau0()), cphi};
  }
  const double gp = g_fourier(model.sigma_plus(), Delay(config.tau0()));
  const double gm = g_fourier(model.sigma_minus(), Delay(config.tau0()));
  return {cphi * gp * gm, cphi * gp};
}

double rate_modified_pulsed(const SourceModel& model, const InterferometerConfig& config) {
  if (model.is_cw()) throw ContractViolation("rate_modified_pulsed requires a pulsed source");
  const auto [a, b] = dip_coefficients(model, config);
  const double sm = model.sigma_minus();
  const double t = config.tau();
  const double t0 = config.tau0();
  return 1.0 + a - b * g_fourier(sm, Delay(t)) - 0.5 * g_fourier(sm, Delay(t + t0)) -
         0.5 * g_fourier(sm, Delay(t - t0));
}

double rate_modified_cw(const SourceModel& model, const InterferometerConfig& config) {
  if (!model.is_cw()) throw ContractViolation("rate_modified_cw requires a CW source");
  const double t = config.tau();
  const double t0 = config.tau0();
  return 1.0 - std::cos(config.phi()) * g_cw(model, 2.0 * t) - 0.5 * g_cw(model, 2.0 * (t + t0)) -
         0.5 * g_cw(model, 2.0 * (t - t0));
}

double rate_closed_form(const SourceModel& model, const InterferometerConfig& config) {
  return model.is_cw() ? rate_modified_cw(model, config) : rate_modified_pulsed(model, config);
}

double baseline_integral(const SourceModel& model) {
  if (model.is_cw()) return 4.0 * model.sigma_minus() * std::sqrt(0.5 * std::numbers::pi);
  return 8.0 * std::numbers::pi * model.sigma_plus() * model.sigma_minus();
}

Grid1D quadrature_axis(double sigma, double oscillation, const QuadratureSpec& quad,
                       std::optional<Eigen::Index> nodes, AxisLabel label) {
  if (!(quad.span_sigmas >= 5.0)) {
    throw ResolutionError("quadrature span must cover at least 5 sigma");
  }
  const double half = quad.span_sigmas * sigma;
  const double guard = oscillation > 0.0 ? 1.0 / (4.0 * oscillation) : half;
  if (nodes) {
    const Grid1D axis = Grid1D::centered(half, *nodes, label);
    if (axis.step() > guard) {
      std::ostringstream msg;
      msg << "quadrature step " << axis.step() << " exceeds 1/(4(|tau|+tau0)) = " << guard;
      throw ResolutionError(msg.str());
    }
    if (axis.step() > sigma) throw ResolutionError("quadrature step exceeds the spectral width");
    return axis;
  }
  return Grid1D::centered(half, odd_count_for(half, std::min(0.5 * sigma, guard)), label);
}

double rate_modified_quadrature(const SourceModel& model, const InterferometerConfig& config,
                                const QuadratureSpec& quad) {
  const double oscillation = std::abs(config.tau()) + config.tau0();

  if (model.is_cw()) {
    // r_c oscillates as cos(2 Omega (|tau| + tau0)).
    const Grid1D omega = quadrature_axis(0.5 * model.sigma_minus(), 2.0 * oscillation, quad,
                                         quad.nodes_minus, AxisLabel::Omega);
    const Eigen::ArrayXd w = trapezoid_weights(omega);
    double sum = 0.0;
    for (Eigen::Index k = 0; k < omega.count(); ++k) {
      sum += w(k) * cpd_cw(model, config, Detuning(omega.node(k)));
    }
    return sum / baseline_integral(model);
  }

  const Grid1D plus = quadrature_axis(model.sigma_plus(), oscillation, quad, quad.nodes_plus,
                                      AxisLabel::SumDetuning);
  const Grid1D minus = quadrature_axis(model.sigma_minus(), oscillation, quad, quad.nodes_minus,
                                       AxisLabel::DifferenceDetuning);
  const Eigen::ArrayXd wp = trapezoid_weights(plus);
  const Eigen::ArrayXd wm = trapezoid_weights(minus);
  const Eigen::ArrayXd om = minus.nodes();

  double sum = 0.0;
  for (Eigen::Index i = 0; i < plus.count(); ++i) {
    const Eigen::ArrayXd op = Eigen::ArrayXd::Constant(minus.count(), plus.node(i));
    sum += wp(i) * (cpd_modified(model, config, op, om) * wm).sum();
  }
  return sum / baseline_integral(model);
}

Interferogram scan(const SourceModel& model, const InterferometerConfig& config,
                   const Grid1D& delays, RateMethod method) {
  if (delays.label() != AxisLabel::Delay) throw InvalidInput("scan expects a delay axis");
  Eigen::ArrayXd values(delays.count());
  for (Eigen::Index k = 0; k < delays.count(); ++k) {
    const InterferometerConfig at = config.with_tau(delays.node(k));
    values(k) = method == RateMethod::ClosedForm ? rate_closed_form(model, at)
                                                 : rate_modified_quadrature(model, at);
  }
  double baseline = 1.0 + dip_coefficients(model, config).a;
  if (model.is_cw() && method == RateMethod::ClosedForm) baseline = 1.0;
  return {delays, std::move(values), baseline, model, config.with_tau(0.0), method,
          validity_warnings(model, config)};
}

std::vector<std::string> validity_warnings(const SourceModel& model,
                                           const InterferometerConfig& config) {
  std::vector<std::string> out;
  const double tcoh = coherence_time(model).value();
  if (config.tau0() <= tcoh) {
    std::ostringstream msg;
    msg << "tau0 = " << config.tau0() << " ps does not exceed the coherence time " << tcoh
        << " ps; single-photon interference is not suppressed";
    out.push_back(msg.str());
  }
  return out;
}

}  // namespace modhom
