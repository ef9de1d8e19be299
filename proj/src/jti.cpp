#include "modhom/jti.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "modhom/error.hpp"

namespace modhom {

namespace {

void require_pulsed(const SourceModel& model) {
  if (model.is_cw()) throw ContractViolation("the time-domain route needs a pulsed source");
}

}  // namespace

TemporalAmplitude temporal_amplitude(const SourceModel& model) {
  require_pulsed(model);
  return {model.sigma_plus(), model.sigma_minus()};
}

SampledAmplitude temporal_amplitude_numeric(const std::function<double(double, double)>& tpsa,
                                            const Grid2D& frequency_grid) {
  const Grid1D& ws = frequency_grid.rows;
  const Grid1D& wi = frequency_grid.cols;
  const Eigen::Index nr = ws.count();
  const Eigen::Index nc = wi.count();

  Eigen::Array<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> f(nr, nc);
  double peak = 0.0;
  double edge = 0.0;
  for (Eigen::Index r = 0; r < nr; ++r) {
    for (Eigen::Index c = 0; c < nc; ++c) {
      const double v = tpsa(ws.node(r), wi.node(c));
      f(r, c) = v;
      peak = std::max(peak, std::abs(v));
      if (r == 0 || c == 0 || r == nr - 1 || c == nc - 1) edge = std::max(edge, std::abs(v));
    }
  }
  if (!(peak > 0.0)) throw InvalidInput("TPSA vanishes on the frequency grid");
  if (edge > 1e-10 * peak) {
    throw ResolutionError("frequency grid truncates the TPSA (boundary exceeds 1e-10 of peak)");
  }

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> in;
  std::vector<std::complex<double>> out;
  in.resize(static_cast<std::size_t>(nc));
  for (Eigen::Index r = 0; r < nr; ++r) {
    for (Eigen::Index c = 0; c < nc; ++c) in[static_cast<std::size_t>(c)] = f(r, c);
    fft.fwd(out, in);
    for (Eigen::Index c = 0; c < nc; ++c) f(r, c) = out[static_cast<std::size_t>(c)];
  }
  in.resize(static_cast<std::size_t>(nr));
  for (Eigen::Index c = 0; c < nc; ++c) {
    for (Eigen::Index r = 0; r < nr; ++r) in[static_cast<std::size_t>(r)] = f(r, c);
    fft.fwd(out, in);
    for (Eigen::Index r = 0; r < nr; ++r) f(r, c) = out[static_cast<std::size_t>(r)];
  }

  Grid1D ts = conjugate_axis(ws);
  Grid1D ti = conjugate_axis(wi);
  ts = Grid1D(ts.start(), ts.step(), ts.count(), AxisLabel::Delay);
  ti = Grid1D(ti.start(), ti.step(), ti.count(), AxisLabel::Delay);

  using namespace std::complex_literals;
  const double scale = ws.step() * wi.step() / (2.0 * std::numbers::pi);
  SampledAmplitude result{{ts, ti}, decltype(f)(nr, nc)};
  for (Eigen::Index m = 0; m < nr; ++m) {
    const Eigen::Index bin_r = ((m - nr / 2) % nr + nr) % nr;
    for (Eigen::Index n = 0; n < nc; ++n) {
      const Eigen::Index bin_c = ((n - nc / 2) % nc + nc) % nc;
      const double phase = ws.start() * ts.node(m) + wi.start() * ti.node(n);
      result.values(m, n) = scale * std::exp(-1i * phase) * f(bin_r, bin_c);
    }
  }
  return result;
}

std::array<std::complex<double>, 4> jti_amplitudes(const SourceModel& model,
                                                   const InterferometerConfig& config, double t_s,
                                                   double t_i) {
  const TemporalAmplitude amp = temporal_amplitude(model);
  const double t0 = config.tau0();
  const double d = config.tau() + t0;
  const std::complex<double> carrier = std::polar(1.0, -config.phi());
  return {std::complex<double>(amp(t_s + d, t_i)), std::complex<double>(amp(t_s, t_i + d)),
          carrier * amp(t_s + d, t_i + 2.0 * t0), carrier * amp(t_s + 2.0 * t0, t_i + d)};
}

double jti(const SourceModel& model, const InterferometerConfig& config, double t_s, double t_i) {
  const auto a = jti_amplitudes(model, config, t_s, t_i);
  return std::norm(a[0] - a[1] + a[2] - a[3]);
}

std::array<double, 4> jti_term_groups(const SourceModel& model, const InterferometerConfig& config,
                                      double t_s, double t_i) {
  const auto [a1, a2, a3, a4] = jti_amplitudes(model, config, t_s, t_i);
  // z* w + z w* = 2 Re(z* w)
  auto pair = [](std::complex<double> z, std::complex<double> w) {
    return 2.0 * std::real(std::conj(z) * w);
  };
  return {std::norm(a1) + std::norm(a2) + std::norm(a3) + std::norm(a4),
          pair(a1, a3) + pair(a2, a4),
          -(pair(a1, a4) + pair(a2, a3)),
          -(pair(a1, a2) + pair(a3, a4))};
}

double jti_expanded(const SourceModel& model, const InterferometerConfig& config, double t_s,
                    double t_i) {
  const auto g = jti_term_groups(model, config, t_s, t_i);
  return g[0] + g[1] + g[2] + g[3];
}

Grid2D default_time_grid(const SourceModel& model, const InterferometerConfig& config) {
  require_pulsed(model);
  const double t0 = config.tau0();
  const double d = config.tau() + t0;
  // Amplitude centers sit where the shifted arguments vanish.
  const std::array<double, 3> coords{-d, 0.0, -2.0 * t0};
  const double lo_c = *std::min_element(coords.begin(), coords.end());
  const double hi_c = *std::max_element(coords.begin(), coords.end());
  const double s_min = std::min(model.sigma_plus(), model.sigma_minus());
  const double s_max = std::max(model.sigma_plus(), model.sigma_minus());
  const double margin = 6.0 / s_min;
  const double lo = lo_c - margin;
  const double hi = hi_c + margin;
  const double step = 0.5 / s_max;
  const auto count =
      std::max<Eigen::Index>(512, static_cast<Eigen::Index>(std::ceil((hi - lo) / step)) + 1);
  const Grid1D axis = Grid1D::linspace(lo, hi, count, AxisLabel::Delay);
  return {axis, axis};
}

std::array<double, 4> jti_group_rates(const SourceModel& model, const InterferometerConfig& config,
                                      const Grid2D& time_grid) {
  require_pulsed(model);
  const Grid1D& ts = time_grid.rows;
  const Grid1D& ti = time_grid.cols;
  const Eigen::ArrayXd ws = trapezoid_weights(ts);
  const Eigen::ArrayXd wi = trapezoid_weights(ti);

  std::array<double, 4> sums{0.0, 0.0, 0.0, 0.0};
  double total = 0.0;
  double ring = 0.0;
  for (Eigen::Index r = 0; r < ts.count(); ++r) {
    const double t_s = ts.node(r);
    for (Eigen::Index c = 0; c < ti.count(); ++c) {
      const double t_i = ti.node(c);
      const auto g = jti_term_groups(model, config, t_s, t_i);
      const double w = ws(r) * wi(c);
      for (std::size_t k = 0; k < 4; ++k) sums[k] += w * g[k];
      const double value = g[0] + g[1] + g[2] + g[3];
      total += w * value;
      if (r == 0 || c == 0 || r == ts.count() - 1 || c == ti.count() - 1) ring += w * value;
    }
  }
  if (total > 0.0 && ring > 1e-8 * total) {
    throw WindowError("time window truncates the joint temporal intensity");
  }
  // dOmega_s dOmega_i = dOmega+ dOmega- / 2, so the dt_s dt_i integral is half
  // the sum/difference-measure value normalized by 8 pi sigma+ sigma-.
  const double norm = 2.0 / (8.0 * std::numbers::pi * model.sigma_plus() * model.sigma_minus());
  for (double& s : sums) s *= norm;
  return sums;
}

double rate_from_jti(const SourceModel& model, const InterferometerConfig& config,
                     const Grid2D& time_grid) {
  const auto g = jti_group_rates(model, config, time_grid);
  return g[0] + g[1] + g[2] + g[3];
}

double rate_from_jti(const SourceModel& model, const InterferometerConfig& config) {
  return rate_from_jti(model, config, default_time_grid(model, config));
}

}  // namespace modhom
