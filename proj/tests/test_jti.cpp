#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "modhom/interferogram.hpp"
#include "modhom/jti.hpp"
#include "support.hpp"

using namespace modhom;
using oracle::kPi;

namespace {

double gauss_g(double sigma, double t) { return std::exp(-0.5 * sigma * sigma * t * t); }

}  // namespace

TEST_CASE("closed-form temporal amplitude matches the numerical transform") {
  const double sp = 1.5, sm = 3.0;
  auto f = [&](double ws, double wi) {
    const double p = ws + wi, m = ws - wi;
    return std::exp(-p * p / (4 * sp * sp) - m * m / (4 * sm * sm));
  };
  const Grid1D w = Grid1D::centered(20, 320, AxisLabel::SignalDetuning);
  const Grid2D fg{w, Grid1D(w.start(), w.step(), w.count(), AxisLabel::IdlerDetuning)};
  const SampledAmplitude num = temporal_amplitude_numeric(f, fg);
  const TemporalAmplitude A = temporal_amplitude(SourceModel::pulsed(sp, sm));
  const double peak = A(0, 0);
  CHECK(peak == doctest::Approx(sp * sm));

  double worst = 0.0;
  double norm_t = 0.0;
  Eigen::Index best_r = 0, best_c = 0;
  for (Eigen::Index r = 0; r < num.grid.rows.count(); ++r) {
    for (Eigen::Index c = 0; c < num.grid.cols.count(); ++c) {
      const double exact = A(num.grid.rows.node(r), num.grid.cols.node(c));
      const std::complex<double> v = num.values(r, c);
      if (exact > 1e-6 * peak) worst = std::max(worst, std::abs(v - exact) / peak);
      norm_t += std::norm(v);
      if (std::abs(v) > std::abs(num.values(best_r, best_c))) {
        best_r = r;
        best_c = c;
      }
    }
  }
  CHECK(worst < 1e-7);
  CHECK(best_r == num.grid.rows.nearest(0.0));
  CHECK(best_c == num.grid.cols.nearest(0.0));

  // Parseval for the unitary transform.
  double norm_f = 0.0;
  for (Eigen::Index r = 0; r < w.count(); ++r) {
    for (Eigen::Index c = 0; c < w.count(); ++c) norm_f += std::pow(f(w.node(r), w.node(c)), 2);
  }
  norm_t *= num.grid.rows.step() * num.grid.cols.step();
  norm_f *= w.step() * w.step();
  CHECK(norm_t == doctest::Approx(norm_f).epsilon(1e-9));

  const Grid1D narrow = Grid1D::centered(4, 64, AxisLabel::SignalDetuning);
  CHECK_THROWS_AS(temporal_amplitude_numeric(f, {narrow, narrow}), ResolutionError);
}

TEST_CASE("temporal amplitude is maximal at the origin and symmetric") {
  for (int n = 0; n < 200; ++n) {
    const TemporalAmplitude A(oracle::log_uniform(0.1, 10), oracle::log_uniform(0.1, 10));
    const double ts = oracle::uniform(-3, 3), ti = oracle::uniform(-3, 3);
    CHECK(A(ts, ti) <= A(0, 0));
    CHECK(A(ts, ti) == doctest::Approx(A(ti, ts)));
    CHECK(A(ts, ti) == doctest::Approx(A(-ts, -ti)));
  }
}

TEST_CASE("JTI vanishes identically when tau = tau0 = 0") {
  const SourceModel m = SourceModel::pulsed(2, 3);
  for (int n = 0; n < 200; ++n) {
    const InterferometerConfig cfg(0.0, oracle::uniform(0, 2 * kPi), 0.0);
    const double ts = oracle::uniform(-2, 2), ti = oracle::uniform(-2, 2);
    CHECK(jti(m, cfg, ts, ti) == doctest::Approx(0.0).scale(1e-24));
  }
}

TEST_CASE("property: 16-term expansion equals the direct modulus") {
  for (int n = 0; n < 200; ++n) {
    const SourceModel m = SourceModel::pulsed(oracle::log_uniform(0.2, 8), oracle::log_uniform(0.2, 8));
    const InterferometerConfig cfg(oracle::uniform(0, 3), oracle::uniform(0, 2 * kPi), oracle::uniform(-4, 4));
    const double ts = oracle::uniform(-6, 2), ti = oracle::uniform(-6, 2);
    const auto amps = jti_amplitudes(m, cfg, ts, ti);
    double scale = 0.0;
    for (const auto& a : amps) scale += std::abs(a);
    const double direct = jti(m, cfg, ts, ti);
    CHECK(direct >= 0.0);
    CHECK(std::abs(jti_expanded(m, cfg, ts, ti) - direct) <= 1e-12 * scale * scale + 1e-300);
    CHECK(std::abs(direct - std::norm(amps[0] - amps[1] + amps[2] - amps[3])) <= 1e-14 * scale * scale);
  }
}

TEST_CASE("amplitude placement and carrier phase") {
  const SourceModel m = SourceModel::pulsed(1.0, 2.0);
  const TemporalAmplitude A = temporal_amplitude(m);
  const double t0 = 1.2, tau = 0.3, phi = 0.9;
  const InterferometerConfig cfg(t0, phi, tau);
  const double ts = 0.4, ti = -0.7, d = tau + t0;
  const auto amps = jti_amplitudes(m, cfg, ts, ti);
  const std::complex<double> carrier = std::polar(1.0, -phi);
  CHECK(std::abs(amps[0] - A(ts + d, ti)) < 1e-15);
  CHECK(std::abs(amps[1] - A(ts, ti + d)) < 1e-15);
  CHECK(std::abs(amps[2] - carrier * A(ts + d, ti + 2 * t0)) < 1e-15);
  CHECK(std::abs(amps[3] - carrier * A(ts + 2 * t0, ti + d)) < 1e-15);
}

TEST_CASE("integrated JTI reproduces the closed form") {
  const SourceModel m = SourceModel::pulsed(5, 5);
  for (double tau : {-3.0, 0.0, 3.0}) {
    const InterferometerConfig cfg(3.0, 0.0, tau);
    CHECK(rate_from_jti(m, cfg) == doctest::Approx(oracle::rate_pulsed(5, 5, 3, 0, tau)).epsilon(1e-5).scale(1e-5));
  }
}

TEST_CASE("term groups integrate to the four closed-form contributions") {
  for (int n = 0; n < 20; ++n) {
    const double sp = oracle::log_uniform(0.5, 5), sm = oracle::log_uniform(0.5, 5);
    const double t0 = oracle::uniform(0.2, 2.5), phi = oracle::uniform(0, 2 * kPi);
    const double tau = oracle::uniform(-t0 - 1, t0 + 1);
    const SourceModel m = SourceModel::pulsed(sp, sm);
    const InterferometerConfig cfg(t0, phi, tau);
    const auto g = jti_group_rates(m, cfg, default_time_grid(m, cfg));
    const double b = std::cos(phi) * gauss_g(sp, t0);
    const double a = b * gauss_g(sm, t0);
    CHECK(g[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(g[1] == doctest::Approx(a).scale(1e-6));
    CHECK(g[2] == doctest::Approx(-b * gauss_g(sm, tau)).scale(1e-6));
    CHECK(g[3] == doctest::Approx(-0.5 * (gauss_g(sm, tau + t0) + gauss_g(sm, tau - t0))).scale(1e-6));
  }
}

TEST_CASE("far delay: only the baseline and a-term survive") {
  const SourceModel m = SourceModel::pulsed(0.8, 4);
  const InterferometerConfig cfg(0.5, 0.3, 5.0);
  const double a = dip_coefficients(m, cfg).a;
  CHECK(rate_from_jti(m, cfg) == doctest::Approx(1 + a).epsilon(1e-6));
}

TEST_CASE("random configurations agree with frequency-domain quadrature") {
  for (int n = 0; n < 20; ++n) {
    const double sp = oracle::log_uniform(0.5, 5), sm = oracle::log_uniform(0.5, 5);
    const double t0 = oracle::uniform(0.5, 3), phi = oracle::uniform(0, 2 * kPi);
    const double tau = oracle::uniform(-t0 - 1, t0 + 1);
    const SourceModel m = SourceModel::pulsed(sp, sm);
    const InterferometerConfig cfg(t0, phi, tau);
    CHECK(std::abs(rate_from_jti(m, cfg) - rate_modified_quadrature(m, cfg)) <= 2e-5);
  }
}

TEST_CASE("window and regime guards") {
  const SourceModel m = SourceModel::pulsed(2, 2);
  const InterferometerConfig cfg(3.0, 0.0, 1.0);
  const Grid1D small = Grid1D::linspace(-1, 1, 101, AxisLabel::Delay);
  CHECK_THROWS_AS(rate_from_jti(m, cfg, {small, small}), WindowError);
  const Grid2D g = default_time_grid(m, cfg);
  CHECK(g.rows.count() >= 512);
  CHECK(g.rows.step() <= 0.25 + 1e-12);
  CHECK_THROWS_AS(rate_from_jti(SourceModel::cw(2), cfg), ContractViolation);
  CHECK_THROWS_AS(jti(SourceModel::cw(2), cfg, 0, 0), ContractViolation);
  CHECK_THROWS_AS(temporal_amplitude(SourceModel::cw(2)), ContractViolation);
}
