#pragma once

// Independent oracles for the test suites. Nothing here calls the library's
// numerical routines; each formula is written out from first principles.

#include <cmath>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

namespace oracle {

constexpr double kPi = std::numbers::pi;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240917ULL);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline double log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

/// Composite Simpson rule on [a, b] with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return s * h / 3.0;
}

/// Normalized pulsed rate written out term by term.
inline double rate_pulsed(double sp, double sm, double t0, double phi, double tau) {
  auto gm = [&](double t) { return std::exp(-0.5 * sm * sm * t * t); };
  const double gp0 = std::exp(-0.5 * sp * sp * t0 * t0);
  const double a = std::cos(phi) * gp0 * gm(t0);
  const double b = std::cos(phi) * gp0;
  return 1.0 + a - b * gm(tau) - 0.5 * gm(tau + t0) - 0.5 * gm(tau - t0);
}

/// Normalized CW rate as printed (no constant a-term). The CW marginal
/// exp(-2 Omega^2 / sm^2) has standard deviation sm / 2.
inline double rate_cw(double sm, double t0, double phi, double tau) {
  auto g = [&](double t) { return std::exp(-0.125 * sm * sm * t * t); };
  return 1.0 - std::cos(phi) * g(2 * tau) - 0.5 * g(2 * (tau + t0)) - 0.5 * g(2 * (tau - t0));
}

/// The two-amplitude modulus in signal/idler detunings, from the beam-splitter
/// algebra directly.
inline double cpd_raw(double sp, double sm, double t0, double phi, double tau, double ws,
                      double wi) {
  using namespace std::complex_literals;
  auto f = [&](double a, double b) {
    const double p = a + b, m = a - b;
    return std::exp(-p * p / (4 * sp * sp) - m * m / (4 * sm * sm));
  };
  const auto x = f(wi, ws) * (1.0 + std::exp(-1i * (phi + 2 * wi * t0))) * std::exp(-1i * ws * (t0 + tau));
  const auto y = f(ws, wi) * (1.0 + std::exp(-1i * (phi + 2 * ws * t0))) * std::exp(-1i * wi * (t0 + tau));
  return std::norm(x - y);
}

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() /
             ("modhom_test_" + tag + "_" + std::to_string(std::random_device{}()));
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace oracle
