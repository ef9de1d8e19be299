#pragma once

// Three-route cross-validation: closed form, frequency quadrature, and
// time-domain JTI integration, evaluated on a shared parameter matrix.

#include <vector>

#include "modhom/model.hpp"

namespace modhom {

struct ValidationCase {
  double ratio;  // sigma+ / sigma-
  double sigma_plus;
  double sigma_minus;
  double tau0;
  double phi;
};

/// 20 configurations: ratio in {0.02, 0.2, 1, 5, 50} x phi in {0, pi/2, pi, 3pi/2}.
/// The broader linewidth is 5 rad/ps; tau0 = 0.5 + 0.5 * (ratio index).
std::vector<ValidationCase> validation_matrix();

struct ValidationPoint {
  ValidationCase config;
  double tau;
  double closed_form;
  double quadrature;
  double jti;
  double max_pairwise;  // max |route_i - route_j|
  bool pass;
};

/// Evaluates every case at tau in {-tau0, 0, tau0}.
std::vector<ValidationPoint> run_validation(const std::vector<ValidationCase>& cases,
                                            double tolerance = 2e-5);

}  // namespace modhom
