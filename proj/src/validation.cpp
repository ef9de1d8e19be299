#include "modhom/validation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "modhom/interferogram.hpp"
#include "modhom/jti.hpp"

namespace modhom {

std::vector<ValidationCase> validation_matrix() {
  constexpr double kSigmaMax = 5.0;
  const std::array<double, 5> ratios{0.02, 0.2, 1.0, 5.0, 50.0};
  const std::array<double, 4> phis{0.0, std::numbers::pi / 2, std::numbers::pi,
                                   3 * std::numbers::pi / 2};
  std::vector<ValidationCase> cases;
  for (std::size_t k = 0; k < ratios.size(); ++k) {
    const double r = ratios[k];
    const double sp = r >= 1.0 ? kSigmaMax : kSigmaMax * r;
    const double sm = r >= 1.0 ? kSigmaMax / r : kSigmaMax;
    for (double phi : phis) cases.push_back({r, sp, sm, 0.5 + 0.5 * static_cast<double>(k), phi});
  }
  return cases;
}

std::vector<ValidationPoint> run_validation(const std::vector<ValidationCase>& cases,
                                            double tolerance) {
  std::vector<ValidationPoint> out;
  for (const auto& vc : cases) {
    const SourceModel model = SourceModel::pulsed(vc.sigma_plus, vc.sigma_minus);
    for (double tau : {-vc.tau0, 0.0, vc.tau0}) {
      const InterferometerConfig config(vc.tau0, vc.phi, tau);
      const double cf = rate_modified_pulsed(model, config);
      const double q = rate_modified_quadrature(model, config);
      const double j = rate_from_jti(model, config);
      const double d = std::max({std::abs(cf - q), std::abs(cf - j), std::abs(q - j)});
      out.push_back({vc, tau, cf, q, j, d, d <= tolerance});
    }
  }
  return out;
}

}  // namespace modhom
