#pragma once

// Frequency-comb analysis of the zero-delay marginal spectra: tooth detection,
// dimensionality, inverse design of tau0, and read-back from the side dips.

#include <vector>

#include "modhom/interferogram.hpp"
#include "modhom/maps.hpp"
#include "modhom/model.hpp"

namespace modhom {

enum class MarginalAxis { Signal, Idler, SumAxis, DiffAxis };

struct Tooth {
  double center;  // rad/ps, parabolic refinement of the discrete maximum
  double height;
  double fwhm;    // rad/ps, full width at half of `height`
};

/// Teeth sorted by center. dimensionality == teeth.size(); spacing is the
/// median gap between neighbouring centers (0 with fewer than two teeth);
/// visibility is (max - min) / (max + min) of the envelope-normalized spectrum.
struct CombReport {
  std::vector<Tooth> teeth;
  int dimensionality = 0;
  double spacing = 0.0;
  double visibility = 0.0;
};

/// Standard deviation of |f|^2 along the axis (the window unit).
double axis_sigma(const SourceModel& model, MarginalAxis which);

AxisLabel axis_label(MarginalAxis which);

/// The axis along which the tau = 0 modulation is not washed out:
/// difference for sigma+ <= sigma- (and CW), sum otherwise.
MarginalAxis dominant_axis(const SourceModel& model);

/// +/- window_sigmas * axis_sigma, with at least 16 nodes per modulation period.
Grid1D marginal_grid(const SourceModel& model, const InterferometerConfig& config,
                     MarginalAxis which, double window_sigmas = 3.0);

/// Zero-delay CPD map projected onto `which`. Requires config.tau == 0 and a
/// grid labelled for that axis.
Spectrum marginal_spectrum(const SourceModel& model, const InterferometerConfig& config,
                           MarginalAxis which, const Grid1D& grid);

/// The same projection applied to |f|^2 alone.
Spectrum envelope_marginal(const SourceModel& model, MarginalAxis which, const Grid1D& grid);

/// Strict local maxima >= threshold_fraction * global max. The envelope, when
/// given, is used only for the visibility. Throws ResolutionError when
/// neighbouring teeth are fewer than 8 samples apart.
CombReport count_teeth(const Spectrum& spectrum, double threshold_fraction,
                       const Spectrum* envelope = nullptr);

/// marginal_spectrum + envelope_marginal + count_teeth on marginal_grid.
CombReport comb_report(const SourceModel& model, const InterferometerConfig& config,
                       MarginalAxis which, double window_sigmas = 3.0,
                       double threshold_fraction = 0.1);

/// Smallest tau0 in [0.01, 100] ps for which the dominant-axis comb (threshold
/// 0.1, window +/- window_sigmas) has exactly target_dimension teeth.
Delay design_tau0(const SourceModel& model, int target_dimension, double window_sigmas = 3.0,
                  double phi = 0.0);

struct DipCharacterization {
  Delay tau0_estimate;
  int dimensionality;
  double left_dip;   // ps
  double right_dip;  // ps
};

/// Locate the two side dips (deepest minima on either side of tau = 0, refined
/// parabolically), estimate tau0 as half their separation, and report the
/// dominant-axis tooth count the interferogram's source would give there.
DipCharacterization characterize_from_dips(const Interferogram& interferogram);

}  // namespace modhom
