#pragma once

#include <string>
#include <vector>

#include "zetalab/zeta.hpp"

namespace zetalab {

/// Vertical segment {c + i tau : tau_min <= |tau| <= tau_max} on which a
/// truncated multiplication symbol is examined. tau_min = 0 gives the full
/// symmetric window |tau| <= tau_max.
struct TruncationSpec {
  double c = 0.5;
  double tau_min = 0.0;
  double tau_max = 10.0;
};

struct CurvePoint {
  double tau = 0.0;
  cxd value;
};

/// Sampled symbol values along a vertical segment, conjugate-symmetric in
/// tau by construction. Refined local minima are appended to the samples,
/// so min_modulus is exactly the minimum over `points`.
struct SpectrumCurve {
  TruncationSpec trunc;
  std::vector<CurvePoint> points;  // ascending tau over [-T,-T0] and [T0,T]
  double resolution = 0.0;         // step actually used on the tau axis
  double min_modulus = 0.0;
  double argmin_tau = 0.0;
  bool pole_flag = false;  // c = 1: punctured at |tau| < 1e-3
};

enum class Decision { Invertible, NotInvertible, Undetermined };
const char* decision_name(Decision d);

/// Verdict for the truncated operator on one segment. NotInvertible always
/// carries certified zero ordinates in `witnesses`; Invertible always has
/// min_modulus above `threshold` (ten Lipschitz allowances of the scan).
struct InvertibilityVerdict {
  TruncationSpec trunc;
  Decision decision = Decision::Undetermined;
  double min_modulus = 0.0;
  double argmin_tau = 0.0;
  double threshold = 0.0;
  std::vector<double> witnesses;
  std::string note;
};

enum class QuasiDecision {
  QuasiInvertibleUpTo,
  NotQuasiInvertible,
  Undetermined,
};
const char* quasi_decision_name(QuasiDecision d);

/// Horizon-limited surrogate for quasi-invertibility: all truncations up
/// to the horizon examined at once. zero_count is the number of certified
/// zero ordinates below the horizon (the almost-invertibility report).
struct QuasiVerdict {
  double c = 0.0;
  double horizon = 0.0;
  QuasiDecision decision = QuasiDecision::Undetermined;
  double witness_tau = 0.0;  // first certified zero ordinate if NotQuasi
  long zero_count = 0;
  double min_modulus = 0.0;
  double argmin_tau = 0.0;
  double analytic_floor = 0.0;  // zeta(2c)/zeta(c) when c > 1
  std::string note;
};

/// Proximity evidence of one complex target to the sampled symbol curve.
struct SpectrumTarget {
  cxd target;
  double min_distance = 0.0;
  double argmin_tau = 0.0;  // signed; negative means the conjugate branch
};

struct LineProbeReport {
  double c = 0.0;
  double tau_max = 0.0;
  std::vector<SpectrumTarget> targets;
  bool annulus_valid = false;  // c > 1: spectrum confined to an annulus
  double annulus_inner = 0.0;  // zeta(2c)/zeta(c)
  double annulus_outer = 0.0;  // zeta(c)
};

struct WitnessPoint {
  double width = 0.0;
  double residual = 0.0;  // ||d f - lambda f|| / ||f|| in the weighted norm
};

/// Residuals of Gaussian-windowed exponentials exp(lambda t) G(t/width)
/// against the candidate eigenvalue lambda = (c + offset) + i tau.
struct WitnessResult {
  double c = 0.0;
  double tau = 0.0;
  double lambda_offset = 0.0;  // distance of Re(lambda) from the line
  std::vector<WitnessPoint> points;
};

/// Sample zeta(c + i tau) over the segment at step <= resolution, append
/// golden-section-refined local minima, and record the curve minimum.
/// The c = 1 segment through the pole is punctured at radius 1e-3 and
/// flagged; a segment entirely inside the puncture raises PoleInRange.
/// sample_offset in [0, 1) shifts every interior sample by that fraction
/// of one step (segment endpoints stay included), so grid-placement
/// robustness can be probed reproducibly.
SpectrumCurve truncated_spectrum_curve(const TruncationSpec& spec,
                                       double resolution,
                                       double sample_offset = 0.0);

/// Decide invertibility of the truncated operator. c = 1/2 decisions come
/// from the certified zero table; c > 1 uses the Euler-product floor
/// zeta(2c)/zeta(c); other lines use the min-modulus threshold policy with
/// Undetermined as the honest fallback. c = 1 is Undetermined by policy.
InvertibilityVerdict truncated_invertibility(const TruncationSpec& spec,
                                             double sample_offset = 0.0);

/// Examine all truncation horizons up to t_max at once: on the critical
/// line a certified zero yields NotQuasiInvertible with witness and count;
/// elsewhere the threshold policy applies, with the horizon disclosed.
QuasiVerdict quasi_invertibility_scan(double c, double t_max,
                                      double sample_offset = 0.0);

/// One quasi-invertibility row per grid value. The grid must avoid 1/2
/// and 1 and stay inside (0, 1); the critical line is run separately.
std::vector<QuasiVerdict> rh_diagnostic(const std::vector<double>& c_grid,
                                        double t_max,
                                        double sample_offset = 0.0);

/// Minimal sampled distance from each target to {zeta(c + i tau)} over
/// |tau| <= t_max: one-sided proximity evidence only. Reports the
/// analytic annulus bounds when c > 1. Requires c != 1.
LineProbeReport full_line_spectrum_probe(double c, double t_max,
                                         const std::vector<cxd>& targets,
                                         double sample_offset = 0.0);

/// Spectrum curve of the completed-zeta symbol xi(c + i tau). Raises
/// PoleInRange for c in {0, 1}, where the segment meets a singular point
/// of the evaluation. resolution <= 0 selects an automatic step.
SpectrumCurve global_operator_curve(double c, double t_max,
                                    double resolution = 0.0,
                                    double sample_offset = 0.0);

/// Windowed-exponential approximate eigenfunctions for
/// lambda = (c + lambda_offset) + i tau on ascending widths; on-line
/// residuals scale like 0.707/width, off-line ones level off near
/// |lambda_offset|, the distance to the spectrum.
WitnessResult approximate_point_spectrum_witness(
    double c, double tau, const std::vector<double>& widths,
    double lambda_offset = 0.0);

}  // namespace zetalab
