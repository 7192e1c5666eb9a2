#include "zetalab/invertibility.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "zetalab/errors.hpp"
#include "zetalab/grid_function.hpp"

namespace zetalab {

namespace {

constexpr double kPoleRadius = 1e-3;  // puncture around s = 1 on the c = 1 line
constexpr double kMinResolution = 1e-6;
constexpr double kRefineTol = 1e-9;

bool near(double a, double b, double eps = 1e-12) {
    return std::abs(a - b) < eps;
}

/// Golden-section argmin of f on [a, b]; assumes one interior minimum.
double golden_min(const std::function<double(double)>& f, double a, double b,
                  double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

struct HalfScan {
    std::vector<CurvePoint> pts;  // ascending tau >= 0, refined minima merged
    double resolution = 0.0;
    double min_modulus = 0.0;
    double argmin_tau = 0.0;
    double slope_bound = 0.0;  // max sampled |dv/dtau| over adjacent pairs
};

/// Offsets indistinguishable from the lattice are snapped back to it so
/// difference quotients never see a vanishing gap.
double snap_phase(double phase) {
    if (!(phase >= 0.0) || !(phase < 1.0) || !std::isfinite(phase))
        raise(errc::invalid_argument, "sample offset must lie in [0, 1)");
    if (phase < 1e-6 || phase > 1.0 - 1e-6) return 0.0;
    return phase;
}

/// Samples of `val` on [lo, hi] with adjacent gaps <= resolution, with every
/// interior local modulus minimum refined by golden section and merged in.
/// phase in (0, 1) shifts the interior lattice by that fraction of a step
/// while keeping both endpoints.
HalfScan scan_segment(const std::function<cxd(double)>& val, double lo,
                      double hi, double resolution, double phase = 0.0) {
    HalfScan out;
    long n = std::max<long>(2, (long)std::ceil((hi - lo) / resolution));
    double step = (hi - lo) / double(n);
    out.resolution = step;
    std::vector<double> taus;
    taus.reserve((size_t)n + 2);
    taus.push_back(lo);
    if (phase > 0.0) {
        for (long i = 0; i < n; ++i)
            taus.push_back(lo + step * (double(i) + phase));
    } else {
        for (long i = 1; i < n; ++i) taus.push_back(lo + step * double(i));
    }
    taus.push_back(hi);
    size_t m = taus.size();
    out.pts.reserve(m + 16);
    std::vector<double> mod(m);
    for (size_t i = 0; i < m; ++i) {
        cxd v = val(taus[i]);
        out.pts.push_back({taus[i], v});
        mod[i] = std::abs(v);
    }
    for (size_t i = 0; i + 1 < m; ++i) {
        double dt = taus[i + 1] - taus[i];
        double slope =
            std::abs(out.pts[i + 1].value - out.pts[i].value) / dt;
        out.slope_bound = std::max(out.slope_bound, slope);
    }
    std::vector<CurvePoint> extra;
    auto objective = [&](double tau) { return std::abs(val(tau)); };
    for (size_t i = 1; i + 1 < m; ++i) {
        if (mod[i] <= mod[i - 1] && mod[i] <= mod[i + 1]) {
            double t = golden_min(objective, taus[i - 1], taus[i + 1],
                                  std::max(kRefineTol, 1e-12 * (hi - lo)));
            extra.push_back({t, val(t)});
        }
    }
    out.pts.insert(out.pts.end(), extra.begin(), extra.end());
    std::sort(out.pts.begin(), out.pts.end(),
              [](const CurvePoint& a, const CurvePoint& b) {
                  return a.tau < b.tau;
              });
    out.min_modulus = std::abs(out.pts.front().value);
    out.argmin_tau = out.pts.front().tau;
    for (const CurvePoint& p : out.pts) {
        double m2 = std::abs(p.value);
        if (m2 < out.min_modulus) {
            out.min_modulus = m2;
            out.argmin_tau = p.tau;
        }
    }
    return out;
}

/// Mirror a nonnegative-tau scan to the conjugate-symmetric full curve.
SpectrumCurve assemble_curve(const TruncationSpec& spec, const HalfScan& half,
                             bool pole_flag) {
    SpectrumCurve curve;
    curve.trunc = spec;
    curve.resolution = half.resolution;
    curve.min_modulus = half.min_modulus;
    curve.argmin_tau = half.argmin_tau;
    curve.pole_flag = pole_flag;
    curve.points.reserve(2 * half.pts.size());
    for (auto it = half.pts.rbegin(); it != half.pts.rend(); ++it) {
        if (it->tau > 0.0)
            curve.points.push_back({-it->tau, std::conj(it->value)});
    }
    curve.points.insert(curve.points.end(), half.pts.begin(), half.pts.end());
    return curve;
}

void validate_spec(const TruncationSpec& spec) {
    if (!std::isfinite(spec.c) || !std::isfinite(spec.tau_min) ||
        !std::isfinite(spec.tau_max) || spec.tau_min < 0.0 ||
        spec.tau_max <= spec.tau_min)
        raise(errc::invalid_argument,
              "truncation needs finite c and 0 <= tau_min < tau_max");
}

std::function<cxd(double)> zeta_on_line(double c) {
    return [c](double tau) { return zeta(cxd(c, tau)); };
}

/// Largest sampled difference quotient within `radius` of tau0. Pairs
/// closer than a quarter step are refinement clusters; their quotients
/// are dominated by rounding and are skipped.
double slope_near(const HalfScan& half, double tau0, double radius) {
    double slope = 1e-12;
    for (size_t i = 0; i + 1 < half.pts.size(); ++i) {
        const CurvePoint& a = half.pts[i];
        const CurvePoint& b = half.pts[i + 1];
        if (b.tau < tau0 - radius || a.tau > tau0 + radius) continue;
        double dt = b.tau - a.tau;
        if (dt < 0.25 * half.resolution) continue;
        slope = std::max(slope, std::abs(b.value - a.value) / dt);
    }
    return slope;
}

/// Scan with the decision threshold of ten Lipschitz allowances, using
/// the slope bound local to the minimum. The step is tightened once when
/// the (expected or measured) minimum does not clear the threshold.
struct VerdictScan {
    HalfScan half;
    double threshold = 0.0;
};

VerdictScan adaptive_scan(const std::function<cxd(double)>& val, double lo,
                          double hi, double res0, double expected_floor,
                          double phase = 0.0) {
    VerdictScan vs;
    vs.half = scan_segment(val, lo, hi, res0, phase);
    double slope = slope_near(vs.half, vs.half.argmin_tau, 1.0);
    vs.threshold = 10.0 * vs.half.resolution * slope;
    double target =
        expected_floor > 0.0 ? expected_floor : vs.half.min_modulus;
    if (target <= vs.threshold) {
        // A rescan only helps when a coarser-than-necessary step caused
        // the failure; a genuinely tiny minimum stays under the threshold
        // at every feasible resolution.
        double needed = target / (25.0 * slope);
        if (needed >= kMinResolution && needed < vs.half.resolution) {
            vs.half = scan_segment(val, lo, hi, needed, phase);
            slope = slope_near(vs.half, vs.half.argmin_tau, 1.0);
            vs.threshold = 10.0 * vs.half.resolution * slope;
        }
    }
    return vs;
}

double default_resolution(double lo, double hi) {
    return std::min(0.005, std::max((hi - lo) / 2000.0, 1e-4));
}

/// Euler-product floor zeta(2c)/zeta(c) <= |zeta(c + i tau)| for c > 1.
double euler_floor(double c) {
    return (zeta(cxd(2.0 * c, 0.0)) / zeta(cxd(c, 0.0))).real();
}

}  // namespace

const char* decision_name(Decision d) {
    switch (d) {
        case Decision::Invertible: return "Invertible";
        case Decision::NotInvertible: return "NotInvertible";
        case Decision::Undetermined: return "Undetermined";
    }
    return "?";
}

const char* quasi_decision_name(QuasiDecision d) {
    switch (d) {
        case QuasiDecision::QuasiInvertibleUpTo: return "QuasiInvertibleUpTo";
        case QuasiDecision::NotQuasiInvertible: return "NotQuasiInvertible";
        case QuasiDecision::Undetermined: return "Undetermined";
    }
    return "?";
}

SpectrumCurve truncated_spectrum_curve(const TruncationSpec& spec,
                                       double resolution,
                                       double sample_offset) {
    validate_spec(spec);
    if (!(resolution > 0.0) || !std::isfinite(resolution))
        raise(errc::invalid_argument, "resolution must be positive");
    double phase = snap_phase(sample_offset);
    double lo = spec.tau_min;
    double hi = spec.tau_max;
    bool pole_flag = false;
    if (near(spec.c, 1.0, 1e-8)) {
        if (hi <= kPoleRadius)
            raise(errc::pole_in_range,
                  "segment lies inside the puncture around the pole at s = 1");
        if (lo < kPoleRadius) {
            lo = kPoleRadius;
            pole_flag = true;
        }
    }
    HalfScan half =
        scan_segment(zeta_on_line(spec.c), lo, hi, resolution, phase);
    return assemble_curve(spec, half, pole_flag);
}

InvertibilityVerdict truncated_invertibility(const TruncationSpec& spec,
                                             double sample_offset) {
    validate_spec(spec);
    double phase = snap_phase(sample_offset);
    InvertibilityVerdict v;
    v.trunc = spec;
    const double c = spec.c;
    const double lo = spec.tau_min;
    const double hi = spec.tau_max;
    const double res0 = default_resolution(lo, hi);

    if (near(c, 1.0, 1e-8)) {
        HalfScan half = scan_segment(zeta_on_line(c),
                                     std::max(lo, kPoleRadius), hi, res0,
                                     phase);
        v.decision = Decision::Undetermined;
        v.min_modulus = half.min_modulus;
        v.argmin_tau = half.argmin_tau;
        v.threshold =
            10.0 * half.resolution * slope_near(half, half.argmin_tau, 1.0);
        v.note = "pole of the symbol at tau = 0; segment punctured, verdict "
                 "undetermined by policy";
        return v;
    }

    if (c < 0.0 && near(c / 2.0, std::round(c / 2.0)) && lo < 1e-12) {
        v.decision = Decision::NotInvertible;
        v.witnesses.push_back(0.0);
        v.note = "trivial zero of the symbol at the segment midpoint";
        return v;
    }

    if (near(c, 0.5)) {
        ZeroTable table = ensure_zeros(hi, 1e-9, default_zero_cache_path());
        for (const ZetaZero& z : table.zeros)
            if (z.t - z.half_width > lo && z.t + z.half_width < hi)
                v.witnesses.push_back(z.t);
        VerdictScan vs =
            adaptive_scan(zeta_on_line(c), lo, hi, res0, 0.0, phase);
        v.min_modulus = vs.half.min_modulus;
        v.argmin_tau = vs.half.argmin_tau;
        v.threshold = vs.threshold;
        if (!v.witnesses.empty()) {
            v.decision = Decision::NotInvertible;
            v.note = "certified sign-change brackets locate symbol zeros on "
                     "the segment";
        } else {
            v.decision = Decision::Invertible;
            v.note = "certified zero table has no ordinate inside the segment";
        }
        return v;
    }

    if (c > 1.0) {
        double floor = euler_floor(c);
        double coarse = std::max(res0, (hi - lo) / 20000.0);
        VerdictScan vs =
            adaptive_scan(zeta_on_line(c), lo, hi, coarse, floor, phase);
        v.decision = Decision::Invertible;
        v.min_modulus = vs.half.min_modulus;
        v.argmin_tau = vs.half.argmin_tau;
        v.threshold = vs.threshold;
        v.note = "Euler-product floor zeta(2c)/zeta(c) bounds the symbol "
                 "modulus away from zero";
        return v;
    }

    VerdictScan vs = adaptive_scan(zeta_on_line(c), lo, hi, res0, 0.0, phase);
    v.min_modulus = vs.half.min_modulus;
    v.argmin_tau = vs.half.argmin_tau;
    v.threshold = vs.threshold;
    if (v.min_modulus > v.threshold) {
        v.decision = Decision::Invertible;
        v.note = "sampled minimum clears ten Lipschitz allowances of the scan";
    } else {
        v.decision = Decision::Undetermined;
        v.note = "sampled minimum within the scan threshold; no zero "
                 "certification available off the critical line";
    }
    return v;
}

QuasiVerdict quasi_invertibility_scan(double c, double t_max,
                                      double sample_offset) {
    if (!std::isfinite(c) || !std::isfinite(t_max) || t_max <= 0.0)
        raise(errc::invalid_argument, "need finite c and t_max > 0");
    double phase = snap_phase(sample_offset);
    QuasiVerdict q;
    q.c = c;
    q.horizon = t_max;
    const double res0 = default_resolution(0.0, t_max);

    if (near(c, 1.0, 1e-8)) {
        HalfScan half =
            scan_segment(zeta_on_line(c), kPoleRadius, t_max, res0, phase);
        q.decision = QuasiDecision::Undetermined;
        q.min_modulus = half.min_modulus;
        q.argmin_tau = half.argmin_tau;
        q.note = "pole of the symbol at tau = 0; verdict undetermined by "
                 "policy";
        return q;
    }

    if (near(c, 0.5)) {
        if (t_max > 1e4)
            raise(errc::invalid_argument,
                  "horizon exceeds the certified zero-table range (1e4)");
        ZeroTable table = ensure_zeros(t_max, 1e-9, default_zero_cache_path());
        std::vector<double> below;
        for (const ZetaZero& z : table.zeros)
            if (z.t + z.half_width < t_max) below.push_back(z.t);
        q.zero_count = (long)below.size();
        HalfScan half = scan_segment(zeta_on_line(c), 0.0, t_max, 0.005, phase);
        q.min_modulus = half.min_modulus;
        q.argmin_tau = half.argmin_tau;
        if (!below.empty()) {
            q.decision = QuasiDecision::NotQuasiInvertible;
            q.witness_tau = below.front();
            q.note = "certified zero ordinates below the horizon obstruct "
                     "every truncation that reaches them";
        } else {
            q.decision = QuasiDecision::QuasiInvertibleUpTo;
            q.note = "no certified zero ordinate below the horizon";
        }
        return q;
    }

    if (c > 1.0) {
        q.analytic_floor = euler_floor(c);
        double coarse = std::min(0.05, std::max(t_max / 20000.0, res0));
        VerdictScan vs = adaptive_scan(zeta_on_line(c), 0.0, t_max, coarse,
                                       q.analytic_floor, phase);
        q.decision = QuasiDecision::QuasiInvertibleUpTo;
        q.min_modulus = vs.half.min_modulus;
        q.argmin_tau = vs.half.argmin_tau;
        q.note = "Euler-product floor zeta(2c)/zeta(c) holds on the whole "
                 "line, at any horizon";
        return q;
    }

    VerdictScan vs =
        adaptive_scan(zeta_on_line(c), 0.0, t_max, res0, 0.0, phase);
    q.min_modulus = vs.half.min_modulus;
    q.argmin_tau = vs.half.argmin_tau;
    if (q.min_modulus > vs.threshold) {
        q.decision = QuasiDecision::QuasiInvertibleUpTo;
        q.note = "sampled minimum clears the scan threshold up to the "
                 "horizon; evidence is horizon-limited";
    } else {
        q.decision = QuasiDecision::Undetermined;
        q.note = "sampled minimum within the scan threshold; no zero "
                 "certification available off the critical line";
    }
    return q;
}

std::vector<QuasiVerdict> rh_diagnostic(const std::vector<double>& c_grid,
                                        double t_max, double sample_offset) {
    if (c_grid.empty())
        raise(errc::invalid_argument, "empty diagnostic grid");
    for (double c : c_grid)
        if (!(c > 0.0) || !(c < 1.0) || std::abs(c - 0.5) < 1e-9)
            raise(errc::invalid_argument,
                  "diagnostic grid must lie in (0,1) and avoid 1/2");
    std::vector<QuasiVerdict> rows;
    rows.reserve(c_grid.size());
    for (double c : c_grid)
        rows.push_back(quasi_invertibility_scan(c, t_max, sample_offset));
    return rows;
}

LineProbeReport full_line_spectrum_probe(double c, double t_max,
                                         const std::vector<cxd>& targets,
                                         double sample_offset) {
    if (!std::isfinite(c) || near(c, 1.0, 1e-8))
        raise(errc::invalid_argument,
              "probe undefined on the pole line c = 1");
    if (!(t_max > 0.0) || !std::isfinite(t_max))
        raise(errc::invalid_argument, "need t_max > 0");
    double phase = snap_phase(sample_offset);
    LineProbeReport rep;
    rep.c = c;
    rep.tau_max = t_max;
    if (c > 1.0) {
        rep.annulus_valid = true;
        rep.annulus_inner = euler_floor(c);
        rep.annulus_outer = zeta(cxd(c, 0.0)).real();
    }
    double res = std::min(0.01, std::max(t_max / 20000.0, 1e-3));
    long n = std::max<long>(2, (long)std::ceil(t_max / res));
    double step = t_max / double(n);
    std::vector<double> taus;
    taus.reserve((size_t)n + 2);
    taus.push_back(0.0);
    if (phase > 0.0) {
        for (long i = 0; i < n; ++i)
            taus.push_back(step * (double(i) + phase));
    } else {
        for (long i = 1; i < n; ++i) taus.push_back(step * double(i));
    }
    taus.push_back(t_max);
    std::vector<cxd> vals(taus.size());
    for (size_t i = 0; i < taus.size(); ++i) vals[i] = zeta(cxd(c, taus[i]));
    auto signed_val = [&](double tau) {
        return tau >= 0.0 ? zeta(cxd(c, tau))
                          : std::conj(zeta(cxd(c, -tau)));
    };
    for (const cxd& z : targets) {
        SpectrumTarget st;
        st.target = z;
        double best = std::abs(vals[0] - z);
        double best_tau = 0.0;
        for (size_t i = 0; i < taus.size(); ++i) {
            double dp = std::abs(vals[i] - z);
            if (dp < best) {
                best = dp;
                best_tau = taus[i];
            }
            double dm = std::abs(std::conj(vals[i]) - z);
            if (dm < best) {
                best = dm;
                best_tau = -taus[i];
            }
        }
        double a = std::max(-t_max, best_tau - step);
        double b = std::min(t_max, best_tau + step);
        auto dist = [&](double tau) { return std::abs(signed_val(tau) - z); };
        double t_ref = golden_min(dist, a, b, kRefineTol);
        double d_ref = dist(t_ref);
        if (d_ref < best) {
            best = d_ref;
            best_tau = t_ref;
        }
        st.min_distance = best;
        st.argmin_tau = best_tau;
        rep.targets.push_back(st);
    }
    return rep;
}

SpectrumCurve global_operator_curve(double c, double t_max, double resolution,
                                    double sample_offset) {
    if (!std::isfinite(c) || !std::isfinite(t_max) || t_max <= 0.0)
        raise(errc::invalid_argument, "need finite c and t_max > 0");
    if (near(c, 0.0) || near(c, 1.0))
        raise(errc::pole_in_range,
              "segment meets a singular point of the completed symbol at "
              "s = 0 or s = 1");
    double phase = snap_phase(sample_offset);
    if (resolution <= 0.0)
        resolution = std::min(0.01, std::max(t_max / 5000.0, 1e-3));
    auto val = [c](double tau) { return xi(cxd(c, tau)); };
    TruncationSpec spec{c, 0.0, t_max};
    HalfScan half = scan_segment(val, 0.0, t_max, resolution, phase);
    return assemble_curve(spec, half, false);
}

WitnessResult approximate_point_spectrum_witness(
    double c, double tau, const std::vector<double>& widths,
    double lambda_offset) {
    if (!std::isfinite(c) || c < 0.0)
        raise(errc::invalid_argument, "weight exponent c must be >= 0");
    if (widths.empty())
        raise(errc::invalid_argument, "need at least one window width");
    for (size_t i = 0; i < widths.size(); ++i) {
        if (!(widths[i] > 0.0) || !std::isfinite(widths[i]))
            raise(errc::invalid_argument, "widths must be positive");
        if (i > 0 && widths[i] <= widths[i - 1])
            raise(errc::invalid_argument, "widths must be strictly ascending");
    }
    // Gaussian support (1e-12 relative cut) spans |u| <= sqrt(2 ln 1e12);
    // an off-line weight tilt shifts the weighted mass by |offset| w^2.
    const double spread = 7.44;
    const double w_max = widths.back();
    const double half_span = std::ceil(spread * w_max +
                                       std::abs(lambda_offset) * w_max * w_max +
                                       kGuardBand + 1.0);
    const double lam_re = c + lambda_offset;
    if (std::abs(lam_re) * half_span > 690.0)
        raise(errc::invalid_argument,
              "window too wide for the weight range (exp overflow)");
    const double h = std::ldexp(1.0, -10);
    const cxd lambda(lam_re, tau);

    WitnessResult res;
    res.c = c;
    res.tau = tau;
    res.lambda_offset = lambda_offset;
    for (double w : widths) {
        auto window = [&](double t) {
            double mag = lam_re * t - t * t / (2.0 * w * w);
            double amp = std::exp(mag);
            return cxd(amp * std::cos(tau * t), amp * std::sin(tau * t));
        };
        GridFunction f = make_grid_function(-half_span, half_span, h, c, window);
        GridFunction d = infinitesimal_shift(f);
        GridFunction g = zero_like(f);
        for (size_t i = 0; i < f.size(); ++i)
            g.samples[i] = d.samples[i] - lambda * f.samples[i];
        double r = weighted_norm(g) / weighted_norm(f);
        res.points.push_back({w, r});
    }
    return res;
}

}  // namespace zetalab
