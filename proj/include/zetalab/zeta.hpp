#pragma once

#include <complex>
#include <string>
#include <vector>

namespace zetalab {

using cxd = std::complex<double>;

/// Accuracy request for series evaluations. abs_tol >= 1e-14,
/// max_terms >= 16; raising either past the defaults trades time
/// for tighter tail bounds.
struct EvalAccuracy {
    double abs_tol = 1e-12;
    long max_terms = 1000000;
};

/// A certified zero bracket on the critical line: the zero ordinate lies
/// in [t - half_width, t + half_width].
struct ZetaZero {
    double t = 0.0;
    double half_width = 0.0;
};

struct ZeroTable {
    double t_max = 0.0;
    double tol = 0.0;
    std::vector<ZetaZero> zeros;  // sorted by t ascending
};

/// Riemann zeta via Euler-Maclaurin summation. Starts with
/// max(ceil|Im s|, 30) leading terms plus Bernoulli corrections through
/// B12, doubling the term count until the tail estimate meets abs_tol.
/// Arguments with Re s < 0 are reflected through the functional equation.
/// Raises PoleAtOne when |s - 1| < 1e-8, AccuracyExceeded when max_terms
/// cannot meet abs_tol.
cxd zeta(cxd s, const EvalAccuracy& acc = {});

/// zeta'(s) by term-wise differentiation of the same expansion
/// (reflection formula differentiated for Re s < 0).
cxd zeta_derivative(cxd s, const EvalAccuracy& acc = {});

/// Completed zeta xi(s) = pi^(-s/2) Gamma(s/2) zeta(s), computed in log
/// space so moderate |Im s| does not underflow the Gamma factor.
/// Raises PoleAtZeroOrOne at s = 0 and s = 1.
cxd xi(cxd s, const EvalAccuracy& acc = {});

/// Gamma on the complex plane (Lanczos g=7 with reflection).
/// Raises PoleAtNonpositiveInteger at 0, -1, -2, ...
cxd gamma_fn(cxd s);

/// log Gamma, correct modulo 2*pi*i (exact under exp()).
cxd log_gamma(cxd s);

/// Digamma psi(s) = Gamma'(s)/Gamma(s).
cxd digamma(cxd s);

/// Real-valued rescaling of xi(1/2 + it): same zeros, unit-modulus phase
/// factor instead of the exponentially small Gamma modulus, so sign
/// scans stay well-conditioned for large t.
double hardy_z(double t, const EvalAccuracy& acc = {});

/// All critical-line zero ordinates in (0, t_max], each bracketed by sign
/// changes of hardy_z and bisected until half_width <= acc.abs_tol.
/// Scan step 0.01 with one automatic 10x refinement when two sign changes
/// share a cell; raises ScanStepTooCoarse if the refinement still cannot
/// separate them. t_max <= 1e4.
std::vector<ZetaZero> find_critical_zeros(double t_max,
                                          const EvalAccuracy& acc = {},
                                          double scan_step = 0.01);

/// Principal-value logarithmic integral li(x) = PV int_0^x dt/log t.
/// Raises BranchAtOne near x = 1.
double log_integral(double x);

/// Exponential integral Ei continued to the plane cut along (-inf, 0]:
/// power series near the origin and in the right wedge, continued-fraction
/// evaluation in the left sector, optimally truncated asymptotic series far
/// right. li(x^rho) in explicit formulas is complex_ei(rho * log x).
cxd complex_ei(cxd z);

/// Zero-table cache file handling. Format: one header line
/// "# zetalab-zeros v1 t_max=<v> tol=<v>" followed by "t<TAB>half_width"
/// records at 12 significant digits, sorted ascending.
void save_zero_table(const std::string& path, const ZeroTable& table);
ZeroTable load_zero_table(const std::string& path);

/// Returns a table covering (0, t_max] at tolerance tol, reusing the cache
/// file when it already covers the request (cache_path empty = no cache).
/// Writes are atomic (temp file + rename), one writer at a time.
ZeroTable ensure_zeros(double t_max, double tol, const std::string& cache_path);

/// $ZETALAB_CACHE/zeros.tsv when the variable is set, else empty.
std::string default_zero_cache_path();

}  // namespace zetalab
