#pragma once

#include <vector>

namespace zetalab {

/// Weighted prime-power count f(x) = sum over p^n <= x of 1/n, with the
/// half-weight convention exactly at jump points (x an integer power of a
/// prime contributes 1/(2n) there). Exact sieve; 1 < x <= 1e7, raises
/// RangeExceeded beyond.
double prime_power_count(double x);

/// Reconstruction of f(x) from the first n_zeros critical zeros:
///   Li(x) - sum_rho Li(x^rho) - int_x^inf dt/(t(t^2-1) log t) - log 2,
/// with the zero sum taken in conjugate pairs (Li(x^rho) = Ei(rho log x))
/// and the trivial-zero tail integral by adaptive quadrature. Intended at
/// midpoints (non-jump x); x > 2. Raises ZeroTableTooSmall when n_zeros
/// needs ordinates beyond the certified table range.
double explicit_formula_reconstruction(double x, long n_zeros);

struct DualityRow {
    double x = 0.0;
    double exact = 0.0;
    double reconstructed = 0.0;
    double abs_error = 0.0;
    long n_zeros = 0;
};

/// Exact count vs zero-sum reconstruction over an x grid, one row per x.
std::vector<DualityRow> duality_report(const std::vector<double>& x_grid,
                                       long n_zeros);

}  // namespace zetalab
