#include "zetalab/explicit_formula.hpp"

#include <cmath>
#include <cstdint>
#include <functional>

#include "zetalab/arith.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/zeta.hpp"

namespace zetalab {

namespace {

constexpr double kMaxX = 1e7;
constexpr double kTableRange = 1e4;  // certified zero-ordinate range

/// Grow-only prime cache so counting over an x grid sieves once.
const std::vector<std::uint64_t>& cached_primes(std::uint64_t need) {
    static std::vector<std::uint64_t> primes;
    static std::uint64_t limit = 0;
    if (need > limit) {
        limit = std::max<std::uint64_t>(need, std::max<std::uint64_t>(
                                                  2 * limit, 1024));
        primes = primes_up_to(limit);
    }
    return primes;
}

/// Ordinate estimate for the n-th critical zero (counting formula
/// N(T) ~ (T/2pi) log(T/(2pi e)) + 7/8, inverted by fixed point).
double nth_zero_ordinate_estimate(long n) {
    double T = std::max(30.0, 2.0 * M_PI * double(n));
    for (int i = 0; i < 60; ++i) {
        double l = std::log(T / (2.0 * M_PI * std::exp(1.0)));
        T = 2.0 * M_PI * double(n) / std::max(l, 0.5);
    }
    return T;
}

/// In-process zero table holding at least n zeros, grown monotonically.
const ZeroTable& zeros_at_least(long n) {
    static ZeroTable cache;
    if ((long)cache.zeros.size() >= n) return cache;
    double guess = nth_zero_ordinate_estimate(n) * 1.05 + 20.0;
    if (guess > 1.02 * kTableRange)
        raise(errc::zero_table_too_small,
              "requested zero count needs ordinates beyond the certified "
              "table range");
    double t = std::max(guess, cache.t_max * 1.1);
    for (;;) {
        cache = ensure_zeros(std::min(t, kTableRange), 1e-9,
                             default_zero_cache_path());
        if ((long)cache.zeros.size() >= n) return cache;
        if (t >= kTableRange)
            raise(errc::zero_table_too_small,
                  "certified table range exhausted before reaching the "
                  "requested zero count");
        t *= 1.3;
    }
}

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a,
                     double fa, double b, double fb, double fm, double whole,
                     double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = simpson(a, fa, m, fm, flm);
    double right = simpson(m, fm, b, fb, frm);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_step(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = simpson(a, fa, b, fb, fm);
    return adaptive_step(f, a, fa, b, fb, fm, whole, tol, 40);
}

/// int_x^inf dt / (t (t^2 - 1) log t), mapped by u = 1/t onto (0, 1/x]
/// where the integrand u / ((1 - u^2)(-log u)) vanishes at u = 0.
double trivial_zero_tail(double x) {
    auto g = [](double u) {
        if (u <= 0.0) return 0.0;
        return u / ((1.0 - u * u) * (-std::log(u)));
    };
    return adaptive_simpson(g, 0.0, 1.0 / x, 1e-13);
}

}  // namespace

double prime_power_count(double x) {
    if (!std::isfinite(x) || !(x > 1.0))
        raise(errc::invalid_argument, "prime-power count needs x > 1");
    if (x > kMaxX)
        raise(errc::range_exceeded,
              "prime-power count supported up to x = 1e7");
    const std::uint64_t xi = (std::uint64_t)std::floor(x);
    const bool at_integer = (double)xi == x;
    const auto& primes = cached_primes(xi);
    double total = 0.0;
    for (std::uint64_t p : primes) {
        if (p > xi) break;
        std::uint64_t q = p;
        int n = 1;
        for (;;) {
            if (at_integer && q == xi)
                total += 0.5 / double(n);
            else
                total += 1.0 / double(n);
            if (q > xi / p) break;
            q *= p;
            if (q > xi) break;
            ++n;
        }
    }
    return total;
}

double explicit_formula_reconstruction(double x, long n_zeros) {
    if (!std::isfinite(x) || !(x > 2.0))
        raise(errc::invalid_argument,
              "reconstruction defined for x > 2 (midpoint policy)");
    if (n_zeros < 0)
        raise(errc::invalid_argument, "zero count must be nonnegative");
    const double lx = std::log(x);
    double value = log_integral(x) - trivial_zero_tail(x) - std::log(2.0);
    if (n_zeros > 0) {
        const ZeroTable& table = zeros_at_least(n_zeros);
        for (long k = 0; k < n_zeros; ++k) {
            cxd rho(0.5, table.zeros[(size_t)k].t);
            // Li(x^rho) + Li(x^conj(rho)) = 2 Re Ei(rho log x)
            value -= 2.0 * complex_ei(rho * lx).real();
        }
    }
    return value;
}

std::vector<DualityRow> duality_report(const std::vector<double>& x_grid,
                                       long n_zeros) {
    std::vector<DualityRow> rows;
    rows.reserve(x_grid.size());
    for (double x : x_grid) {
        DualityRow row;
        row.x = x;
        row.exact = prime_power_count(x);
        row.reconstructed = explicit_formula_reconstruction(x, n_zeros);
        row.abs_error = std::abs(row.reconstructed - row.exact);
        row.n_zeros = n_zeros;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace zetalab
