#include "zetalab/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "zetalab/errors.hpp"

namespace zetalab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kLogPi = 1.144729885849400174143427351353058712;
constexpr double kLog2 = 0.693147180559945309417232121458176568;
constexpr double kEulerGamma = 0.577215664901532860606512090082402431;
constexpr double kPoleGuard = 1e-8;

// B_2, B_4, ..., B_14.
constexpr double kBernoulli[7] = {
    1.0 / 6.0,   -1.0 / 30.0, 1.0 / 42.0,      -1.0 / 30.0,
    5.0 / 66.0,  -691.0 / 2730.0, 7.0 / 6.0,
};

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

cxd pow_int(double base, cxd s) {
    // base^(-s) with a real log; base > 0.
    return std::exp(-s * std::log(base));
}

// log(sin z) modulo 2*pi*i, stable for large |Im z|.
cxd log_sin(cxd z) {
    double y = z.imag();
    if (std::abs(y) <= 20.0) return std::log(std::sin(z));
    cxd i(0.0, 1.0);
    if (y > 0.0) {
        // sin z = -exp(-iz)/(2i) * (1 - exp(2iz))
        return -i * z + std::log(i * 0.5) + std::log(1.0 - std::exp(2.0 * i * z));
    }
    return i * z + std::log(-i * 0.5) + std::log(1.0 - std::exp(-2.0 * i * z));
}

cxd cot(cxd z) {
    double y = z.imag();
    if (std::abs(y) <= 20.0) return std::cos(z) / std::sin(z);
    cxd i(0.0, 1.0);
    // cot z = i (e^{2iz} + 1) / (e^{2iz} - 1)
    cxd w = std::exp((y > 0.0 ? 2.0 : -2.0) * i * z);  // |w| < 1 either way
    if (y > 0.0) return i * (w + 1.0) / (w - 1.0);
    return i * (1.0 + w) / (1.0 - w);
}

bool near_nonpositive_integer(cxd s, double guard) {
    if (s.real() > 0.5) return false;
    double r = std::round(s.real());
    return r <= 0.0 && std::abs(s.real() - r) < guard && std::abs(s.imag()) < guard;
}

// Lanczos g = 7, 9 coefficients; relative error ~1e-13 over the tested range.
constexpr double kLanczos[9] = {
    0.99999999999980993,   676.5203681218851,     -1259.1392167224028,
    771.32342877765313,    -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,  9.9843695780195716e-6, 1.5056327351493116e-7,
};

cxd log_gamma_core(cxd z) {
    // Requires Re z >= 0.5.
    z -= 1.0;
    cxd a(kLanczos[0], 0.0);
    for (int k = 1; k < 9; ++k) a += kLanczos[k] / (z + static_cast<double>(k));
    cxd t = z + 7.5;
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

struct EmExpansion {
    long n;        // leading terms actually used
    cxd value;     // zeta(s) partial data, filled by caller
};

// Tail estimate after the B12 correction: first omitted Bernoulli term
// times the standard |s + 2K+1| / (sigma + 2K+1) growth factor.
double em_tail_bound(cxd s, long n) {
    double sigma = s.real();
    cxd rising(1.0, 0.0);
    for (int j = 0; j <= 12; ++j) rising *= s + static_cast<double>(j);
    double t = std::abs(kBernoulli[6]) / factorial(14) * std::abs(rising) *
               std::pow(static_cast<double>(n), -(sigma + 13.0));
    double growth = std::abs(s + 13.0) / (sigma + 13.0);
    return t * growth;
}

long choose_terms(cxd s, const EvalAccuracy& acc) {
    long n = std::max<long>(30, static_cast<long>(std::ceil(std::abs(s.imag()))));
    while (em_tail_bound(s, n) > 0.5 * acc.abs_tol) {
        if (n >= acc.max_terms)
            raise(errc::accuracy_exceeded,
                  "Euler-Maclaurin tail above abs_tol at max_terms");
        n = std::min(acc.max_terms, 2 * n);
    }
    return n;
}

// Euler-Maclaurin for Re s >= 0 (works below too, but reflection is used
// there so the term count never has to grow with negative sigma).
cxd zeta_em(cxd s, const EvalAccuracy& acc) {
    long n = choose_terms(s, acc);
    cxd sum(0.0, 0.0);
    for (long k = 1; k < n; ++k) sum += pow_int(static_cast<double>(k), s);
    double dn = static_cast<double>(n);
    cxd n_to_minus_s = pow_int(dn, s);
    sum += n_to_minus_s * dn / (s - 1.0);  // N^{1-s}/(s-1)
    sum += 0.5 * n_to_minus_s;
    cxd rising = s;                 // (s)_{2k-1}
    cxd npow = n_to_minus_s / dn;   // N^{-s-2k+1}
    for (int k = 1; k <= 6; ++k) {
        sum += kBernoulli[k - 1] / factorial(2 * k) * rising * npow;
        rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
        npow /= dn * dn;
    }
    return sum;
}

// d/ds of zeta_em with the identical term count, so both values share one
// truncation policy.
cxd zeta_em_derivative(cxd s, const EvalAccuracy& acc) {
    long n = choose_terms(s, acc);
    cxd sum(0.0, 0.0);
    for (long k = 2; k < n; ++k) {
        double lk = std::log(static_cast<double>(k));
        sum += -lk * pow_int(static_cast<double>(k), s);
    }
    double dn = static_cast<double>(n);
    double ln = std::log(dn);
    cxd n_to_minus_s = pow_int(dn, s);
    cxd sm1 = s - 1.0;
    sum += n_to_minus_s * dn * (-ln / sm1 - 1.0 / (sm1 * sm1));
    sum += -0.5 * ln * n_to_minus_s;
    // rising = (s)_{2k-1}; drising carried by the product rule so that
    // s at 0 or a negative integer stays finite
    cxd rising = s;
    cxd drising(1.0, 0.0);
    cxd npow = n_to_minus_s / dn;
    for (int k = 1; k <= 6; ++k) {
        cxd coeff = kBernoulli[k - 1] / factorial(2 * k);
        sum += coeff * npow * (drising - rising * ln);
        cxd f = (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
        drising = drising * f + rising * (2.0 * s + static_cast<double>(4 * k - 1));
        rising *= f;
        npow /= dn * dn;
    }
    return sum;
}

// chi(s) in zeta(s) = chi(s) zeta(1-s), evaluated through logs.
cxd log_chi(cxd s) {
    return s * kLog2 + (s - 1.0) * kLogPi + log_sin(0.5 * kPi * s) +
           log_gamma(1.0 - s);
}

// d/ds log chi(s)
cxd log_chi_derivative(cxd s) {
    return cxd(kLog2 + kLogPi, 0.0) + 0.5 * kPi * cot(0.5 * kPi * s) -
           digamma(1.0 - s);
}

void check_accuracy(const EvalAccuracy& acc) {
    if (acc.abs_tol < 1e-14) raise(errc::invalid_argument, "abs_tol below 1e-14");
    if (acc.max_terms < 16) raise(errc::invalid_argument, "max_terms below 16");
}

}  // namespace

cxd log_gamma(cxd s) {
    if (near_nonpositive_integer(s, 1e-12))
        raise(errc::pole_at_nonpositive_integer, "log_gamma at a pole");
    if (s.real() >= 0.5) return log_gamma_core(s);
    // Reflection: log Gamma(s) = log pi - log sin(pi s) - log Gamma(1-s),
    // modulo 2*pi*i.
    return cxd(kLogPi, 0.0) - log_sin(kPi * s) - log_gamma_core(1.0 - s);
}

cxd gamma_fn(cxd s) {
    if (near_nonpositive_integer(s, 1e-12))
        raise(errc::pole_at_nonpositive_integer, "gamma at a pole");
    return std::exp(log_gamma(s));
}

cxd digamma(cxd s) {
    if (near_nonpositive_integer(s, 1e-12))
        raise(errc::pole_at_nonpositive_integer, "digamma at a pole");
    if (s.real() < 0.5)
        return digamma(1.0 - s) - kPi * cot(kPi * s);
    cxd acc(0.0, 0.0);
    while (s.real() < 10.0) {
        acc -= 1.0 / s;
        s += 1.0;
    }
    // Asymptotic series: log z - 1/(2z) - sum B_2k / (2k z^{2k}).
    cxd inv = 1.0 / s;
    cxd inv2 = inv * inv;
    cxd r = std::log(s) - 0.5 * inv;
    cxd p = inv2;
    for (int k = 1; k <= 6; ++k) {
        r -= kBernoulli[k - 1] / (2.0 * k) * p;
        p *= inv2;
    }
    return acc + r;
}

cxd zeta(cxd s, const EvalAccuracy& acc) {
    check_accuracy(acc);
    if (std::abs(s - cxd(1.0, 0.0)) < kPoleGuard)
        raise(errc::pole_at_one, "zeta evaluated inside the pole guard at s=1");
    if (s.real() < 0.0)
        return std::exp(log_chi(s)) * zeta_em(1.0 - s, acc);
    return zeta_em(s, acc);
}

cxd zeta_derivative(cxd s, const EvalAccuracy& acc) {
    check_accuracy(acc);
    if (std::abs(s - cxd(1.0, 0.0)) < kPoleGuard)
        raise(errc::pole_at_one, "zeta' evaluated inside the pole guard at s=1");
    if (s.real() < 0.0) {
        cxd chi = std::exp(log_chi(s));
        cxd z1 = zeta_em(1.0 - s, acc);
        cxd dz1 = zeta_em_derivative(1.0 - s, acc);
        return chi * (log_chi_derivative(s) * z1 - dz1);
    }
    return zeta_em_derivative(s, acc);
}

cxd xi(cxd s, const EvalAccuracy& acc) {
    if (std::abs(s) < kPoleGuard || std::abs(s - cxd(1.0, 0.0)) < kPoleGuard)
        raise(errc::pole_at_zero_or_one, "xi evaluated at s=0 or s=1");
    // Gamma(s/2) poles at nonpositive even integers cancel against trivial
    // zeros of zeta; route those arguments through the mirror point.
    if (near_nonpositive_integer(0.5 * s, 1e-9)) s = 1.0 - s;
    cxd w = -0.5 * s * kLogPi + log_gamma(0.5 * s);
    return std::exp(w) * zeta(s, acc);
}

double hardy_z(double t, const EvalAccuracy& acc) {
    cxd s(0.5, t);
    cxd w = -0.5 * s * kLogPi + log_gamma(0.5 * s);
    cxd phase = std::exp(cxd(0.0, w.imag()));
    return (phase * zeta(s, acc)).real();
}

namespace {

int sgn(double x) { return (x > 0.0) - (x < 0.0); }

ZetaZero bisect_zero(double lo, double hi, double z_lo, double tol,
                     const EvalAccuracy& acc) {
    // Invariant: sign change between lo and hi.
    int s_lo = sgn(z_lo);
    while (0.5 * (hi - lo) > tol) {
        double mid = 0.5 * (lo + hi);
        double zm = hardy_z(mid, acc);
        if (zm == 0.0) {
            double w = 0.25 * (hi - lo);
            return {mid, std::min(w, tol)};
        }
        if (sgn(zm) == s_lo)
            lo = mid;
        else
            hi = mid;
    }
    return {0.5 * (lo + hi), 0.5 * (hi - lo)};
}

// Scans [a, b] at the given step. Each cell is checked at its midpoint as
// well, so a pair of zeros inside one cell is visible as two half-cell
// sign changes; such cells are rescanned once at 10x resolution.
void scan_cells(double a, double b, double step, bool refined,
                const EvalAccuracy& acc, double tol,
                std::vector<ZetaZero>& out) {
    long cells = static_cast<long>(std::ceil((b - a) / step));
    double z_left = hardy_z(a, acc);
    for (long i = 0; i < cells; ++i) {
        double lo = a + i * step;
        double hi = std::min(b, lo + step);
        double mid = 0.5 * (lo + hi);
        double z_mid = hardy_z(mid, acc);
        double z_right = hardy_z(hi, acc);
        int changes = (sgn(z_left) != sgn(z_mid)) + (sgn(z_mid) != sgn(z_right));
        if (changes == 2) {
            if (refined)
                raise(errc::scan_step_too_coarse,
                      "two sign changes share one refined cell");
            scan_cells(lo, hi, step / 10.0, true, acc, tol, out);
        } else if (changes == 1) {
            if (sgn(z_left) != sgn(z_mid))
                out.push_back(bisect_zero(lo, mid, z_left, tol, acc));
            else
                out.push_back(bisect_zero(mid, hi, z_mid, tol, acc));
        }
        z_left = z_right;
    }
}

}  // namespace

std::vector<ZetaZero> find_critical_zeros(double t_max, const EvalAccuracy& acc,
                                          double scan_step) {
    check_accuracy(acc);
    if (t_max <= 0.0 || t_max > 1e4)
        raise(errc::range_exceeded, "zero scan limited to 0 < t_max <= 1e4");
    if (scan_step <= 0.0 || scan_step > 0.5)
        raise(errc::invalid_argument, "scan_step must lie in (0, 0.5]");
    std::vector<ZetaZero> zeros;
    scan_cells(0.0, t_max, scan_step, false, acc, acc.abs_tol, zeros);
    std::sort(zeros.begin(), zeros.end(),
              [](const ZetaZero& x, const ZetaZero& y) { return x.t < y.t; });
    return zeros;
}

cxd complex_ei(cxd z) {
    if (std::abs(z) < 1e-300) raise(errc::invalid_argument, "Ei at z=0");
    if (z.real() <= 0.0 && std::abs(z.imag()) < 1e-14)
        raise(errc::invalid_argument, "Ei on the branch cut (-inf, 0]");
    double r = std::abs(z);
    bool right_wedge = z.real() >= std::abs(z.imag());
    // Power series: gamma + log z + sum z^k/(k k!). Peak-term cancellation
    // stays below 1e-9 absolute for |z| <= 20 and below 1e-11 relative on
    // the right wedge up to |z| = 48 where e^{Re z} dominates.
    if (r <= 20.0 || (right_wedge && r <= 48.0)) {
        cxd sum(0.0, 0.0);
        cxd term(1.0, 0.0);
        for (int k = 1; k <= 400; ++k) {
            term *= z / static_cast<double>(k);
            cxd add = term / static_cast<double>(k);
            sum += add;
            if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum)) && k > 4) break;
        }
        return kEulerGamma + std::log(z) + sum;
    }
    if (right_wedge) {
        // Optimally truncated asymptotic tail, e^z/z sum_k k!/z^k. Smallest
        // term is ~ e^{-|z|} sqrt(|z|), below 1e-19 relative for |z| > 48.
        cxd inv = 1.0 / z;
        cxd term(1.0, 0.0);
        cxd sum(1.0, 0.0);
        double prev = 1.0;
        for (int k = 1; k <= 200; ++k) {
            term *= static_cast<double>(k) * inv;
            double mag = std::abs(term);
            if (mag > prev) break;
            sum += term;
            prev = mag;
            if (mag < 1e-18) break;
        }
        cxd head = std::exp(z) * inv * sum;
        if (z.imag() == 0.0) return head;  // principal value on the axis
        return head + cxd(0.0, z.imag() > 0.0 ? kPi : -kPi);
    }
    // Left sector: continued fraction for E1(-z) (modified Lentz), then the
    // cut-plane identity Ei(z) = -E1(-z) + i pi sign(Im z). Here -z stays
    // away from the E1 cut, |arg(-z)| <= 3 pi / 4.
    cxd w = -z;
    cxd b = w + 1.0;
    cxd c(1e308, 0.0);
    cxd d = 1.0 / b;
    cxd h = d;
    for (int j = 1; j <= 400; ++j) {
        double a = -static_cast<double>(j) * static_cast<double>(j);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        cxd delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) {
            cxd e1 = std::exp(-w) * h;
            double sign = z.imag() > 0.0 ? 1.0 : -1.0;
            return -e1 + cxd(0.0, sign * kPi);
        }
    }
    raise(errc::accuracy_exceeded, "Ei continued fraction did not converge");
}

double log_integral(double x) {
    if (x <= 1.0 + 1e-12)
        raise(errc::branch_at_one, "real li(x) branch needs x > 1");
    return complex_ei(cxd(std::log(x), 0.0)).real();
}

namespace {

std::string format_sig12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

void save_zero_table(const std::string& path, const ZeroTable& table) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
    }
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) raise(errc::io_error, "cannot open " + tmp.string());
        out << "# zetalab-zeros v1 t_max=" << format_sig12(table.t_max)
            << " tol=" << format_sig12(table.tol) << "\n";
        for (const ZetaZero& z : table.zeros) {
            // widen so the bracket still holds after 12-digit quantization
            double hw = std::max(z.half_width, 2e-11 * std::abs(z.t));
            out << format_sig12(z.t) << "\t" << format_sig12(hw) << "\n";
        }
        if (!out) raise(errc::io_error, "short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) raise(errc::io_error, "rename failed: " + ec.message());
}

ZeroTable load_zero_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(errc::io_error, "cannot open " + path);
    std::string header;
    std::getline(in, header);
    ZeroTable table;
    if (std::sscanf(header.c_str(), "# zetalab-zeros v1 t_max=%lf tol=%lf",
                    &table.t_max, &table.tol) != 2)
        raise(errc::io_error, "bad zero-cache header in " + path);
    double t, w;
    while (in >> t >> w) table.zeros.push_back({t, w});
    for (std::size_t i = 1; i < table.zeros.size(); ++i)
        if (table.zeros[i - 1].t > table.zeros[i].t)
            raise(errc::io_error, "zero cache not sorted: " + path);
    return table;
}

ZeroTable ensure_zeros(double t_max, double tol, const std::string& cache_path) {
    if (!cache_path.empty() && std::filesystem::exists(cache_path)) {
        ZeroTable cached = load_zero_table(cache_path);
        if (cached.t_max >= t_max && cached.tol <= tol) {
            ZeroTable out{t_max, cached.tol, {}};
            for (const ZetaZero& z : cached.zeros)
                if (z.t <= t_max) out.zeros.push_back(z);
            return out;
        }
    }
    EvalAccuracy acc;
    acc.abs_tol = tol;
    ZeroTable table{t_max, tol, find_critical_zeros(t_max, acc)};
    if (!cache_path.empty()) save_zero_table(cache_path, table);
    return table;
}

std::string default_zero_cache_path() {
    const char* dir = std::getenv("ZETALAB_CACHE");
    if (dir == nullptr || *dir == '\0') return "";
    return (std::filesystem::path(dir) / "zeros.tsv").string();
}

}  // namespace zetalab
