#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>

#include "oracles.hpp"
#include "zetalab/arith.hpp"
#include "zetalab/dimensions.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/fractal_string.hpp"
#include "zetalab/zeta.hpp"

using zetalab::cxd;
using zetalab::errc;
using zetalab::Error;
using zetalab::FractalString;
using zetalab::Window;

namespace {

bool raises(errc want, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code() == want;
  }
  return false;
}

// residue by trapezoid contour integration on a circle around omega;
// exponentially accurate for a simple pole at the center
cxd contour_residue(const std::function<cxd(cxd)>& f, cxd omega, double radius) {
  const int n = 256;
  cxd acc = 0.0;
  for (int k = 0; k < n; ++k) {
    double th = 2.0 * M_PI * k / n;
    cxd offset = radius * std::exp(cxd(0.0, th));
    acc += f(omega + offset) * offset;
  }
  return acc / static_cast<double>(n);
}

// counting/tube duality evaluated from the raw data only
double duality_volume(const FractalString& s, double eps) {
  double two_eps = 2.0 * eps;
  double n = zetalab::geometric_counting(s, 1.0 / two_eps);
  double below = 0.0;
  for (const auto& e : s.lengths)
    if (e.length < two_eps) below += e.weight * e.length;
  return two_eps * n + below + s.tail_length();
}

const double kD = std::log(2.0) / std::log(3.0);
const double kP = 2.0 * M_PI / std::log(3.0);

}  // namespace

TEST_CASE("cantor string: lengths, total length, counting staircase") {
  FractalString cs = zetalab::cantor_string();
  REQUIRE(cs.lattice.has_value());
  CHECK(cs.lengths[0].length == doctest::Approx(1.0 / 3).epsilon(1e-14));
  CHECK(cs.lengths[0].weight == 1.0);
  CHECK(cs.lengths[1].length == doctest::Approx(1.0 / 9).epsilon(1e-14));
  CHECK(cs.lengths[1].weight == 2.0);
  CHECK(cs.lengths[2].weight == 4.0);
  CHECK(cs.total_length() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(cs.tail_length() < 1e-12);

  CHECK(zetalab::geometric_counting(cs, 10.0) == 3.0);
  CHECK(zetalab::geometric_counting(cs, 3.0) == 0.5);
  CHECK(zetalab::geometric_counting(cs, 9.0) == 2.0);
  CHECK(zetalab::geometric_counting(cs, 2.0) == 0.0);
  // closed form 2^floor(log3 x) - 1 away from jumps
  std::mt19937 rng(7u);
  std::uniform_real_distribution<double> ux(1.5, 8000.0);
  for (int i = 0; i < 300; ++i) {
    double x = ux(rng);
    double k = std::floor(std::log(x) / std::log(3.0));
    double expect = std::pow(2.0, k) - 1.0;
    CHECK(zetalab::geometric_counting(cs, x) == expect);
  }
  CHECK(raises(errc::depth_cap_exceeded, [&] {
    zetalab::geometric_counting(cs, std::pow(3.0, 70.0));
  }));
}

TEST_CASE("tube volume: exact values and the counting duality") {
  FractalString cs = zetalab::cantor_string();
  CHECK(zetalab::direct_tube_volume(cs, 1.0 / 18.0) ==
        doctest::Approx(7.0 / 9.0).epsilon(1e-13));
  CHECK(zetalab::direct_tube_volume(cs, 1.0 / 6.0) ==
        doctest::Approx(1.0).epsilon(1e-13));
  CHECK(zetalab::direct_tube_volume(cs, 0.4) ==
        doctest::Approx(1.0).epsilon(1e-13));
  FractalString unit = zetalab::make_string({{1.0, 1.0}});
  CHECK(zetalab::direct_tube_volume(unit, 0.2) == doctest::Approx(0.4));

  std::mt19937 rng(11u);
  std::uniform_real_distribution<double> ue(-6.0, -0.4);
  FractalString pl = zetalab::power_law_string(0.5, 1.0, 4000);
  FractalString two = zetalab::make_string({{1.0, 1.0}, {0.5, 3.0}});
  for (int i = 0; i < 60; ++i) {
    double eps = std::pow(10.0, ue(rng));
    for (const FractalString* s : {&cs, &two}) {
      double direct = zetalab::direct_tube_volume(*s, eps);
      CHECK(direct == doctest::Approx(duality_volume(*s, eps)).epsilon(1e-11));
      CHECK(direct <= s->total_length() * (1.0 + 1e-12));
    }
    if (2.0 * eps > pl.lengths.back().length) {
      double direct = zetalab::direct_tube_volume(pl, eps);
      CHECK(direct == doctest::Approx(duality_volume(pl, eps)).epsilon(1e-11));
    }
  }
  // monotonicity of V
  double prev = 0.0;
  for (double eps = 1e-6; eps < 0.3; eps *= 1.7) {
    double v = zetalab::direct_tube_volume(cs, eps);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK(raises(errc::depth_cap_exceeded, [] {
    zetalab::direct_tube_volume(zetalab::power_law_string(0.6, 1.0, 100), 1e-5);
  }));
}

TEST_CASE("minkowski estimation: lattice oscillates, power law settles") {
  // start small: the coarse-epsilon extremes carry a 2^(1-D) t^D / 2^n
  // finite-depth correction that only fades once n is large
  std::vector<double> grid;
  for (double e = 1e-3; e > 5e-9; e /= 1.25) grid.push_back(e);

  FractalString cs = zetalab::cantor_string();
  auto est = zetalab::estimate_minkowski(cs, kD, grid);
  // analytic contents: max/min over one period of (t+1)/t^(1-D) * 2^(1-D)
  double upper_true = std::pow(2.0, 2.0 - kD);
  double lower_true = std::pow(2.0, 1.0 - kD) * std::pow(kD, -kD) *
                      std::pow(1.0 - kD, kD - 1.0);
  CHECK(est.upper_content > est.lower_content * 1.02);
  CHECK(est.upper_content == doctest::Approx(upper_true).epsilon(0.02));
  CHECK(est.lower_content == doctest::Approx(lower_true).epsilon(0.02));
  CHECK(est.dimension == doctest::Approx(kD).epsilon(0.02));

  double d = 0.6;
  FractalString pl = zetalab::power_law_string(d, 1.0, 2000000);
  std::vector<double> fine;
  for (double e = 1e-3; e > 1e-8; e /= 1.3) fine.push_back(e);
  auto pe = zetalab::estimate_minkowski(pl, d, fine);
  double content = std::pow(2.0, 1.0 - d) / (1.0 - d);
  CHECK(pe.upper_content < pe.lower_content * 1.02);
  CHECK(pe.upper_content == doctest::Approx(content).epsilon(0.02));
  CHECK(pe.dimension == doctest::Approx(d).epsilon(0.01));

  FractalString unit = zetalab::make_string({{1.0, 1.0}});
  auto ue = zetalab::estimate_minkowski(unit, 0.5, fine);
  CHECK(std::abs(ue.dimension) < 1e-9);

  CHECK(raises(errc::grid_too_short, [&] {
    zetalab::estimate_minkowski(cs, kD, {1e-2, 1e-3, 1e-4});
  }));
  CHECK(raises(errc::grid_too_short, [&] {
    std::vector<double> shallow;
    for (double e = 1e-2; e > 1e-3; e /= 1.1) shallow.push_back(e);
    zetalab::estimate_minkowski(cs, kD, shallow);
  }));
}

TEST_CASE("string constructors: validation") {
  CHECK(raises(errc::invalid_argument, [] { zetalab::make_string({}); }));
  CHECK(raises(errc::invalid_argument,
               [] { zetalab::make_string({{1.0, 1.0}, {2.0, 1.0}}); }));
  CHECK(raises(errc::invalid_argument,
               [] { zetalab::make_string({{-1.0, 1.0}}); }));
  CHECK(raises(errc::invalid_argument, [] { zetalab::lattice_string(3, 3, 5); }));
  CHECK(raises(errc::invalid_argument, [] { zetalab::lattice_string(0.5, 0.2, 5); }));
  CHECK(raises(errc::invalid_argument,
               [] { zetalab::power_law_string(1.5, 1.0, 10); }));
}

TEST_CASE("lapidus-maier string: counting matches the oscillating target") {
  double D = 0.5, tau = 10.0, beta = 0.01;
  FractalString lm = zetalab::lapidus_maier_string(D, tau, beta, 100);
  REQUIRE(lm.lengths.size() == 100);
  auto target = [&](double x) {
    return std::pow(x, D) * (1.0 + 2.0 * beta * std::cos(tau * std::log(x)));
  };
  double r_max = 1.0 / lm.lengths.back().length;
  std::mt19937 rng(23u);
  std::uniform_real_distribution<double> ux(1.0, r_max);
  int checked = 0;
  for (int i = 0; i < 400 && checked < 200; ++i) {
    double x = ux(rng);
    double g = target(x);
    if (std::abs(g - std::round(g)) < 1e-6) continue;  // too close to a jump
    CHECK(zetalab::geometric_counting(lm, x) == std::floor(g));
    ++checked;
  }
  CHECK(checked == 200);

  FractalString pl = zetalab::power_law_string(D, 1.0, 50);
  FractalString degenerate = zetalab::lapidus_maier_string(D, tau, 0.0, 50);
  for (int j = 0; j < 50; ++j)
    CHECK(degenerate.lengths[j].length ==
          doctest::Approx(pl.lengths[j].length).epsilon(1e-10));

  CHECK(raises(errc::non_monotone_target, [] {
    zetalab::lapidus_maier_string(0.5, 10.0, 0.3, 10);
  }));
}

TEST_CASE("generalized strings: atoms, counting, measure conversion") {
  auto h = zetalab::harmonic_string(100.0);
  CHECK(h.atoms.size() == 100);
  CHECK(zetalab::geometric_counting(h, 10.5) == 10.0);
  CHECK(zetalab::geometric_counting(h, 10.0) == 9.5);
  CHECK(raises(errc::depth_cap_exceeded,
               [&] { zetalab::geometric_counting(h, 101.0); }));

  auto h2 = zetalab::prime_harmonic_string(2, 100.0);
  CHECK(h2.atoms.size() == 6);  // 2,4,8,16,32,64
  CHECK(h2.atoms.back().x == 64.0);

  auto pr = zetalab::prime_string(50.0);
  // atoms at prime powers, weight log p; check a few against enumeration
  double expect = 0.0;
  for (auto p : zetalab::primes_up_to(50))
    for (double q = double(p); q <= 30.5; q *= double(p))
      expect += std::log(double(p));
  CHECK(zetalab::geometric_counting(pr, 30.5) == doctest::Approx(expect).epsilon(1e-13));

  auto m = zetalab::string_to_measure(zetalab::cantor_string());
  CHECK(m.atoms[0].x == doctest::Approx(3.0));
  CHECK(m.atoms[0].w.real() == 1.0);
  CHECK(m.atoms[1].x == doctest::Approx(9.0));
  CHECK(m.atoms[1].w.real() == 2.0);
  CHECK(m.atoms[2].w.real() == 4.0);
  auto unit = zetalab::string_to_measure(zetalab::make_string({{1.0, 1.0}}));
  CHECK(unit.atoms.size() == 1);
  CHECK(unit.atoms[0].x == 1.0);
}

TEST_CASE("geometric zeta: closed forms, series cross-checks, errors") {
  FractalString cs = zetalab::cantor_string();
  CHECK(zetalab::geometric_zeta(cs, cxd(2.0, 0.0)).real() ==
        doctest::Approx(1.0 / 7.0).epsilon(1e-14));
  CHECK(zetalab::geometric_zeta(cs, cxd(0.0, 0.0)).real() ==
        doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(zetalab::geometric_zeta(cs, cxd(1.0, 0.0)).real() ==
        doctest::Approx(1.0).epsilon(1e-14));
  // closed form against the raw truncated Dirichlet series
  FractalString expanded = zetalab::make_string(cs.lengths);
  for (cxd s : {cxd(2.0, 0.0), cxd(1.3, 4.0), cxd(0.9, -11.0)}) {
    cxd closed = zetalab::geometric_zeta(cs, s);
    cxd series = zetalab::geometric_zeta(expanded, s);
    // truncated series carries a (2/3^sigma)^(depth+1) tail, ~1.4e-9 at 0.9
    double tail = std::pow(2.0 * std::pow(3.0, -s.real()), 69.0) /
                  std::abs(1.0 - 2.0 * std::pow(3.0, -s.real()));
    CHECK(std::abs(closed - series) < 1e-12 + 2.0 * tail);
  }
  CHECK(raises(errc::pole_hit,
               [&] { zetalab::geometric_zeta(cs, cxd(kD, 0.0)); }));
  CHECK(raises(errc::pole_hit,
               [&] { zetalab::geometric_zeta(cs, cxd(kD, kP)); }));

  FractalString pl = zetalab::power_law_string(0.6, 1.0, 1000);
  CHECK(std::abs(zetalab::geometric_zeta(pl, cxd(3.0, 0.0)) -
                 zetalab::zeta(cxd(5.0, 0.0))) < 1e-9);
  CHECK(raises(errc::abscissa_violation,
               [&] { zetalab::geometric_zeta(pl, cxd(0.7, 0.0)); }));
  CHECK(raises(errc::abscissa_violation,
               [&] { zetalab::geometric_zeta(pl, cxd(0.5, 0.0)); }));
  CHECK(zetalab::power_law_string(0.6, 1.0, 2000000).total_length() ==
        doctest::Approx(zetalab::zeta(cxd(5.0 / 3.0, 0.0)).real())
            .epsilon(1e-6));

  auto h = zetalab::harmonic_string(10.0);
  CHECK(std::abs(zetalab::geometric_zeta(h, cxd(2.0, 0.0)) -
                 zetalab::zeta(cxd(2.0, 0.0))) == 0.0);
  auto h2 = zetalab::prime_harmonic_string(2, 100.0);
  CHECK(zetalab::geometric_zeta(h2, cxd(2.0, 0.0)).real() ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  auto meas = zetalab::string_to_measure(cs);
  CHECK(std::abs(zetalab::geometric_zeta(meas, cxd(2.0, 0.0)) -
                 cxd(1.0 / 7.0, 0.0)) < 1e-12);

  // prime string: -zeta'/zeta against direct weighted prime-power sum
  auto pr = zetalab::prime_string(100.0);
  cxd closed = zetalab::geometric_zeta(pr, cxd(2.0, 0.0));
  double direct = 0.0;
  for (auto p : zetalab::primes_up_to(1000000)) {
    double lp = std::log(double(p));
    for (double q = double(p); q <= 1e6; q *= double(p)) direct += lp / (q * q);
  }
  CHECK(std::abs(closed.real() - direct) < 2e-5);
  CHECK(closed.real() == doctest::Approx(0.569961).epsilon(2e-5));
}

TEST_CASE("abscissa of convergence") {
  CHECK(zetalab::abscissa_of_convergence(zetalab::cantor_string()) ==
        doctest::Approx(kD).epsilon(1e-14));
  CHECK(zetalab::abscissa_of_convergence(
            zetalab::power_law_string(0.6, 1.0, 10000)) ==
        doctest::Approx(0.6).epsilon(0.01));
  CHECK(zetalab::abscissa_of_convergence(zetalab::make_string({{1.0, 1.0}})) ==
        0.0);
  CHECK(zetalab::abscissa_of_convergence(
            zetalab::lapidus_maier_string(0.5, 10.0, 0.01, 5000)) ==
        doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("complex dimensions: lattice line, residues, contour oracle") {
  FractalString cs = zetalab::cantor_string();
  auto dims = zetalab::complex_dimensions_in(cs, Window{0.0, 12.0});
  REQUIRE(dims.size() == 5);  // n in {-2,...,2}, p ~ 5.7192
  for (const auto& d : dims) {
    CHECK(d.omega.real() == doctest::Approx(kD).epsilon(1e-14));
    CHECK(d.order == 1);
    // pole bookkeeping: m b^-omega = 1
    cxd den = 1.0 - 2.0 * std::exp(-d.omega * std::log(3.0));
    CHECK(std::abs(den) < 1e-10);
    CHECK(d.residue.real() ==
          doctest::Approx(1.0 / (2.0 * std::log(3.0))).epsilon(1e-14));
    CHECK(d.residue.imag() == 0.0);
    cxd oracle_res = contour_residue(
        [&](cxd z) { return zetalab::geometric_zeta(cs, z); }, d.omega, 1.0);
    CHECK(std::abs(d.residue - oracle_res) < 1e-10);
  }
  CHECK(dims[0].omega.imag() == doctest::Approx(-2.0 * kP));
  CHECK(dims[2].omega.imag() == 0.0);
  CHECK(dims[4].omega.imag() == doctest::Approx(2.0 * kP));

  // degenerate lattice with m = 1: poles on the imaginary axis
  FractalString half = zetalab::lattice_string(2.0, 1.0, 40);
  auto d2 = zetalab::complex_dimensions_in(half, Window{-0.5, 12.0});
  REQUIRE(d2.size() == 3);
  double p2 = 2.0 * M_PI / std::log(2.0);
  CHECK(d2[0].omega == cxd(0.0, -p2));
  CHECK(d2[1].omega == cxd(0.0, 0.0));
  CHECK(d2[2].omega == cxd(0.0, p2));
  for (const auto& d : d2)
    CHECK(std::abs(d.residue - contour_residue(
                                   [&](cxd z) {
                                     return zetalab::geometric_zeta(half, z);
                                   },
                                   d.omega, 1.0)) < 1e-10);

  CHECK(raises(errc::unsupported, [] {
    zetalab::complex_dimensions_in(zetalab::make_string({{0.5, 1.0}}),
                                   Window{0.0, 10.0});
  }));
  // window below the pole line: nothing visible
  CHECK(zetalab::complex_dimensions_in(cs, Window{0.9, 10.0}).empty());
}

TEST_CASE("tube formula via dimensions vs direct oracle") {
  FractalString cs = zetalab::cantor_string();
  Window w{0.0, 200.0};
  double v = zetalab::tube_formula_via_dimensions(cs, 1.0 / 18.0, w);
  CHECK(std::abs(v - 7.0 / 9.0) / (7.0 / 9.0) < 1e-3);
  CHECK(std::abs(zetalab::tube_formula_via_dimensions(cs, 1.0 / 6.0, w) - 1.0) <
        1e-3);
  CHECK(std::abs(zetalab::tube_formula_via_dimensions(cs, 0.4, w) - 1.0) < 2e-3);
  // error shrinks like 1/t_max
  double eps = 1e-4;
  double direct = zetalab::direct_tube_volume(cs, eps);
  double e50 =
      std::abs(zetalab::tube_formula_via_dimensions(cs, eps, {0.0, 50.0}) -
               direct);
  double e400 =
      std::abs(zetalab::tube_formula_via_dimensions(cs, eps, {0.0, 400.0}) -
               direct);
  CHECK(e400 < e50);
  CHECK(raises(errc::unsupported, [] {
    zetalab::tube_formula_via_dimensions(zetalab::make_string({{0.5, 1.0}}),
                                         0.1, Window{0.0, 10.0});
  }));
}

TEST_CASE("explicit counting reconstruction at level 1 and level 0") {
  FractalString cs = zetalab::cantor_string();
  Window w{0.0, 500.0};
  CHECK(std::abs(zetalab::explicit_counting(cs, 10.0, w, 1) - 3.0) < 0.05);
  CHECK(std::abs(zetalab::explicit_counting(cs, 1.5, w, 1) - 0.0) < 0.05);
  // midpoint error decreases as the window grows (probe x = 30)
  double exact = zetalab::geometric_counting(cs, 30.0);
  double e100 =
      std::abs(zetalab::explicit_counting(cs, 30.0, {0.0, 100.0}, 1) - exact);
  double e800 =
      std::abs(zetalab::explicit_counting(cs, 30.0, {0.0, 800.0}, 1) - exact);
  CHECK(e800 < e100);
  // level 0 density integrates to the staircase increment
  double sum = 0.0;
  int n = 4000;
  double a = 2.0, b = 10.0;
  for (int i = 0; i <= n; ++i) {
    double x = a + (b - a) * i / n;
    double f = zetalab::explicit_counting(cs, x, {0.0, 300.0}, 0);
    double wgt = (i == 0 || i == n) ? 0.5 : 1.0;
    sum += wgt * f;
  }
  sum *= (b - a) / n;
  CHECK(std::abs(sum - 3.0) < 0.05);
  CHECK(raises(errc::invalid_argument,
               [&] { zetalab::explicit_counting(cs, 10.0, w, 2); }));
}

TEST_CASE("spectral state density: constant term and restricted window") {
  FractalString cs = zetalab::cantor_string();
  // window excluding all nonreal poles reduces to two terms
  Window narrow{0.0, 3.0};
  double x = 20.0;
  double got = zetalab::density_spectral_states(cs, x, narrow);
  double res = 1.0 / (2.0 * std::log(3.0));
  double manual =
      1.0 + res * zetalab::zeta(cxd(kD, 0.0)).real() * std::pow(x, kD - 1.0);
  CHECK(got == doctest::Approx(manual).epsilon(1e-12));
  CHECK(zetalab::geometric_zeta(cs, cxd(1.0, 0.0)).real() ==
        doctest::Approx(1.0));
}

TEST_CASE("string JSON round trip") {
  namespace fs = std::filesystem;
  fs::create_directories("string_io_test");
  std::string p1 = "string_io_test/cantor.json";
  std::string p2 = "string_io_test/explicit.json";
  zetalab::save_string(p1, zetalab::cantor_string());
  FractalString c = zetalab::load_string(p1);
  REQUIRE(c.lattice.has_value());
  CHECK(c.lattice->b == 3.0);
  CHECK(c.lattice->m == 2.0);
  CHECK(c.lattice->depth == 68);

  FractalString e = zetalab::make_string({{0.5, 2.0}, {0.25, 4.0}});
  zetalab::save_string(p2, e);
  FractalString back = zetalab::load_string(p2);
  REQUIRE(back.lengths.size() == 2);
  CHECK(back.lengths[0].length == 0.5);
  CHECK(back.lengths[1].weight == 4.0);

  CHECK(raises(errc::io_error, [] { zetalab::load_string("no/such/file.json"); }));
  fs::remove_all("string_io_test");
}
