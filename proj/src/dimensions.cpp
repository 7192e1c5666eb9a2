#include "zetalab/dimensions.hpp"

#include <algorithm>
#include <cmath>

#include "zetalab/errors.hpp"
#include "zetalab/fit.hpp"
#include "zetalab/zeta.hpp"

namespace zetalab {

namespace {

constexpr double kPoleTol = 1e-10;
constexpr double kSeriesTailTol = 1e-9;

cxd lattice_zeta(const LatticeRule& r, cxd s) {
  cxd num = std::exp(-s * std::log(r.b));
  cxd den = 1.0 - r.m * num;
  if (std::abs(den) < kPoleTol)
    raise(errc::pole_hit, "geometric zeta evaluated at a pole");
  return num / den;
}

double lattice_dimension(const LatticeRule& r) {
  return std::log(r.m) / std::log(r.b);
}

}  // namespace

cxd geometric_zeta(const FractalString& s, cxd z) {
  if (s.lattice) return lattice_zeta(*s.lattice, z);
  if (s.power_law) {
    double D = s.power_law->dim;
    double sigma = z.real();
    if (sigma <= D)
      raise(errc::abscissa_violation, "series diverges at Re s <= dimension");
    double J = static_cast<double>(s.lengths.size());
    double tail = std::pow(s.power_law->scale, sigma) *
                  std::pow(J, 1.0 - sigma / D) / (sigma / D - 1.0);
    if (tail > kSeriesTailTol)
      raise(errc::abscissa_violation,
            "truncated series tail above tolerance; raise Re s or depth");
  }
  cxd sum = 0.0;
  for (const LengthEntry& e : s.lengths)
    sum += e.weight * std::exp(z * std::log(e.length));
  return sum;
}

cxd geometric_zeta(const GeneralizedString& s, cxd z) {
  switch (s.kind) {
    case GeneratorKind::Harmonic:
      return zeta(z);
    case GeneratorKind::Prime:
      return -zeta_derivative(z) / zeta(z);
    case GeneratorKind::PrimeHarmonic: {
      cxd q = std::exp(-z * std::log(static_cast<double>(s.base)));
      cxd den = 1.0 - q;
      if (std::abs(den) < kPoleTol)
        raise(errc::pole_hit, "geometric zeta evaluated at a pole");
      return q / den;
    }
    case GeneratorKind::None:
      break;
  }
  cxd sum = 0.0;
  for (const Atom& a : s.atoms) sum += a.w * std::exp(-z * std::log(a.x));
  return sum;
}

double abscissa_of_convergence(const FractalString& s) {
  if (s.lattice) return lattice_dimension(*s.lattice);
  // distinct reciprocal lengths with cumulative counts
  std::vector<double> lr, ln;
  double count = 0.0;
  for (const LengthEntry& e : s.lengths) {
    count += e.weight;
    double r = 1.0 / e.length;
    if (!lr.empty() && std::log(r) == lr.back())
      ln.back() = std::log(count);
    else {
      lr.push_back(std::log(r));
      ln.push_back(std::log(count));
    }
  }
  if (lr.size() < 3) return 0.0;
  // fit on the tail where the growth rate has settled
  std::size_t skip = lr.size() * 2 / 5;
  std::vector<double> x(lr.begin() + skip, lr.end());
  std::vector<double> y(ln.begin() + skip, ln.end());
  return fit_line(x, y).slope;
}

std::vector<ComplexDimension> complex_dimensions_in(const FractalString& s,
                                                    const Window& w) {
  if (!s.lattice)
    raise(errc::unsupported, "no meromorphic continuation for explicit lengths");
  if (!(w.t_max > 0.0)) raise(errc::invalid_argument, "window needs t_max > 0");
  const LatticeRule& r = *s.lattice;
  double D = lattice_dimension(r);
  std::vector<ComplexDimension> dims;
  if (D < w.sigma_min) return dims;
  double p = 2.0 * M_PI / std::log(r.b);
  double residue = 1.0 / (r.m * std::log(r.b));
  long n_max = static_cast<long>(std::floor(w.t_max / p));
  for (long n = -n_max; n <= n_max; ++n)
    dims.push_back({cxd(D, static_cast<double>(n) * p), cxd(residue, 0.0), 1});
  return dims;
}

namespace {

// shared window plumbing for the explicit-formula style sums
struct LatticeWindowData {
  std::vector<ComplexDimension> dims;
  bool zero_in_window;
  bool zero_is_pole;
};

LatticeWindowData window_data(const FractalString& s, const Window& w) {
  LatticeWindowData d;
  d.dims = complex_dimensions_in(s, w);
  d.zero_in_window = w.sigma_min <= 0.0;
  d.zero_is_pole = false;
  for (const ComplexDimension& cd : d.dims)
    if (std::abs(cd.omega) < 1e-12) d.zero_is_pole = true;
  return d;
}

}  // namespace

double tube_formula_via_dimensions(const FractalString& s, double epsilon,
                                   const Window& w) {
  if (!(epsilon > 0.0)) raise(errc::invalid_argument, "epsilon must be positive");
  LatticeWindowData d = window_data(s, w);
  for (const ComplexDimension& cd : d.dims)
    if (std::abs(cd.omega - 1.0) < 1e-9)
      raise(errc::pole_at_one_in_window, "tube formula needs 1 off the pole set");
  double le = std::log(2.0 * epsilon);
  cxd sum = 0.0;
  for (const ComplexDimension& cd : d.dims)
    sum += cd.residue * std::exp((1.0 - cd.omega) * le) /
           (cd.omega * (1.0 - cd.omega));
  double v = sum.real();
  if (d.zero_in_window && !d.zero_is_pole)
    v += 2.0 * epsilon * geometric_zeta(s, cxd(0.0, 0.0)).real();
  return v;
}

double explicit_counting(const FractalString& s, double x, const Window& w,
                         int level) {
  if (!(x > 0.0)) raise(errc::invalid_argument, "x must be positive");
  if (level != 0 && level != 1)
    raise(errc::invalid_argument, "level must be 0 or 1");
  LatticeWindowData d = window_data(s, w);
  double lx = std::log(x);
  cxd sum = 0.0;
  if (level == 1) {
    for (const ComplexDimension& cd : d.dims)
      sum += cd.residue * std::exp(cd.omega * lx) / cd.omega;
    double v = sum.real();
    if (d.zero_in_window && !d.zero_is_pole)
      v += geometric_zeta(s, cxd(0.0, 0.0)).real();
    return v;
  }
  for (const ComplexDimension& cd : d.dims)
    sum += cd.residue * std::exp((cd.omega - 1.0) * lx);
  return sum.real();
}

double density_spectral_states(const FractalString& s, double x,
                               const Window& w) {
  if (!(x > 0.0)) raise(errc::invalid_argument, "x must be positive");
  LatticeWindowData d = window_data(s, w);
  for (const ComplexDimension& cd : d.dims)
    if (std::abs(cd.omega - 1.0) < 1e-9)
      raise(errc::pole_at_one, "density formula needs 1 off the pole set");
  double lx = std::log(x);
  cxd sum = geometric_zeta(s, cxd(1.0, 0.0));
  for (const ComplexDimension& cd : d.dims)
    sum += cd.residue * zeta(cd.omega) * std::exp((cd.omega - 1.0) * lx);
  return sum.real();
}

}  // namespace zetalab
