#include "zetalab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "zetalab/dimensions.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/fit.hpp"
#include "zetalab/zeta.hpp"

namespace zetalab {
namespace {

// relative band inside which k / l_j is treated as exactly equal to x;
// all boundary predicates below share it so the counting methods can
// never disagree by a stray ulp
constexpr double kEq = 1e-12;

struct ReciprocalTable {
  std::vector<double> r;       // ascending reciprocal lengths
  std::vector<double> w;       // matching weights
  std::vector<double> prefix;  // prefix[i] = sum of w[0..i-1]
};

ReciprocalTable build_table(const FractalString& s) {
  ReciprocalTable t;
  t.r.reserve(s.lengths.size());
  t.w.reserve(s.lengths.size());
  for (const LengthEntry& e : s.lengths) {
    double r = 1.0 / e.length;
    if (!t.r.empty() && r == t.r.back())
      t.w.back() += e.weight;
    else {
      t.r.push_back(r);
      t.w.push_back(e.weight);
    }
  }
  t.prefix.resize(t.r.size() + 1, 0.0);
  for (std::size_t i = 0; i < t.r.size(); ++i)
    t.prefix[i + 1] = t.prefix[i] + t.w[i];
  return t;
}

void check_depth(const FractalString& s, double x) {
  if (!(x > 0.0)) raise(errc::invalid_argument, "x must be positive");
  if (s.lattice) {
    double cap = std::pow(s.lattice->b, double(s.lattice->depth + 1));
    if (x >= cap * (1.0 - kEq))
      raise(errc::depth_cap_exceeded, "frequencies beyond materialized depth");
  } else if (s.power_law) {
    double r_max = 1.0 / s.lengths.back().length;
    if (x > r_max * (1.0 + kEq))
      raise(errc::depth_cap_exceeded, "frequencies beyond materialized tail");
  }
}

// weighted number of reciprocal lengths <= y (closed at equality)
double closed_geometric_count(const ReciprocalTable& t, double y) {
  double bound = y * (1.0 + kEq);
  auto it = std::upper_bound(t.r.begin(), t.r.end(), bound);
  return t.prefix[static_cast<std::size_t>(it - t.r.begin())];
}

double floor_sum_count(const ReciprocalTable& t, double x) {
  double bound = x * (1.0 + kEq);
  double count = 0.0;
  for (std::size_t j = 0; j < t.r.size(); ++j) {
    if (t.r[j] > bound) break;
    count += t.w[j] * std::floor(bound / t.r[j]);
  }
  return count;
}

std::vector<double> log_uniform_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i)
    g[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
  return g;
}

}  // namespace

SpectralCount spectral_counting(const FractalString& s, double x,
                                CountMethod method) {
  check_depth(s, x);
  ReciprocalTable t = build_table(s);
  SpectralCount out;
  out.x = x;
  out.method = method;
  double bound = x * (1.0 + kEq);
  if (method == CountMethod::DirectEnumeration) {
    double count = 0.0;
    for (std::size_t j = 0; j < t.r.size(); ++j) {
      if (t.r[j] > bound) break;
      for (double k = 1.0; k * t.r[j] <= bound; k += 1.0) count += t.w[j];
    }
    out.count = count;
  } else {
    double count = 0.0;
    double r_min = t.r.empty() ? 1.0 : t.r.front();
    for (double n = 1.0; r_min <= bound / n; n += 1.0)
      count += closed_geometric_count(t, x / n);
    out.count = count;
  }
  return out;
}

double spectral_count_value(const FractalString& s, double x) {
  check_depth(s, x);
  return floor_sum_count(build_table(s), x);
}

cxd spectral_zeta(const FractalString& s, cxd z) {
  if (std::abs(z - cxd(1.0, 0.0)) < 1e-12)
    raise(errc::pole_at_one, "zeta factor has its pole at s = 1");
  return geometric_zeta(s, z) * zeta(z);
}

std::vector<WeylRemainder> weyl_remainder_profile(
    const FractalString& s, const std::vector<double>& x_grid) {
  if (x_grid.empty()) raise(errc::invalid_argument, "empty grid");
  for (std::size_t i = 0; i + 1 < x_grid.size(); ++i)
    if (!(x_grid[i] < x_grid[i + 1]))
      raise(errc::invalid_argument, "grid must ascend");
  check_depth(s, x_grid.back());
  ReciprocalTable t = build_table(s);
  double total = s.total_length();
  std::vector<WeylRemainder> out;
  out.reserve(x_grid.size());
  for (double x : x_grid) {
    if (!(x > 0.0)) raise(errc::invalid_argument, "x must be positive");
    WeylRemainder w;
    w.x = x;
    w.weyl = total * x;
    w.count = floor_sum_count(t, x);
    w.remainder = w.weyl - w.count;
    out.push_back(w);
  }
  return out;
}

LapoResult lapo_coefficient_check(double D, double x_probe) {
  if (!(D > 0.0) || !(D < 1.0))
    raise(errc::invalid_argument, "dimension must lie in (0,1)");
  if (!(x_probe > 100.0)) raise(errc::invalid_argument, "probe too small");
  long j_max = static_cast<long>(std::ceil(std::pow(1.1 * x_probe, D))) + 8;
  FractalString s = power_law_string(D, 1.0, j_max);

  // Minkowski content from tube volumes on a grid spanning > 4 decades.
  // The floor in the covering count biases V low by a relative (2eps)^D,
  // so use a deep auxiliary string and keep the whole grid at small eps.
  FractalString deep = power_law_string(D, 1.0, 20000);
  double lo = 0.55 * deep.lengths.back().length;
  std::vector<double> eps;
  for (double e = lo; e < lo * 1.5e4; e *= 1.2) eps.push_back(e);
  MinkowskiEstimate mk = estimate_minkowski(deep, D, eps);
  double content = 0.5 * (mk.upper_content + mk.lower_content);

  LapoResult out;
  out.dimension = D;
  out.x_probe = x_probe;
  out.minkowski_content = content;
  double minus_zeta_d = -zeta(cxd(D, 0.0)).real();
  out.c_d_predicted =
      std::pow(2.0, -(1.0 - D)) * (1.0 - D) * minus_zeta_d * content;

  ReciprocalTable t = build_table(s);
  double total = s.total_length();
  std::vector<double> grid = log_uniform_grid(x_probe / 30.0, x_probe, 160);
  std::vector<double> cpow, cone, rhs;
  for (double x : grid) {
    cpow.push_back(std::pow(x, D));
    cone.push_back(1.0);
    rhs.push_back(total * x - floor_sum_count(t, x));
  }
  std::vector<double> coef = least_squares({cpow, cone}, rhs);
  out.c_d_measured = coef[0];
  out.rel_error = std::abs(out.c_d_measured - out.c_d_predicted) /
                  std::abs(out.c_d_predicted);
  return out;
}

InverseProblemReport inverse_problem_experiment(double D, double tau,
                                                double beta) {
  if (!(D > 0.0) || !(D < 1.0))
    raise(errc::invalid_argument, "dimension must lie in (0,1)");
  if (!(tau > 0.0)) raise(errc::invalid_argument, "tau must be positive");

  // staircase jitter in the remainder is O(x^-D), so probe high x to keep
  // the regression noise floor well below the oscillation amplitudes
  const double x_max = 3.0e5;
  const double x_min = x_max / 100.0;
  long j_max =
      static_cast<long>(std::ceil(std::pow(1.05 * x_max, D) *
                                  (1.0 + 2.0 * std::max(beta, 0.0)))) +
      8;
  FractalString s = lapidus_maier_string(D, tau, beta, j_max);
  ReciprocalTable t = build_table(s);
  double total = s.total_length();

  std::vector<double> grid = log_uniform_grid(x_min, x_max, 600);
  std::vector<double> ccos, csin, cone, cdrift, csmall, geo, spec;
  for (double x : grid) {
    double phase = tau * std::log(x);
    double xd = std::pow(x, D);
    ccos.push_back(std::cos(phase));
    csin.push_back(std::sin(phase));
    cone.push_back(1.0);
    cdrift.push_back(std::pow(x, 1.0 - D));  // absorbs Weyl-slope error
    csmall.push_back(1.0 / xd);
    geo.push_back(closed_geometric_count(t, x) / xd - 1.0);
    spec.push_back((total * x - floor_sum_count(t, x)) / xd);
  }
  std::vector<double> cg = least_squares({ccos, csin, cone, csmall}, geo);
  std::vector<double> cs =
      least_squares({ccos, csin, cone, cdrift, csmall}, spec);

  InverseProblemReport out;
  out.dimension = D;
  out.tau = tau;
  out.beta = beta;
  out.geometric_amplitude = std::hypot(cg[0], cg[1]);
  out.spectral_amplitude = std::hypot(cs[0], cs[1]);
  out.amplitude_ratio =
      out.spectral_amplitude / std::max(out.geometric_amplitude, 1e-300);
  out.zeta_modulus = std::abs(zeta(cxd(D, tau)));
  return out;
}

}  // namespace zetalab
