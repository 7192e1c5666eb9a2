#include "zetalab/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "zetalab/errors.hpp"

namespace zetalab {
namespace {

void validate_grid(double t_min, double t_max, double h, double c) {
  if (!(h > 0.0)) raise(errc::invalid_argument, "grid step must be positive");
  if (!(t_max > t_min)) raise(errc::invalid_argument, "empty grid range");
  if (c < 0.0) raise(errc::invalid_argument, "weight parameter must be >= 0");
  double steps = (t_max - t_min) / h;
  if (std::abs(steps - std::round(steps)) > 1e-6 * steps)
    raise(errc::invalid_argument, "(t_max - t_min)/h must be integral");
}

bool same_grid(const GridFunction& a, const GridFunction& b) {
  return a.t_min == b.t_min && a.t_max == b.t_max && a.h == b.h && a.c == b.c &&
         a.samples.size() == b.samples.size();
}

}  // namespace

GridFunction make_grid_function(double t_min, double t_max, double h, double c,
                                const std::function<cxd(double)>& fn) {
  validate_grid(t_min, t_max, h, c);
  GridFunction f;
  f.t_min = t_min;
  f.t_max = t_max;
  f.h = h;
  f.c = c;
  std::size_t n = static_cast<std::size_t>(std::llround((t_max - t_min) / h));
  f.samples.resize(n + 1);
  for (std::size_t i = 0; i <= n; ++i) f.samples[i] = fn(f.t_at(i));
  return f;
}

GridFunction zero_like(const GridFunction& f) {
  GridFunction z = f;
  std::fill(z.samples.begin(), z.samples.end(), cxd(0.0, 0.0));
  return z;
}

std::pair<double, double> support_bounds(const GridFunction& f) {
  double peak = 0.0;
  std::vector<double> weighted(f.samples.size());
  for (std::size_t i = 0; i < f.samples.size(); ++i) {
    weighted[i] = std::abs(f.samples[i]) * std::exp(-f.c * f.t_at(i));
    peak = std::max(peak, weighted[i]);
  }
  if (peak == 0.0) return {f.t_max, f.t_min};
  double cut = 1e-12 * peak;
  std::size_t lo = 0, hi = f.samples.size() - 1;
  while (lo < f.samples.size() && weighted[lo] <= cut) ++lo;
  while (hi > 0 && weighted[hi] <= cut) --hi;
  return {f.t_at(lo), f.t_at(hi)};
}

double weighted_norm(const GridFunction& f) {
  double acc = 0.0;
  std::size_t n = f.samples.size();
  for (std::size_t i = 0; i < n; ++i) {
    double m = std::abs(f.samples[i]) * std::exp(-f.c * f.t_at(i));
    double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    acc += w * m * m;
  }
  return std::sqrt(acc * f.h);
}

cxd weighted_inner(const GridFunction& f, const GridFunction& g) {
  if (!same_grid(f, g))
    raise(errc::grid_mismatch, "inner product needs matching grids");
  cxd acc = 0.0;
  std::size_t n = f.samples.size();
  for (std::size_t i = 0; i < n; ++i) {
    double wgt = std::exp(-2.0 * f.c * f.t_at(i));
    double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    acc += w * wgt * f.samples[i] * std::conj(g.samples[i]);
  }
  return acc * f.h;
}

GridFunction infinitesimal_shift(const GridFunction& f) {
  auto [lo, hi] = support_bounds(f);
  if (lo <= hi &&
      (lo < f.t_min + kGuardBand || hi > f.t_max - kGuardBand))
    raise(errc::support_touches_boundary,
          "derivative needs support clear of the guard band");
  GridFunction d = zero_like(f);
  std::size_t n = f.samples.size();
  if (n < 5) raise(errc::invalid_argument, "grid too small for the stencil");
  double inv = 1.0 / (12.0 * f.h);
  for (std::size_t i = 2; i + 2 < n; ++i)
    d.samples[i] = (-f.samples[i + 2] + 8.0 * f.samples[i + 1] -
                    8.0 * f.samples[i - 1] + f.samples[i - 2]) *
                   inv;
  return d;
}

GridFunction shift_group(const GridFunction& f, double t) {
  auto [lo, hi] = support_bounds(f);
  if (lo <= hi && (lo + t < f.t_min - 1e-12 || hi + t > f.t_max + 1e-12))
    raise(errc::shift_out_of_range, "shifted support leaves the grid");
  GridFunction g = zero_like(f);
  double s = t / f.h;
  double rounded = std::round(s);
  std::int64_t n = static_cast<std::int64_t>(f.samples.size());
  if (std::abs(s - rounded) < 1e-9) {
    std::int64_t k = static_cast<std::int64_t>(rounded);
    for (std::int64_t i = 0; i < n; ++i) {
      std::int64_t j = i - k;
      if (j >= 0 && j < n) g.samples[i] = f.samples[j];
    }
  } else {
    double fl = std::floor(s);
    double frac = s - fl;
    std::int64_t k = static_cast<std::int64_t>(fl);
    for (std::int64_t i = 0; i < n; ++i) {
      std::int64_t j1 = i - k - 1, j0 = i - k;
      cxd a = (j0 >= 0 && j0 < n) ? f.samples[j0] : cxd(0.0, 0.0);
      cxd b = (j1 >= 0 && j1 < n) ? f.samples[j1] : cxd(0.0, 0.0);
      g.samples[i] = (1.0 - frac) * a + frac * b;
    }
  }
  return g;
}

}  // namespace zetalab
