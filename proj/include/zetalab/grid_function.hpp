#pragma once

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "zetalab/zeta.hpp"

namespace zetalab {

/// Uniformly sampled function on [t_min, t_max] living in the weighted
/// space with measure e^{-2ct} dt. Samples are immutable by convention
/// once an operation returns the object.
struct GridFunction {
  double t_min = 0.0;
  double t_max = 0.0;
  double h = 1.0;  // step; (t_max - t_min)/h is integral
  double c = 0.0;  // weight parameter, >= 0
  std::vector<cxd> samples;

  std::size_t size() const { return samples.size(); }
  double t_at(std::size_t i) const { return t_min + double(i) * h; }
};

/// Guard band (in t units) kept clear of declared supports at both ends.
inline constexpr double kGuardBand = 5.0;

GridFunction make_grid_function(double t_min, double t_max, double h, double c,
                                const std::function<cxd(double)>& fn);

/// Same grid and weight, all samples zero.
GridFunction zero_like(const GridFunction& f);

/// Endpoints of the effective support: smallest/largest t whose weighted
/// magnitude |f(t)| e^{-ct} exceeds 1e-12 of the weighted peak. Returns
/// (t_max, t_min) crossed over for the identically-zero function.
std::pair<double, double> support_bounds(const GridFunction& f);

/// sqrt( int |f|^2 e^{-2ct} dt ) by trapezoid quadrature; the weight is
/// applied before squaring to halve the dynamic range.
double weighted_norm(const GridFunction& f);

/// int f conj(g) e^{-2ct} dt. Raises GridMismatch unless grids and c agree.
cxd weighted_inner(const GridFunction& f, const GridFunction& g);

/// Derivative by 4th-order central differences; two samples at each end
/// are set to zero. Raises SupportTouchesBoundary when the effective
/// support enters the guard band.
GridFunction infinitesimal_shift(const GridFunction& f);

/// Translation (e^{-t d})(f)(u) = f(u - t); exact index shift when t is a
/// lattice multiple (within 1e-9 h), linear interpolation otherwise.
/// Raises ShiftOutOfRange when the shifted support leaves the grid.
GridFunction shift_group(const GridFunction& f, double t);

}  // namespace zetalab
