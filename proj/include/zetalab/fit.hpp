// Small least-squares helpers shared by the estimators.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace zetalab {

struct LineFit {
  double slope;
  double intercept;
  double residual;  // root mean square of the fit residuals
};

inline LineFit fit_line(const std::vector<double>& x,
                        const std::vector<double>& y) {
  std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double den = n * sxx - sx * sx;
  LineFit f{};
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = y[i] - (f.slope * x[i] + f.intercept);
    ss += r * r;
  }
  f.residual = std::sqrt(ss / n);
  return f;
}

// Solves the normal equations for a general small design matrix by Gaussian
// elimination with partial pivoting. columns[k][i] is basis k at sample i.
std::vector<double> least_squares(const std::vector<std::vector<double>>& columns,
                                  const std::vector<double>& rhs);

}  // namespace zetalab
