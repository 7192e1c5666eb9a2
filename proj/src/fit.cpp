#include "zetalab/fit.hpp"

#include <cmath>

#include "zetalab/errors.hpp"

namespace zetalab {

std::vector<double> least_squares(const std::vector<std::vector<double>>& columns,
                                  const std::vector<double>& rhs) {
  std::size_t k = columns.size();
  std::size_t n = rhs.size();
  if (k == 0 || n < k) raise(errc::invalid_argument, "underdetermined fit");
  for (const auto& col : columns)
    if (col.size() != n) raise(errc::invalid_argument, "ragged design matrix");
  // normal equations A = C^T C, b = C^T rhs
  std::vector<std::vector<double>> a(k, std::vector<double>(k + 1, 0.0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      double s = 0.0;
      for (std::size_t r = 0; r < n; ++r) s += columns[i][r] * columns[j][r];
      a[i][j] = s;
    }
    double s = 0.0;
    for (std::size_t r = 0; r < n; ++r) s += columns[i][r] * rhs[r];
    a[i][k] = s;
  }
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < k; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    std::swap(a[piv], a[col]);
    if (std::abs(a[col][col]) < 1e-300)
      raise(errc::invalid_argument, "singular normal equations");
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col) continue;
      double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= k; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<double> x(k);
  for (std::size_t i = 0; i < k; ++i) x[i] = a[i][k] / a[i][i];
  return x;
}

}  // namespace zetalab
