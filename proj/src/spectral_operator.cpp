#include "zetalab/spectral_operator.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "zetalab/arith.hpp"
#include "zetalab/errors.hpp"

namespace zetalab {
namespace {

constexpr long kCopyBudget = 50000000;   // ExactLog shifted-copy cap
constexpr long kSieveBudget = 5000000;   // LatticeRounded factor-sieve cap

struct SupportInfo {
  double lo = 0.0;
  double hi = 0.0;
  bool empty = true;
};

SupportInfo checked_support(const GridFunction& f) {
  auto [lo, hi] = support_bounds(f);
  SupportInfo s;
  if (lo > hi) return s;  // identically zero
  s.empty = false;
  s.lo = lo;
  s.hi = hi;
  // shifts move mass to the right only, so mass near the right edge is
  // never read back; mass at the left edge would require samples below
  // the grid (arbitrarily many copies), which we cannot enumerate
  if (lo <= f.t_min + f.h / 2)
    raise(errc::support_unbounded,
          "support reaches the left grid edge; shift sum has no finite horizon");
  return s;
}

long copy_horizon(const GridFunction& f, const SupportInfo& s, long budget) {
  double span = f.t_max - s.lo;
  double n_real = std::exp(span);
  if (!(n_real < double(budget)))
    raise(errc::budget_exceeded, "too many shifted copies for this grid");
  return static_cast<long>(std::floor(n_real)) + 1;
}

// integer lattice offsets K(n) = sum v_p(n) round(log p / h) for n <= n_max
std::vector<std::int64_t> additive_offsets(long n_max, double h) {
  if (n_max > kSieveBudget)
    raise(errc::budget_exceeded, "factor sieve too large for rounded shifts");
  std::vector<std::int32_t> spf(static_cast<std::size_t>(n_max) + 1, 0);
  for (long i = 2; i <= n_max; ++i) {
    if (spf[i] == 0)
      for (long j = i; j <= n_max; j += i)
        if (spf[j] == 0) spf[j] = static_cast<std::int32_t>(i);
  }
  std::vector<std::int64_t> off(static_cast<std::size_t>(n_max) + 1, 0);
  for (long n = 2; n <= n_max; ++n) {
    long p = spf[n];
    std::int64_t kp = std::llround(std::log(double(p)) / h);
    off[n] = off[n / p] + kp;
  }
  return off;
}

// All shift sums run in the weight-conjugated space u(t) = f(t) e^{-ct},
// where a shift by T carries the factor e^{-cT}. The kernel weights n^{-c}
// are then summable for c > 0, which keeps the convolution's rounding
// noise at the weighted-norm scale instead of e^{c|t_min|} above it.

// kernel[k] = total conjugated coefficient landing k lattice steps right
std::vector<double> shift_kernel(const GridFunction& f, const SupportInfo& s,
                                 ShiftRealization real, bool mobius_weights) {
  long n_max = copy_horizon(
      f, s, real == ShiftRealization::ExactLog ? kCopyBudget : kSieveBudget);
  std::size_t klen =
      static_cast<std::size_t>(std::ceil((f.t_max - s.lo) / f.h)) + 2;
  std::vector<double> kernel(klen, 0.0);
  std::vector<int> mu;
  if (mobius_weights) mu = mobius_table(static_cast<std::uint64_t>(n_max));
  if (real == ShiftRealization::ExactLog) {
    for (long n = 1; n <= n_max; ++n) {
      double a = mobius_weights ? double(mu[n]) : 1.0;
      if (a == 0.0) continue;
      double logn = std::log(double(n));
      a *= std::exp(-f.c * logn);  // n^{-c}, the conjugated shift factor
      double pos = logn / f.h;
      std::size_t k = static_cast<std::size_t>(std::floor(pos));
      double frac = pos - double(k);
      if (k + 1 >= klen) break;
      kernel[k] += (1.0 - frac) * a;
      kernel[k + 1] += frac * a;
    }
  } else {
    std::vector<std::int64_t> off = additive_offsets(n_max, f.h);
    for (long n = 1; n <= n_max; ++n) {
      double a = mobius_weights ? double(mu[n]) : 1.0;
      if (a == 0.0) continue;
      // weight matches the rounded offset so that factors along the
      // lattice stay exactly multiplicative and Moebius sums cancel
      a *= std::exp(-f.c * double(off[n]) * f.h);
      if (off[n] >= 0 && static_cast<std::size_t>(off[n]) < klen)
        kernel[static_cast<std::size_t>(off[n])] += a;
    }
  }
  return kernel;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// linear convolution of the conjugated samples u_i = f_i e^{-c t_i} with a
// real causal kernel via FFT; the result is mapped back by e^{+c t_i}
GridFunction convolve(const GridFunction& f, const std::vector<double>& kernel) {
  std::size_t n = f.samples.size();
  std::size_t m = next_pow2(n + kernel.size());
  std::vector<fftw_complex> a(m), b(m), out(m);
  for (std::size_t i = 0; i < m; ++i) {
    cxd u = i < n ? f.samples[i] * std::exp(-f.c * f.t_at(i)) : cxd(0.0, 0.0);
    a[i][0] = u.real();
    a[i][1] = u.imag();
    b[i][0] = i < kernel.size() ? kernel[i] : 0.0;
    b[i][1] = 0.0;
  }
  fftw_plan pa = fftw_plan_dft_1d(int(m), a.data(), a.data(), FFTW_FORWARD,
                                  FFTW_ESTIMATE);
  fftw_plan pb = fftw_plan_dft_1d(int(m), b.data(), b.data(), FFTW_FORWARD,
                                  FFTW_ESTIMATE);
  fftw_execute(pa);
  fftw_execute(pb);
  for (std::size_t i = 0; i < m; ++i) {
    double re = a[i][0] * b[i][0] - a[i][1] * b[i][1];
    double im = a[i][0] * b[i][1] + a[i][1] * b[i][0];
    out[i][0] = re / double(m);
    out[i][1] = im / double(m);
  }
  fftw_plan pc = fftw_plan_dft_1d(int(m), out.data(), out.data(),
                                  FFTW_BACKWARD, FFTW_ESTIMATE);
  fftw_execute(pc);
  fftw_destroy_plan(pa);
  fftw_destroy_plan(pb);
  fftw_destroy_plan(pc);
  GridFunction g = zero_like(f);
  for (std::size_t i = 0; i < n; ++i)
    g.samples[i] = cxd(out[i][0], out[i][1]) * std::exp(f.c * f.t_at(i));
  return g;
}

GridFunction apply_kernel_operator(const GridFunction& f, ShiftRealization r,
                                   bool mobius_weights) {
  SupportInfo s = checked_support(f);
  if (s.empty) return zero_like(f);
  return convolve(f, shift_kernel(f, s, r, mobius_weights));
}

}  // namespace

GridFunction apply_spectral_operator_direct(const GridFunction& f,
                                            ShiftRealization r) {
  return apply_kernel_operator(f, r, false);
}

GridFunction apply_mobius_inverse(const GridFunction& f, ShiftRealization r) {
  return apply_kernel_operator(f, r, true);
}

GridFunction apply_euler_factor(const GridFunction& f, long p,
                                ShiftRealization r) {
  if (p < 2) raise(errc::invalid_argument, "prime must be >= 2");
  // copies move right only, so the grid width bounds the sum; composition
  // intermediates may legitimately extend to the right edge
  double logp = std::log(double(p));
  long m_max =
      static_cast<long>(std::floor((f.t_max - f.t_min) / logp)) + 1;
  std::int64_t n = static_cast<std::int64_t>(f.samples.size());
  // conjugated samples; shifts pick up the factor p^{-cm} here
  std::vector<cxd> u(f.samples.size()), acc(f.samples.size(), cxd(0.0, 0.0));
  for (std::int64_t i = 0; i < n; ++i)
    u[i] = f.samples[i] * std::exp(-f.c * f.t_at(std::size_t(i)));
  for (long m = 0; m <= m_max; ++m) {
    if (r == ShiftRealization::LatticeRounded) {
      std::int64_t k = m * std::llround(logp / f.h);
      if (k >= n) break;
      double w = std::exp(-f.c * double(k) * f.h);
      for (std::int64_t i = k; i < n; ++i) acc[i] += w * u[i - k];
    } else {
      double pos = double(m) * logp / f.h;
      std::int64_t k = static_cast<std::int64_t>(std::floor(pos));
      double frac = pos - double(k);
      if (k >= n) break;
      double w = std::exp(-f.c * double(m) * logp);
      for (std::int64_t i = k; i < n; ++i) {
        cxd a = u[i - k];
        cxd b = (i - k - 1 >= 0) ? u[i - k - 1] : cxd(0.0, 0.0);
        acc[i] += w * ((1.0 - frac) * a + frac * b);
      }
    }
  }
  GridFunction g = zero_like(f);
  for (std::int64_t i = 0; i < n; ++i)
    g.samples[i] = acc[i] * std::exp(f.c * f.t_at(std::size_t(i)));
  return g;
}

GridFunction compose_euler_product(const GridFunction& f, long prime_cap,
                                   ShiftRealization r) {
  checked_support(f);  // validate once up front
  GridFunction g = f;
  for (auto p : primes_up_to(static_cast<std::uint64_t>(prime_cap)))
    g = apply_euler_factor(g, long(p), r);
  return g;
}

GridFunction apply_functional_calculus(const std::function<cxd(cxd)>& symbol,
                                       const GridFunction& f) {
  auto [lo, hi] = support_bounds(f);
  if (lo <= hi && (lo < f.t_min + kGuardBand || hi > f.t_max - kGuardBand))
    raise(errc::support_touches_boundary,
          "functional calculus needs support clear of the guard band");
  std::size_t n = f.samples.size();
  std::size_t m = next_pow2(n);
  std::vector<fftw_complex> u(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (i < n) {
      cxd v = f.samples[i] * std::exp(-f.c * f.t_at(i));
      u[i][0] = v.real();
      u[i][1] = v.imag();
    } else {
      u[i][0] = u[i][1] = 0.0;
    }
  }
  fftw_plan fwd =
      fftw_plan_dft_1d(int(m), u.data(), u.data(), FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_execute(fwd);
  fftw_destroy_plan(fwd);

  double peak = 0.0;
  for (std::size_t k = 0; k < m; ++k)
    peak = std::max(peak, std::hypot(u[k][0], u[k][1]));
  double cut = 1e-18 * peak;
  double dxi = 2.0 * M_PI / (double(m) * f.h);
  for (std::size_t k = 0; k < m; ++k) {
    if (std::hypot(u[k][0], u[k][1]) <= cut) {
      u[k][0] = u[k][1] = 0.0;
      continue;
    }
    double xi = dxi * (k <= m / 2 ? double(k) : double(k) - double(m));
    cxd g;
    try {
      g = symbol(cxd(f.c, xi));
    } catch (const Error&) {
      raise(errc::pole_on_segment, "symbol not finite on the sampled segment");
    }
    cxd v = cxd(u[k][0], u[k][1]) * g;
    u[k][0] = v.real();
    u[k][1] = v.imag();
  }
  fftw_plan bwd = fftw_plan_dft_1d(int(m), u.data(), u.data(), FFTW_BACKWARD,
                                   FFTW_ESTIMATE);
  fftw_execute(bwd);
  fftw_destroy_plan(bwd);
  GridFunction g = zero_like(f);
  for (std::size_t i = 0; i < n; ++i)
    g.samples[i] =
        cxd(u[i][0], u[i][1]) / double(m) * std::exp(f.c * f.t_at(i));
  return g;
}

}  // namespace zetalab
