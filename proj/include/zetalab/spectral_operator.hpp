#pragma once

#include <functional>

#include "zetalab/grid_function.hpp"

namespace zetalab {

/// How the shift offsets log n are placed on the grid.
///  - ExactLog: each copy lands at the true log n, distributed onto the two
///    nearest lattice points by linear interpolation.
///  - LatticeRounded: log p is rounded to a lattice multiple once per prime
///    and extended additively, K(n) = sum v_p(n) K(p), so K(ab) = K(a)+K(b)
///    holds exactly and Moebius inversion cancels combinatorially.
enum class ShiftRealization { ExactLog, LatticeRounded };

/// a(f)(t) = sum_{n>=1} f(t - log n). Finite on compact supports; raises
/// SupportUnbounded when the support reaches the left grid edge (copies
/// from below the grid would be needed) and BudgetExceeded when more than
/// ~5e7 copies would contribute.
GridFunction apply_spectral_operator_direct(
    const GridFunction& f, ShiftRealization r = ShiftRealization::ExactLog);

/// a_p(f)(t) = sum_{m>=0} f(t - m log p).
GridFunction apply_euler_factor(const GridFunction& f, long p,
                                ShiftRealization r = ShiftRealization::ExactLog);

/// Composition of a_p over primes p <= prime_cap; approaches the full
/// operator as the cap grows (c > 1).
GridFunction compose_euler_product(
    const GridFunction& f, long prime_cap,
    ShiftRealization r = ShiftRealization::ExactLog);

/// g(t) = sum_n mu(n) f(t - log n); inverse of the direct operator.
GridFunction apply_mobius_inverse(
    const GridFunction& f, ShiftRealization r = ShiftRealization::ExactLog);

/// g(d) f realized through the weighted-to-plain unitary map and the
/// Fourier transform: conjugate to multiplication by g(c + i xi).
/// The symbol is only evaluated where the transform is non-negligible.
GridFunction apply_functional_calculus(const std::function<cxd(cxd)>& symbol,
                                       const GridFunction& f);

}  // namespace zetalab
