// Geometric zeta functions, abscissa of convergence, visible complex
// dimensions with residues, and the reconstructions driven by them: tube
// volumes, counting staircases, and spectral state densities.
#pragma once

#include <complex>
#include <vector>

#include "zetalab/fractal_string.hpp"

namespace zetalab {

// Region {Re s >= sigma_min, |Im s| <= t_max}.
struct Window {
  double sigma_min;
  double t_max;
};

struct ComplexDimension {
  cxd omega;
  cxd residue;
  int order;  // always 1 for the strings handled here
};

// Lattice strings use the closed form b^-s / (1 - m b^-s); explicit strings
// sum the Dirichlet series with a certified tail bound; generalized strings
// with a generator rule use their closed forms (Harmonic: zeta, Prime:
// -zeta'/zeta, PrimeHarmonic(p): p^-s/(1 - p^-s)).
cxd geometric_zeta(const FractalString& s, cxd z);
cxd geometric_zeta(const GeneralizedString& s, cxd z);

// Lattice: log m / log b exactly. Explicit lengths: least-squares growth
// rate of the counting function, 0 for degenerate (finite) strings.
double abscissa_of_convergence(const FractalString& s);

// Poles of the continued geometric zeta inside the window, conjugate pairs
// included, each simple with its residue. Lattice strings only.
std::vector<ComplexDimension> complex_dimensions_in(const FractalString& s,
                                                    const Window& w);

// V(eps) = sum over visible omega of res (2eps)^(1-omega)/(omega(1-omega)),
// plus 2 eps zeta_L(0) when 0 lies in the window off the pole set.
double tube_formula_via_dimensions(const FractalString& s, double epsilon,
                                   const Window& w);

// level 1: N(x) ~ sum res x^omega/omega + zeta_L(0); level 0: pointwise
// density sum res x^(omega-1).
double explicit_counting(const FractalString& s, double x, const Window& w,
                         int level);

// zeta_L(1) + sum res zeta(omega) x^(omega-1).
double density_spectral_states(const FractalString& s, double x,
                               const Window& w);

}  // namespace zetalab
