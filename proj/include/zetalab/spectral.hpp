#pragma once

#include <complex>
#include <vector>

#include "zetalab/fractal_string.hpp"

namespace zetalab {

enum class CountMethod { DirectEnumeration, HarmonicConvolution };

struct SpectralCount {
  double x = 0.0;
  double count = 0.0;
  CountMethod method = CountMethod::DirectEnumeration;
};

struct WeylRemainder {
  double x = 0.0;
  double weyl = 0.0;       // total_length * x
  double count = 0.0;      // N_nu(x)
  double remainder = 0.0;  // weyl - count
};

struct LapoResult {
  double dimension = 0.0;
  double x_probe = 0.0;
  double minkowski_content = 0.0;  // measured from tube volumes
  double c_d_predicted = 0.0;      // 2^-(1-D) (1-D) (-zeta(D)) M
  double c_d_measured = 0.0;       // fitted coefficient of x^D in W - N_nu
  double rel_error = 0.0;
};

struct InverseProblemReport {
  double dimension = 0.0;
  double tau = 0.0;
  double beta = 0.0;
  double geometric_amplitude = 0.0;  // fitted log-harmonic in N_L / x^D
  double spectral_amplitude = 0.0;   // same harmonic in (W - N_nu) / x^D
  double amplitude_ratio = 0.0;      // spectral / geometric
  double zeta_modulus = 0.0;         // |zeta(D + i tau)|
};

// Frequency count N_nu(x): number of pairs (k, j) with k / l_j <= x,
// weighted by interval multiplicity. Both methods agree exactly.
SpectralCount spectral_counting(const FractalString& s, double x,
                                CountMethod method);

// Fast closed-form evaluation (weighted floor sum); equal to both methods.
double spectral_count_value(const FractalString& s, double x);

// zeta_nu(s) = zeta_L(s) * zeta(s)
cxd spectral_zeta(const FractalString& s, cxd z);

std::vector<WeylRemainder> weyl_remainder_profile(
    const FractalString& s, const std::vector<double>& x_grid);

// Leading remainder coefficient for the power-law string of dimension D:
// prediction from the measured Minkowski content vs a direct fit of W - N_nu.
LapoResult lapo_coefficient_check(double D, double x_probe);

// Geometric vs spectral oscillation amplitudes for a string whose counting
// function follows floor(x^D (1 + 2 beta cos(tau log x))).
InverseProblemReport inverse_problem_experiment(double D, double tau,
                                                double beta);

}  // namespace zetalab
