// Ordinary fractal strings (interval length data) and generalized strings
// (weighted point measures on (0,inf)), with exact counting functions, tube
// volumes, and Minkowski content estimation.
#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace zetalab {

using cxd = std::complex<double>;

struct LengthEntry {
  double length;
  double weight;  // multiplicity, >= 1
};

// Lengths b^-(j+1) with multiplicity m^j for 0 <= j <= depth. Requires
// m < b so the total length is finite.
struct LatticeRule {
  double b;
  double m;
  int depth;
};

// Marks lengths scale * j^(-1/dim); carries the analytic tail beyond the
// materialized entries.
struct PowerLawTag {
  double dim;
  double scale;
};

struct FractalString {
  std::vector<LengthEntry> lengths;  // strictly positive, nonincreasing
  std::optional<LatticeRule> lattice;
  std::optional<PowerLawTag> power_law;

  // Total interval length beyond lengths[], estimated analytically.
  double tail_length() const;
  double total_length() const;
};

struct Atom {
  double x;  // location > 0, strictly increasing across the sequence
  cxd w;
};

enum class GeneratorKind { None, Harmonic, PrimeHarmonic, Prime };

struct GeneralizedString {
  std::vector<Atom> atoms;
  GeneratorKind kind = GeneratorKind::None;
  double cap = 0.0;       // atoms materialized for locations <= cap
  std::uint64_t base = 0; // PrimeHarmonic only
};

struct TubeProfile {
  std::vector<double> epsilons;  // descending
  std::vector<double> volumes;
};

struct MinkowskiEstimate {
  double upper_content;
  double lower_content;
  double dimension;          // 1 - slope of log V against log eps
  double regression_residual;
};

FractalString make_string(std::vector<LengthEntry> entries);
FractalString lattice_string(double b, double m, int depth);
FractalString cantor_string();
FractalString power_law_string(double D, double L, long J);
FractalString lapidus_maier_string(double D, double tau, double beta, long J);

GeneralizedString harmonic_string(double cap);
GeneralizedString prime_harmonic_string(std::uint64_t p, double cap);
GeneralizedString prime_string(double cap);
GeneralizedString string_to_measure(const FractalString& s);

// Counts reciprocal lengths (atom locations) below x, half weight at x.
double geometric_counting(const FractalString& s, double x);
double geometric_counting(const GeneralizedString& s, double x);

// V(eps) = sum_j w_j min(2 eps, l_j); analytic tail for lattice and
// power-law strings.
double direct_tube_volume(const FractalString& s, double epsilon);

TubeProfile tube_profile(const FractalString& s,
                         const std::vector<double>& epsilons);

// Contents are extrema of V(eps)/eps^(1-D_hint) over the grid; the grid
// must span at least four decades.
MinkowskiEstimate estimate_minkowski(const FractalString& s, double D_hint,
                                     const std::vector<double>& eps_grid);

// JSON round trip: {"lengths":[[l,w],...]} or
// {"lattice":{"b":...,"m":...,"depth":...}}.
FractalString load_string(const std::string& path);
FractalString parse_string_json(const std::string& text);
void save_string(const std::string& path, const FractalString& s);

}  // namespace zetalab
