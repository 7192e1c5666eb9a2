#include "zetalab/fractal_string.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "json.hpp"
#include "zetalab/arith.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/fit.hpp"

namespace zetalab {

namespace {

// relative tolerance for recognizing a query exactly at a jump location
constexpr double kJumpTol = 1e-13;

double lattice_reciprocal_cap(const LatticeRule& r) {
  return std::pow(r.b, static_cast<double>(r.depth + 1));
}

}  // namespace

double FractalString::tail_length() const {
  if (lattice) {
    const LatticeRule& r = *lattice;
    return std::pow(r.m / r.b, static_cast<double>(r.depth + 1)) / (r.b - r.m);
  }
  if (power_law) {
    double D = power_law->dim;
    double J = static_cast<double>(lengths.size()) + 0.5;
    return power_law->scale * D / (1.0 - D) *
           std::pow(J, -(1.0 - D) / D);
  }
  return 0.0;
}

double FractalString::total_length() const {
  if (lattice) return 1.0 / (lattice->b - lattice->m);
  double sum = 0.0;
  for (const LengthEntry& e : lengths) sum += e.weight * e.length;
  return sum + tail_length();
}

FractalString make_string(std::vector<LengthEntry> entries) {
  if (entries.empty()) raise(errc::invalid_argument, "string needs lengths");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!(entries[i].length > 0.0) || !(entries[i].weight > 0.0))
      raise(errc::invalid_argument, "lengths and weights must be positive");
    if (i > 0 && entries[i].length > entries[i - 1].length)
      raise(errc::invalid_argument, "lengths must be nonincreasing");
  }
  FractalString s;
  s.lengths = std::move(entries);
  return s;
}

FractalString lattice_string(double b, double m, int depth) {
  if (!(b > 1.0)) raise(errc::invalid_argument, "lattice base must exceed 1");
  if (!(m >= 1.0)) raise(errc::invalid_argument, "lattice ratio must be >= 1");
  if (!(m < b))
    raise(errc::invalid_argument, "lattice needs m < b for finite length");
  if (depth < 0) raise(errc::invalid_argument, "negative depth");
  FractalString s;
  s.lattice = LatticeRule{b, m, depth};
  double l = 1.0 / b;
  double w = 1.0;
  for (int j = 0; j <= depth; ++j) {
    s.lengths.push_back({l, w});
    l /= b;
    w *= m;
  }
  return s;
}

FractalString cantor_string() {
  // depth 68 leaves a tail length (2/3)^69 < 1e-12
  return lattice_string(3.0, 2.0, 68);
}

FractalString power_law_string(double D, double L, long J) {
  if (!(D > 0.0 && D < 1.0)) raise(errc::invalid_argument, "D outside (0,1)");
  if (!(L > 0.0)) raise(errc::invalid_argument, "scale must be positive");
  if (J < 1) raise(errc::invalid_argument, "need at least one length");
  FractalString s;
  s.power_law = PowerLawTag{D, L};
  s.lengths.reserve(static_cast<std::size_t>(J));
  for (long j = 1; j <= J; ++j)
    s.lengths.push_back(
        {L * std::exp(-std::log(static_cast<double>(j)) / D), 1.0});
  return s;
}

FractalString lapidus_maier_string(double D, double tau, double beta, long J) {
  if (!(D > 0.0 && D < 1.0)) raise(errc::invalid_argument, "D outside (0,1)");
  if (!(tau > 0.0)) raise(errc::invalid_argument, "tau must be positive");
  if (beta < 0.0) raise(errc::invalid_argument, "beta must be nonnegative");
  if (J < 1) raise(errc::invalid_argument, "need at least one length");
  // x^D (1 + 2 beta cos(tau log x)) is nondecreasing iff
  // D (1 + 2 beta cos u) >= 2 beta tau sin u for all u
  if (beta > D / (2.0 * std::sqrt(D * D + tau * tau)))
    raise(errc::non_monotone_target, "oscillation amplitude breaks monotonicity");
  auto target = [&](double x) {
    return std::pow(x, D) * (1.0 + 2.0 * beta * std::cos(tau * std::log(x)));
  };
  FractalString s;
  s.power_law = PowerLawTag{D, 1.0};
  s.lengths.reserve(static_cast<std::size_t>(J));
  for (long j = 1; j <= J; ++j) {
    double goal = static_cast<double>(j);
    double lo = std::pow(goal / (1.0 + 2.0 * beta), 1.0 / D);
    double hi = std::pow(goal / (1.0 - 2.0 * beta), 1.0 / D);
    while (hi - lo > 1e-12 * hi) {
      double mid = 0.5 * (lo + hi);
      if (target(mid) >= goal)
        hi = mid;
      else
        lo = mid;
    }
    s.lengths.push_back({1.0 / hi, 1.0});
  }
  return s;
}

GeneralizedString harmonic_string(double cap) {
  if (!(cap >= 1.0)) raise(errc::invalid_argument, "cap below first atom");
  GeneralizedString g;
  g.kind = GeneratorKind::Harmonic;
  g.cap = cap;
  for (double k = 1.0; k <= cap; k += 1.0) g.atoms.push_back({k, cxd(1.0, 0.0)});
  return g;
}

GeneralizedString prime_harmonic_string(std::uint64_t p, double cap) {
  if (p < 2) raise(errc::invalid_argument, "base must be a prime >= 2");
  if (!(cap >= static_cast<double>(p)))
    raise(errc::invalid_argument, "cap below first atom");
  GeneralizedString g;
  g.kind = GeneratorKind::PrimeHarmonic;
  g.cap = cap;
  g.base = p;
  for (double q = static_cast<double>(p); q <= cap; q *= static_cast<double>(p))
    g.atoms.push_back({q, cxd(1.0, 0.0)});
  return g;
}

GeneralizedString prime_string(double cap) {
  if (!(cap >= 2.0)) raise(errc::invalid_argument, "cap below first atom");
  GeneralizedString g;
  g.kind = GeneratorKind::Prime;
  g.cap = cap;
  for (std::uint64_t p : primes_up_to(static_cast<std::uint64_t>(cap))) {
    double lp = std::log(static_cast<double>(p));
    for (double q = static_cast<double>(p); q <= cap;
         q *= static_cast<double>(p))
      g.atoms.push_back({q, cxd(lp, 0.0)});
  }
  std::sort(g.atoms.begin(), g.atoms.end(),
            [](const Atom& a, const Atom& b) { return a.x < b.x; });
  return g;
}

GeneralizedString string_to_measure(const FractalString& s) {
  GeneralizedString g;
  g.cap = s.lengths.empty() ? 0.0 : 1.0 / s.lengths.back().length;
  for (const LengthEntry& e : s.lengths) {
    double x = 1.0 / e.length;
    if (!g.atoms.empty() && x == g.atoms.back().x)
      g.atoms.back().w += e.weight;
    else
      g.atoms.push_back({x, cxd(e.weight, 0.0)});
  }
  return g;
}

double geometric_counting(const FractalString& s, double x) {
  if (!(x > 0.0)) raise(errc::invalid_argument, "x must be positive");
  if (s.lattice && x >= lattice_reciprocal_cap(*s.lattice) * (1.0 - kJumpTol))
    raise(errc::depth_cap_exceeded, "counting query beyond materialized depth");
  double count = 0.0;
  for (const LengthEntry& e : s.lengths) {
    double r = 1.0 / e.length;
    if (r > x * (1.0 + kJumpTol)) break;
    if (std::abs(x - r) <= kJumpTol * r)
      count += 0.5 * e.weight;
    else
      count += e.weight;
  }
  return count;
}

double geometric_counting(const GeneralizedString& s, double x) {
  if (!(x > 0.0)) raise(errc::invalid_argument, "x must be positive");
  if (s.cap > 0.0 && x > s.cap * (1.0 + kJumpTol))
    raise(errc::depth_cap_exceeded, "counting query beyond materialized cap");
  double count = 0.0;
  for (const Atom& a : s.atoms) {
    if (a.x > x * (1.0 + kJumpTol)) break;
    if (std::abs(x - a.x) <= kJumpTol * a.x)
      count += 0.5 * a.w.real();
    else
      count += a.w.real();
  }
  return count;
}

double direct_tube_volume(const FractalString& s, double epsilon) {
  if (!(epsilon > 0.0)) raise(errc::invalid_argument, "epsilon must be positive");
  double two_eps = 2.0 * epsilon;
  if (s.lattice) {
    // exact value for the infinite lattice string
    const LatticeRule& r = *s.lattice;
    double vol = 0.0;
    double l = 1.0 / r.b;
    double w = 1.0;
    while (l >= two_eps) {
      vol += two_eps * w;
      l /= r.b;
      w *= r.m;
      if (w * l < 1e-300) break;
    }
    // remaining lengths all below 2 eps: sum m^j b^-(j+1) = w l b/(b-m)
    vol += w * l * r.b / (r.b - r.m);
    return vol;
  }
  double vol = 0.0;
  for (const LengthEntry& e : s.lengths)
    vol += e.weight * std::min(two_eps, e.length);
  double tail = s.tail_length();
  if (tail > 0.0) {
    if (two_eps < s.lengths.back().length)
      raise(errc::depth_cap_exceeded,
            "epsilon resolves below the materialized lengths");
    vol += tail;
  }
  return vol;
}

TubeProfile tube_profile(const FractalString& s,
                         const std::vector<double>& epsilons) {
  TubeProfile p;
  p.epsilons = epsilons;
  p.volumes.reserve(epsilons.size());
  for (double e : epsilons) p.volumes.push_back(direct_tube_volume(s, e));
  return p;
}

MinkowskiEstimate estimate_minkowski(const FractalString& s, double D_hint,
                                     const std::vector<double>& eps_grid) {
  if (eps_grid.size() < 8)
    raise(errc::grid_too_short, "need at least 8 grid points");
  double lo = *std::min_element(eps_grid.begin(), eps_grid.end());
  double hi = *std::max_element(eps_grid.begin(), eps_grid.end());
  if (!(lo > 0.0) || hi / lo < 1e4)
    raise(errc::grid_too_short, "grid must span at least four decades");
  MinkowskiEstimate est{};
  est.upper_content = 0.0;
  est.lower_content = std::numeric_limits<double>::infinity();
  std::vector<double> lx, ly;
  for (double e : eps_grid) {
    double v = direct_tube_volume(s, e);
    double ratio = v / std::pow(e, 1.0 - D_hint);
    est.upper_content = std::max(est.upper_content, ratio);
    est.lower_content = std::min(est.lower_content, ratio);
    lx.push_back(std::log(e));
    ly.push_back(std::log(v));
  }
  LineFit fit = fit_line(lx, ly);
  est.dimension = 1.0 - fit.slope;
  est.regression_residual = fit.residual;
  return est;
}

namespace {

FractalString string_from_json(const nlohmann::json& j) {
  if (j.contains("lattice")) {
    const auto& r = j["lattice"];
    return lattice_string(r.at("b").get<double>(), r.at("m").get<double>(),
                          r.at("depth").get<int>());
  }
  if (j.contains("lengths")) {
    std::vector<LengthEntry> entries;
    for (const auto& row : j["lengths"])
      entries.push_back({row.at(0).get<double>(), row.at(1).get<double>()});
    return make_string(std::move(entries));
  }
  raise(errc::invalid_argument,
        "string document needs 'lattice' or 'lengths'");
}

}  // namespace

FractalString parse_string_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    raise(errc::invalid_argument, std::string("bad JSON: ") + e.what());
  }
  return string_from_json(j);
}

FractalString load_string(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(errc::io_error, "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    raise(errc::io_error, std::string("bad JSON: ") + e.what());
  }
  return string_from_json(j);
}

void save_string(const std::string& path, const FractalString& s) {
  nlohmann::json j;
  if (s.lattice) {
    j["lattice"] = {{"b", s.lattice->b},
                    {"m", s.lattice->m},
                    {"depth", s.lattice->depth}};
  } else {
    nlohmann::json rows = nlohmann::json::array();
    for (const LengthEntry& e : s.lengths)
      rows.push_back({e.length, e.weight});
    j["lengths"] = std::move(rows);
  }
  std::ofstream out(path);
  if (!out) raise(errc::io_error, "cannot open " + path);
  out << j.dump(2) << "\n";
  if (!out) raise(errc::io_error, "short write to " + path);
}

}  // namespace zetalab
