// Command-line front door: configures one experiment per invocation, runs
// the corresponding library operations, and writes provenance-stamped
// result files (CSV for curves and tables, JSON for structured reports).
// Exit codes: 0 success, 2 config validation failure, 3 computation error;
// failures emit one machine-readable JSON object on standard error.
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zetalab/dimensions.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/explicit_formula.hpp"
#include "zetalab/fractal_string.hpp"
#include "zetalab/grid_function.hpp"
#include "zetalab/invertibility.hpp"
#include "zetalab/spectral.hpp"
#include "zetalab/spectral_operator.hpp"
#include "zetalab/table_io.hpp"
#include "zetalab/zeta.hpp"

using nlohmann::json;
using namespace zetalab;

namespace {

// ---------------------------------------------------------------------
// shared plumbing

struct GlobalOpts {
  std::string out_dir = ".";
  std::string format;  // "" = command default, else "csv" or "json"
};

double parse_double(const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(v))
    raise(errc::invalid_argument, "not a finite number: '" + text + "'");
  return v;
}

// "a,b,c" as listed values, or "lo:hi:n" as n linearly spaced values.
std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    size_t p1 = text.find(':');
    size_t p2 = text.find(':', p1 + 1);
    if (p2 == std::string::npos || text.find(':', p2 + 1) != std::string::npos)
      raise(errc::invalid_argument, "grid must be lo:hi:n, got '" + text + "'");
    double lo = parse_double(text.substr(0, p1));
    double hi = parse_double(text.substr(p1 + 1, p2 - p1 - 1));
    double nd = parse_double(text.substr(p2 + 1));
    long n = std::lround(nd);
    if (n < 2 || double(n) != nd || hi <= lo)
      raise(errc::invalid_argument,
            "grid needs hi > lo and an integer count >= 2");
    for (long i = 0; i < n; ++i)
      out.push_back(lo + (hi - lo) * double(i) / double(n - 1));
    return out;
  }
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    std::string tok = text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (tok.empty())
      raise(errc::invalid_argument, "empty entry in list '" + text + "'");
    out.push_back(parse_double(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) raise(errc::invalid_argument, "empty value list");
  return out;
}

FractalString resolve_string(const std::string& src) {
  if (src == "cantor") return cantor_string();
  if (!src.empty() && src.front() == '{') return parse_string_json(src);
  if (!std::filesystem::exists(src))
    raise(errc::invalid_argument,
          "string source must be 'cantor', inline JSON, or an existing "
          "file; got '" + src + "'");
  return load_string(src);
}

// Single-line form of the string source for the config header.
std::string config_token(std::string src) {
  std::replace(src.begin(), src.end(), '\n', ' ');
  std::replace(src.begin(), src.end(), '\r', ' ');
  return src;
}

std::string out_path(const GlobalOpts& g, const std::string& name) {
  std::error_code ec;
  std::filesystem::create_directories(g.out_dir, ec);
  if (ec)
    raise(errc::io_error, "cannot create output directory " + g.out_dir);
  return (std::filesystem::path(g.out_dir) / name).string();
}

struct NumTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// Curve/table emission honouring --format (default csv).
void emit_table(const GlobalOpts& g, const OutputMeta& meta,
                const NumTable& table, const std::string& base) {
  std::string fmt = g.format.empty() ? "csv" : g.format;
  if (fmt == "csv") {
    CsvTable t;
    t.columns = table.columns;
    for (const auto& row : table.rows) {
      std::vector<std::string> cells;
      cells.reserve(row.size());
      for (double v : row) cells.push_back(format_double(v));
      t.rows.push_back(std::move(cells));
    }
    std::string p = out_path(g, base + ".csv");
    write_text_file(p, csv_document(meta, t));
    std::cout << "wrote " << p << "\n";
  } else if (fmt == "json") {
    json rows = json::array();
    for (const auto& row : table.rows) {
      json obj;
      for (size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = row[i];
      rows.push_back(std::move(obj));
    }
    json result;
    result["columns"] = table.columns;
    result["rows"] = std::move(rows);
    std::string p = out_path(g, base + ".json");
    write_text_file(p, json_document(meta, result));
    std::cout << "wrote " << p << "\n";
  } else {
    raise(errc::invalid_argument, "format must be csv or json");
  }
}

// Structured-report emission; these commands have no tabular form.
void emit_report(const GlobalOpts& g, const OutputMeta& meta,
                 const json& result, const std::string& base) {
  std::string fmt = g.format.empty() ? "json" : g.format;
  if (fmt != "json")
    raise(errc::invalid_argument,
          "this command emits a structured report; only json is available");
  std::string p = out_path(g, base + ".json");
  write_text_file(p, json_document(meta, result));
  std::cout << "wrote " << p << "\n";
}

json complex_json(cxd z) {
  return json{{"re", z.real()}, {"im", z.imag()}};
}

std::string fd(double v) { return format_double(v); }

// ---------------------------------------------------------------------
// commands

int cmd_zeros(const GlobalOpts& g, double tmax, double tol) {
  ZeroTable table = ensure_zeros(tmax, tol, default_zero_cache_path());
  NumTable t;
  t.columns = {"index", "t", "half_width"};
  long idx = 0;
  for (const ZetaZero& z : table.zeros)
    if (z.t <= tmax) t.rows.push_back({double(++idx), z.t, z.half_width});
  OutputMeta meta;
  meta.command = "zeros";
  meta.config = "tmax=" + fd(tmax) + " tol=" + fd(tol);
  meta.disclosures = {
      "ordinates bracketed by sign changes of the rescaled completed "
      "symbol and bisected until half_width <= " + fd(tol),
      "scan step 0.01 with one automatic 10x refinement"};
  emit_table(g, meta, t, "zeros");
  return 0;
}

int cmd_zeta_eval(const GlobalOpts& g, double re, double im, bool completed) {
  cxd s(re, im);
  cxd v = completed ? xi(s) : zeta(s);
  json result;
  result["s"] = complex_json(s);
  result["symbol"] = completed ? "xi" : "zeta";
  result["value"] = complex_json(v);
  result["modulus"] = std::abs(v);
  OutputMeta meta;
  meta.command = "zeta-eval";
  meta.config = "re=" + fd(re) + " im=" + fd(im) +
                " completed=" + (completed ? "1" : "0");
  meta.disclosures = {"series tail bounded below 1e-12 absolute"};
  emit_report(g, meta, result, "zeta_eval");
  return 0;
}

int cmd_string_info(const GlobalOpts& g, const std::string& src) {
  FractalString s = resolve_string(src);
  json result;
  result["source"] = src;
  result["entries"] = s.lengths.size();
  result["total_length"] = s.total_length();
  result["tail_length"] = s.tail_length();
  result["abscissa_of_convergence"] = abscissa_of_convergence(s);
  if (s.lattice)
    result["lattice"] = {{"b", s.lattice->b},
                         {"m", s.lattice->m},
                         {"depth", s.lattice->depth}};
  else
    result["lattice"] = nullptr;
  if (s.power_law)
    result["power_law"] = {{"dim", s.power_law->dim},
                           {"scale", s.power_law->scale}};
  else
    result["power_law"] = nullptr;
  OutputMeta meta;
  meta.command = "string-info";
  meta.config = "string=" + config_token(src);
  meta.disclosures = {
      "abscissa from the exact lattice exponent or a counting-growth fit"};
  emit_report(g, meta, result, "string_info");
  return 0;
}

int cmd_tube(const GlobalOpts& g, const std::string& src, int decades,
             int per_decade, double eps_max, double sigma_min, double tmax) {
  if (decades < 1 || per_decade < 1 || !(eps_max > 0.0))
    raise(errc::invalid_argument,
          "need eps-decades >= 1, points-per-decade >= 1, eps-max > 0");
  FractalString s = resolve_string(src);
  std::vector<double> eps;
  for (int k = 0; k <= decades * per_decade; ++k)
    eps.push_back(eps_max * std::pow(10.0, -double(k) / double(per_decade)));
  OutputMeta meta;
  meta.command = "tube";
  meta.config = "string=" + config_token(src) + " eps-decades=" +
                std::to_string(decades) + " points-per-decade=" +
                std::to_string(per_decade) + " eps-max=" + fd(eps_max) +
                " sigma-min=" + fd(sigma_min) + " tmax=" + fd(tmax);
  NumTable t;
  if (s.lattice) {
    Window w{sigma_min, tmax};
    t.columns = {"epsilon", "direct", "via_dimensions", "rel_error"};
    for (double e : eps) {
      double direct = direct_tube_volume(s, e);
      double via = tube_formula_via_dimensions(s, e, w);
      t.rows.push_back({e, direct, via, std::abs(via - direct) / direct});
    }
    meta.disclosures = {
        "dimension sum over the window Re s >= " + fd(sigma_min) +
            ", |Im s| <= " + fd(tmax),
        "direct volumes include the analytic tail of the length sequence"};
  } else {
    t.columns = {"epsilon", "direct"};
    for (double e : eps) t.rows.push_back({e, direct_tube_volume(s, e)});
    meta.disclosures = {
        "no meromorphic continuation for this string; direct volumes only"};
  }
  emit_table(g, meta, t, "tube");
  return 0;
}

int cmd_dims(const GlobalOpts& g, const std::string& src, double sigma_min,
             double tmax) {
  FractalString s = resolve_string(src);
  auto dims = complex_dimensions_in(s, Window{sigma_min, tmax});
  NumTable t;
  t.columns = {"re_omega", "im_omega", "re_residue", "im_residue"};
  for (const ComplexDimension& d : dims)
    t.rows.push_back({d.omega.real(), d.omega.imag(), d.residue.real(),
                      d.residue.imag()});
  OutputMeta meta;
  meta.command = "dims";
  meta.config = "string=" + config_token(src) + " sigma-min=" + fd(sigma_min) +
                " tmax=" + fd(tmax);
  meta.disclosures = {
      "poles of the continued geometric zeta inside Re s >= " +
          fd(sigma_min) + ", |Im s| <= " + fd(tmax),
      "all poles are simple; conjugate pairs listed explicitly"};
  if (s.lattice) {
    double res = 1.0 / (s.lattice->m * std::log(s.lattice->b));
    meta.disclosures.push_back(
        "lattice rule: every visible residue equals 1/(m log b) = " +
        fd(res));
    if (std::abs(s.lattice->b - 3.0) < 1e-12 &&
        std::abs(s.lattice->m - 2.0) < 1e-12)
      meta.disclosures.push_back(
          "a commonly quoted figure for the ternary rule, 1/log 3, is "
          "twice this value; it omits the multiplicity factor m = 2");
  }
  emit_table(g, meta, t, "dims");
  return 0;
}

int cmd_counting(const GlobalOpts& g, const std::string& src,
                 const std::string& xs_text, double sigma_min, double tmax) {
  FractalString s = resolve_string(src);
  std::vector<double> xs = parse_values(xs_text);
  Window w{sigma_min, tmax};
  long terms = (long)complex_dimensions_in(s, w).size();
  NumTable t;
  t.columns = {"x", "exact", "reconstructed", "terms"};
  for (double x : xs)
    t.rows.push_back({x, geometric_counting(s, x),
                      explicit_counting(s, x, w, 1), double(terms)});
  OutputMeta meta;
  meta.command = "counting";
  meta.config = "string=" + config_token(src) + " x=" + config_token(xs_text) +
                " sigma-min=" + fd(sigma_min) + " tmax=" + fd(tmax);
  meta.disclosures = {
      "reconstruction truncated to dimensions with |Im omega| <= " + fd(tmax),
      "exact counts use half weight at jump points"};
  emit_table(g, meta, t, "counting");
  return 0;
}

int cmd_spectral_count(const GlobalOpts& g, const std::string& src,
                       const std::string& xs_text) {
  FractalString s = resolve_string(src);
  std::vector<double> xs = parse_values(xs_text);
  NumTable t;
  t.columns = {"x", "direct", "convolution", "floor_sum"};
  for (double x : xs) {
    double direct = spectral_counting(s, x, CountMethod::DirectEnumeration).count;
    double conv =
        spectral_counting(s, x, CountMethod::HarmonicConvolution).count;
    double fl = spectral_count_value(s, x);
    t.rows.push_back({x, direct, conv, fl});
  }
  OutputMeta meta;
  meta.command = "spectral-count";
  meta.config = "string=" + config_token(src) + " x=" + config_token(xs_text);
  meta.disclosures = {
      "the three columns are computed independently and must agree exactly"};
  emit_table(g, meta, t, "spectral_count");
  return 0;
}

int cmd_weyl(const GlobalOpts& g, const std::string& src,
             const std::string& xs_text) {
  FractalString s = resolve_string(src);
  std::vector<double> xs = parse_values(xs_text);
  auto rows = weyl_remainder_profile(s, xs);
  NumTable t;
  t.columns = {"x", "weyl", "count", "remainder"};
  for (const WeylRemainder& r : rows)
    t.rows.push_back({r.x, r.weyl, r.count, r.remainder});
  OutputMeta meta;
  meta.command = "weyl";
  meta.config = "string=" + config_token(src) + " x=" + config_token(xs_text);
  meta.disclosures = {"main term W(x) = total_length * x"};
  emit_table(g, meta, t, "weyl");
  return 0;
}

int cmd_lapo(const GlobalOpts& g, double dim, double x_probe) {
  LapoResult r = lapo_coefficient_check(dim, x_probe);
  json result;
  result["dimension"] = r.dimension;
  result["x_probe"] = r.x_probe;
  result["minkowski_content"] = r.minkowski_content;
  result["c_d_predicted"] = r.c_d_predicted;
  result["c_d_measured"] = r.c_d_measured;
  result["rel_error"] = r.rel_error;
  OutputMeta meta;
  meta.command = "lapo";
  meta.config = "dim=" + fd(dim) + " x-probe=" + fd(x_probe);
  meta.disclosures = {
      "Minkowski content measured from tube volumes, not assumed",
      "remainder coefficient fitted from W - N at the probe scale"};
  emit_report(g, meta, result, "lapo");
  return 0;
}

int cmd_inverse_problem(const GlobalOpts& g, double dim, double tau,
                        double beta) {
  InverseProblemReport r = inverse_problem_experiment(dim, tau, beta);
  json result;
  result["dimension"] = r.dimension;
  result["tau"] = r.tau;
  result["beta"] = r.beta;
  result["geometric_amplitude"] = r.geometric_amplitude;
  result["spectral_amplitude"] = r.spectral_amplitude;
  result["amplitude_ratio"] = r.amplitude_ratio;
  result["zeta_modulus"] = r.zeta_modulus;
  OutputMeta meta;
  meta.command = "inverse-problem";
  meta.config =
      "dim=" + fd(dim) + " tau=" + fd(tau) + " beta=" + fd(beta);
  meta.disclosures = {
      "amplitudes fitted to the log-periodic harmonic cos(tau log x) after "
      "removing the leading power"};
  emit_report(g, meta, result, "inverse_problem");
  return 0;
}

int cmd_operator_check(const GlobalOpts& g, double c,
                       const std::string& realization, long prime_cap) {
  if (c < 0.0 || !std::isfinite(c))
    raise(errc::invalid_argument, "weight exponent c must be >= 0");
  if (prime_cap < 2)
    raise(errc::invalid_argument, "prime-cap must be >= 2");
  ShiftRealization r;
  if (realization == "exact")
    r = ShiftRealization::ExactLog;
  else if (realization == "lattice")
    r = ShiftRealization::LatticeRounded;
  else
    raise(errc::invalid_argument, "realization must be exact or lattice");

  const double h = std::ldexp(1.0, -10);
  auto gauss = [](double mu, double sigma) {
    return [mu, sigma](double t) {
      double u = (t - mu) / sigma;
      return cxd(std::exp(-0.5 * u * u), 0.0);
    };
  };
  auto wmax_diff = [](const GridFunction& a, const GridFunction& b) {
    double m = 0.0;
    for (size_t i = 0; i < a.samples.size(); ++i)
      m = std::max(m, std::abs(a.samples[i] - b.samples[i]) *
                          std::exp(-a.c * a.t_at(i)));
    return m;
  };
  auto wnorm_diff = [](const GridFunction& a, const GridFunction& b) {
    GridFunction d = a;
    for (size_t i = 0; i < d.samples.size(); ++i)
      d.samples[i] -= b.samples[i];
    return weighted_norm(d);
  };

  json result;
  result["c"] = c;
  result["realization"] = realization;
  result["grid_step"] = h;

  // 1) weighted-shift scaling ||shift(f,t)|| = e^{-ct} ||f||
  {
    GridFunction f = make_grid_function(-40.0, 40.0, h, c, gauss(0.0, 1.0));
    double n0 = weighted_norm(f);
    double worst = 0.0;
    for (double t0 : {1.0, 0.3, 2.5}) {
      double ratio = weighted_norm(shift_group(f, t0)) / n0;
      worst = std::max(worst, std::abs(ratio - std::exp(-c * t0)));
    }
    result["shift_scaling_residual"] = worst;
  }

  // 2) adjoint identity <df, g> = <f, (2c - d) g>, residual O(h^2)
  {
    GridFunction u = make_grid_function(-40.0, 40.0, h, c, gauss(-1.0, 1.0));
    GridFunction v = make_grid_function(-40.0, 40.0, h, c, gauss(1.5, 0.8));
    GridFunction du = infinitesimal_shift(u);
    GridFunction dv = infinitesimal_shift(v);
    GridFunction rhs = zero_like(v);
    for (size_t i = 0; i < v.samples.size(); ++i)
      rhs.samples[i] = 2.0 * c * v.samples[i] - dv.samples[i];
    double resid = std::abs(weighted_inner(du, v) - weighted_inner(u, rhs)) /
                   (weighted_norm(u) * weighted_norm(v));
    result["adjoint_residual"] = resid;
    result["adjoint_bound_h2"] = h * h;
  }

  // 3) Moebius round trip a(mu(f)) = f
  {
    GridFunction f = make_grid_function(-8.0, 6.0, h, c, gauss(-4.0, 0.3));
    GridFunction back =
        apply_spectral_operator_direct(apply_mobius_inverse(f, r), r);
    result["mobius_roundtrip_error"] = wmax_diff(back, f);
  }

  // 4) Euler-product composition vs the full shift sum (c > 1 only: below
  //    that line the missing-prime tail is not summable)
  result["prime_cap"] = prime_cap;
  if (c > 1.0) {
    GridFunction f = make_grid_function(-8.0, 8.0, h, c, gauss(0.0, 3.0 * h));
    GridFunction full = apply_spectral_operator_direct(f, r);
    GridFunction part = compose_euler_product(f, prime_cap, r);
    result["euler_residual"] = wnorm_diff(full, part) / weighted_norm(full);
  } else {
    result["euler_residual"] = nullptr;
  }

  // 5) two-path agreement: zeta multiplier vs the direct sum (c > 1 only:
  //    the symbol meets its pole on the segment otherwise)
  if (c > 1.0) {
    GridFunction f = make_grid_function(-10.0, 10.0, h, c, gauss(0.3, 0.45));
    GridFunction viasym = apply_functional_calculus(
        [](cxd sv) { return zeta(sv); }, f);
    GridFunction direct =
        apply_spectral_operator_direct(f, ShiftRealization::ExactLog);
    result["two_path_rel_error"] =
        wnorm_diff(viasym, direct) / weighted_norm(direct);
  } else {
    result["two_path_rel_error"] = nullptr;
  }

  OutputMeta meta;
  meta.command = "operator-check";
  meta.config = "c=" + fd(c) + " realization=" + realization +
                " prime-cap=" + std::to_string(prime_cap);
  meta.disclosures = {"grid step 2^-10 on compactly supported windows"};
  if (c <= 1.0 && c > 0.0)
    meta.disclosures.push_back(
        "on 0 < c <= 1 the shift sum is formal (densely defined); "
        "identities are evaluated on compactly supported windows only");
  if (c <= 1.0)
    meta.disclosures.push_back(
        "euler_residual and two_path_rel_error need c > 1 and are null");
  emit_report(g, meta, result, "operator_check");
  return 0;
}

void curve_to_table(const SpectrumCurve& curve, NumTable& t) {
  t.columns = {"tau", "re", "im", "modulus"};
  for (const CurvePoint& p : curve.points)
    t.rows.push_back(
        {p.tau, p.value.real(), p.value.imag(), std::abs(p.value)});
}

int cmd_truncated_spectrum(const GlobalOpts& g, double c, double tau_min,
                           double tau_max, double resolution, double offset) {
  SpectrumCurve curve =
      truncated_spectrum_curve({c, tau_min, tau_max}, resolution, offset);
  NumTable t;
  curve_to_table(curve, t);
  OutputMeta meta;
  meta.command = "truncated-spectrum";
  meta.config = "c=" + fd(c) + " tau-min=" + fd(tau_min) + " tau-max=" +
                fd(tau_max) + " resolution=" + fd(resolution) +
                " sample-offset=" + fd(offset);
  meta.disclosures = {
      "step actually used: " + fd(curve.resolution),
      "golden-section refined local minima are merged into the samples",
      "min_modulus " + fd(curve.min_modulus) + " at tau " +
          fd(curve.argmin_tau)};
  if (curve.pole_flag)
    meta.disclosures.push_back(
        "segment punctured at |tau| < 1e-3 around the pole at s = 1");
  emit_table(g, meta, t, "truncated_spectrum");
  return 0;
}

int cmd_invertibility(const GlobalOpts& g, double c, double tau_min,
                      double tau_max, double offset) {
  InvertibilityVerdict v =
      truncated_invertibility({c, tau_min, tau_max}, offset);
  json result;
  result["c"] = v.trunc.c;
  result["tau_min"] = v.trunc.tau_min;
  result["tau_max"] = v.trunc.tau_max;
  result["horizon"] = v.trunc.tau_max;
  result["decision"] = decision_name(v.decision);
  result["min_modulus"] = v.min_modulus;
  result["argmin_tau"] = v.argmin_tau;
  result["threshold"] = v.threshold;
  result["witnesses"] = v.witnesses;
  result["note"] = v.note;
  OutputMeta meta;
  meta.command = "invertibility";
  meta.config = "c=" + fd(c) + " tau-min=" + fd(tau_min) + " tau-max=" +
                fd(tau_max) + " sample-offset=" + fd(offset);
  meta.disclosures = {
      "decision threshold is ten Lipschitz allowances of the scan step",
      "NotInvertible witnesses are certified zero ordinates inside the "
      "segment"};
  emit_report(g, meta, result, "invertibility");
  std::cout << decision_name(v.decision) << "\n";
  return 0;
}

int cmd_rh_scan(const GlobalOpts& g, const std::string& c_text, double tmax,
                double offset) {
  std::vector<double> grid = parse_values(c_text);
  auto rows = rh_diagnostic(grid, tmax, offset);
  json jrows = json::array();
  for (const QuasiVerdict& q : rows) {
    json row;
    row["c"] = q.c;
    row["horizon"] = q.horizon;
    row["decision"] = quasi_decision_name(q.decision);
    if (q.decision == QuasiDecision::NotQuasiInvertible)
      row["witness_tau"] = q.witness_tau;
    else
      row["witness_tau"] = nullptr;
    row["zero_count"] = q.zero_count;
    row["min_modulus"] = q.min_modulus;
    row["argmin_tau"] = q.argmin_tau;
    row["note"] = q.note;
    jrows.push_back(std::move(row));
  }
  json result;
  result["horizon"] = tmax;
  result["rows"] = std::move(jrows);
  OutputMeta meta;
  meta.command = "rh-scan";
  meta.config = "c=" + config_token(c_text) + " tmax=" + fd(tmax) +
                " sample-offset=" + fd(offset);
  meta.disclosures = {
      "one quasi-invertibility verdict per line Re s = c, horizon-limited",
      "grid must lie inside (0,1) and avoid 1/2; the critical line is "
      "examined by the invertibility command"};
  emit_report(g, meta, result, "rh_scan");
  for (const QuasiVerdict& q : rows)
    std::cout << "c=" << fd(q.c) << " " << quasi_decision_name(q.decision)
              << "\n";
  return 0;
}

int cmd_global_xi(const GlobalOpts& g, double c, double tmax,
                  double resolution, double offset) {
  SpectrumCurve curve = global_operator_curve(c, tmax, resolution, offset);
  NumTable t;
  curve_to_table(curve, t);
  OutputMeta meta;
  meta.command = "global-xi";
  meta.config = "c=" + fd(c) + " tmax=" + fd(tmax) + " resolution=" +
                fd(resolution) + " sample-offset=" + fd(offset);
  meta.disclosures = {
      "symbol is the completed zeta; it is real-valued on c = 1/2",
      "step actually used: " + fd(curve.resolution),
      "min_modulus " + fd(curve.min_modulus) + " at tau " +
          fd(curve.argmin_tau)};
  emit_table(g, meta, t, "global_xi");
  return 0;
}

int cmd_explicit(const GlobalOpts& g, const std::string& xs_text,
                 long n_zeros) {
  std::vector<double> xs = parse_values(xs_text);
  auto rows = duality_report(xs, n_zeros);
  NumTable t;
  t.columns = {"x", "exact", "reconstructed", "abs_error", "n_zeros"};
  for (const DualityRow& r : rows)
    t.rows.push_back(
        {r.x, r.exact, r.reconstructed, r.abs_error, double(r.n_zeros)});
  OutputMeta meta;
  meta.command = "explicit";
  meta.config = "x=" + config_token(xs_text) + " zeros=" +
                std::to_string(n_zeros);
  meta.disclosures = {
      "zero sum truncated to the first " + std::to_string(n_zeros) +
          " conjugate pairs",
      "exact counts carry half weight at prime-power jumps; probe midpoints "
      "to avoid them",
      "trivial-zero tail integrated to 1e-13 absolute"};
  emit_table(g, meta, t, "explicit");
  return 0;
}

int cmd_momentum_witness(const GlobalOpts& g, double c, double tau,
                         const std::string& widths_text, double offset) {
  std::vector<double> widths = parse_values(widths_text);
  WitnessResult r = approximate_point_spectrum_witness(c, tau, widths, offset);
  json pts = json::array();
  for (const WitnessPoint& p : r.points) {
    json row;
    row["width"] = p.width;
    row["residual"] = p.residual;
    row["on_line_reference"] = 1.0 / (std::sqrt(2.0) * p.width);
    pts.push_back(std::move(row));
  }
  json result;
  result["c"] = r.c;
  result["tau"] = r.tau;
  result["lambda_offset"] = r.lambda_offset;
  result["off_line_floor"] = std::abs(r.lambda_offset);
  result["points"] = std::move(pts);
  OutputMeta meta;
  meta.command = "momentum-witness";
  meta.config = "c=" + fd(c) + " tau=" + fd(tau) + " widths=" +
                config_token(widths_text) + " offset=" + fd(offset);
  meta.disclosures = {
      "residual ||df - lambda f|| / ||f|| of Gaussian-windowed exponentials "
      "in the weighted norm",
      "on-line residuals follow 1/(sqrt(2) width); off-line ones level off "
      "near |offset|"};
  emit_report(g, meta, result, "momentum_witness");
  return 0;
}

int exit_code_for(const Error& e) {
  return e.code() == errc::invalid_argument ? 2 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "zetalab: a numerical laboratory for zeta symbols, fractal strings, "
      "and weighted shift operators"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--out", g.out_dir, "output directory")
      ->capture_default_str();
  app.add_option("--format", g.format,
                 "output format: csv or json (default depends on the "
                 "command; curves default to csv, reports to json)")
      ->check(CLI::IsMember({"csv", "json"}));

  std::function<int()> action;

  {
    auto* c = app.add_subcommand("zeros",
                                 "certified critical-line zero ordinates");
    auto tmax = std::make_shared<double>(50.0);
    auto tol = std::make_shared<double>(1e-9);
    c->add_option("--tmax", *tmax, "scan ordinates in (0, tmax]")
        ->capture_default_str();
    c->add_option("--tol", *tol, "bracket half-width target")
        ->capture_default_str();
    c->callback([&, tmax, tol] {
      action = [&, tmax, tol] { return cmd_zeros(g, *tmax, *tol); };
    });
  }
  {
    auto* c = app.add_subcommand("zeta-eval",
                                 "evaluate the zeta or completed-zeta symbol");
    auto re = std::make_shared<double>(2.0);
    auto im = std::make_shared<double>(0.0);
    auto completed = std::make_shared<bool>(false);
    c->add_option("--re", *re, "Re s")->required();
    c->add_option("--im", *im, "Im s")->capture_default_str();
    c->add_flag("--completed", *completed,
                "evaluate the completed symbol instead");
    c->callback([&, re, im, completed] {
      action = [&, re, im, completed] {
        return cmd_zeta_eval(g, *re, *im, *completed);
      };
    });
  }
  {
    auto* c = app.add_subcommand("string-info",
                                 "summary of a fractal string source");
    auto src = std::make_shared<std::string>();
    c->add_option("--string", *src,
                  "'cantor', inline JSON, or a JSON file path")
        ->required();
    c->callback([&, src] {
      action = [&, src] { return cmd_string_info(g, *src); };
    });
  }
  {
    auto* c = app.add_subcommand(
        "tube", "direct vs dimension-sum inner tube volumes");
    auto src = std::make_shared<std::string>("cantor");
    auto decades = std::make_shared<int>(6);
    auto per_decade = std::make_shared<int>(8);
    auto eps_max = std::make_shared<double>(0.25);
    auto sigma_min = std::make_shared<double>(0.0);
    auto tmax = std::make_shared<double>(200.0);
    c->add_option("--string", *src, "string source")->capture_default_str();
    c->add_option("--eps-decades", *decades, "decades below eps-max")
        ->capture_default_str();
    c->add_option("--points-per-decade", *per_decade, "grid density")
        ->capture_default_str();
    c->add_option("--eps-max", *eps_max, "largest epsilon")
        ->capture_default_str();
    c->add_option("--sigma-min", *sigma_min, "window left edge")
        ->capture_default_str();
    c->add_option("--tmax", *tmax, "window height |Im s| <= tmax")
        ->capture_default_str();
    c->callback([&, src, decades, per_decade, eps_max, sigma_min, tmax] {
      action = [&, src, decades, per_decade, eps_max, sigma_min, tmax] {
        return cmd_tube(g, *src, *decades, *per_decade, *eps_max, *sigma_min,
                        *tmax);
      };
    });
  }
  {
    auto* c = app.add_subcommand(
        "dims", "visible complex dimensions with residues");
    auto src = std::make_shared<std::string>("cantor");
    auto sigma_min = std::make_shared<double>(-1.0);
    auto tmax = std::make_shared<double>(50.0);
    c->add_option("--string", *src, "string source")->capture_default_str();
    c->add_option("--sigma-min", *sigma_min, "window left edge")
        ->capture_default_str();
    c->add_option("--tmax", *tmax, "window height")->capture_default_str();
    c->callback([&, src, sigma_min, tmax] {
      action = [&, src, sigma_min, tmax] {
        return cmd_dims(g, *src, *sigma_min, *tmax);
      };
    });
  }
  {
    auto* c = app.add_subcommand(
        "counting", "geometric counting staircase vs reconstruction");
    auto src = std::make_shared<std::string>("cantor");
    auto xs = std::make_shared<std::string>("10,30,100");
    auto sigma_min = std::make_shared<double>(0.0);
    auto tmax = std::make_shared<double>(500.0);
    c->add_option("--string", *src, "string source")->capture_default_str();
    c->add_option("--x", *xs, "probe list a,b,c or grid lo:hi:n")
        ->capture_default_str();
    c->add_option("--sigma-min", *sigma_min, "window left edge")
        ->capture_default_str();
    c->add_option("--tmax", *tmax, "window height")->capture_default_str();
    c->callback([&, src, xs, sigma_min, tmax] {
      action = [&, src, xs, sigma_min, tmax] {
        return cmd_counting(g, *src, *xs, *sigma_min, *tmax);
      };
    });
  }
  {
    auto* c = app.add_subcommand(
        "spectral-count", "three-way frequency count cross-check");
    auto src = std::make_shared<std::string>("cantor");
    auto xs = std::make_shared<std::string>("10,100,1000");
    c->add_option("--string", *src, "string source")->capture_default_str();
    c->add_option("--x", *xs, "probe list a,b,c or grid lo:hi:n")
        ->capture_default_str();
    c->callback([&, src, xs] {
      action = [&, src, xs] { return cmd_spectral_count(g, *src, *xs); };
    });
  }
  {
    auto* c = app.add_subcommand("weyl", "Weyl-term remainder profile");
    auto src = std::make_shared<std::string>("cantor");
    auto xs = std::make_shared<std::string>("10:10000:40");
    c->add_option("--string", *src, "string source")->capture_default_str();
    c->add_option("--x", *xs, "probe list a,b,c or grid lo:hi:n")
        ->capture_default_str();
    c->callback([&, src, xs] {
      action = [&, src, xs] { return cmd_weyl(g, *src, *xs); };
    });
  }
  {
    auto* c = app.add_subcommand(
        "lapo", "remainder coefficient: measured vs predicted");
    auto dim = std::make_shared<double>(0.5);
    auto x_probe = std::make_shared<double>(1e5);
    c->add_option("--dim", *dim, "dimension in (0,1)")->required();
    c->add_option("--x-probe", *x_probe, "probe scale")
        ->capture_default_str();
    c->callback([&, dim, x_probe] {
      action = [&, dim, x_probe] { return cmd_lapo(g, *dim, *x_probe); };
    });
  }
  {
    auto* c = app.add_subcommand(
        "inverse-problem", "spectral vs geometric oscillation amplitudes");
    auto dim = std::make_shared<double>(0.5);
    auto tau = std::make_shared<double>(14.134725);
    auto beta = std::make_shared<double>(0.005);
    c->add_option("--dim", *dim, "dimension in (0,1)")->capture_default_str();
    c->add_option("--tau", *tau, "oscillation frequency")->required();
    c->add_option("--beta", *beta, "oscillation amplitude")
        ->capture_default_str();
    c->callback([&, dim, tau, beta] {
      action = [&, dim, tau, beta] {
        return cmd_inverse_problem(g, *dim, *tau, *beta);
      };
    });
  }
  {
    auto* c = app.add_subcommand(
        "operator-check", "shift-operator law residual battery");
    auto cval = std::make_shared<double>(2.0);
    auto realization = std::make_shared<std::string>("lattice");
    auto prime_cap = std::make_shared<long>(100);
    c->add_option("--c", *cval, "weight exponent")->capture_default_str();
    c->add_option("--realization", *realization, "exact or lattice")
        ->capture_default_str();
    c->add_option("--prime-cap", *prime_cap, "Euler composition cap")
        ->capture_default_str();
    c->callback([&, cval, realization, prime_cap] {
      action = [&, cval, realization, prime_cap] {
        return cmd_operator_check(g, *cval, *realization, *prime_cap);
      };
    });
  }
  {
    auto* c = app.add_subcommand(
        "truncated-spectrum", "sampled symbol curve on a vertical segment");
    auto cval = std::make_shared<double>(0.5);
    auto tau_min = std::make_shared<double>(0.0);
    auto tau_max = std::make_shared<double>(10.0);
    auto resolution = std::make_shared<double>(0.005);
    auto offset = std::make_shared<double>(0.0);
    c->add_option("--c", *cval, "line Re s = c")->capture_default_str();
    c->add_option("--tau-min", *tau_min, "inner truncation")
        ->capture_default_str();
    c->add_option("--tau-max", *tau_max, "outer truncation")->required();
    c->add_option("--resolution", *resolution, "tau step bound")
        ->capture_default_str();
    c->add_option("--sample-offset", *offset,
                  "grid phase in [0,1) steps, for placement robustness")
        ->capture_default_str();
    c->callback([&, cval, tau_min, tau_max, resolution, offset] {
      action = [&, cval, tau_min, tau_max, resolution, offset] {
        return cmd_truncated_spectrum(g, *cval, *tau_min, *tau_max,
                                      *resolution, *offset);
      };
    });
  }
  {
    auto* c = app.add_subcommand(
        "invertibility", "verdict for one truncated segment");
    auto cval = std::make_shared<double>(0.5);
    auto tau_min = std::make_shared<double>(0.0);
    auto tau_max = std::make_shared<double>(10.0);
    auto offset = std::make_shared<double>(0.0);
    c->add_option("--c", *cval, "line Re s = c")->capture_default_str();
    c->add_option("--tau-min", *tau_min, "inner truncation")
        ->capture_default_str();
    c->add_option("--tau-max", *tau_max, "outer truncation")->required();
    c->add_option("--sample-offset", *offset, "grid phase in [0,1) steps")
        ->capture_default_str();
    c->callback([&, cval, tau_min, tau_max, offset] {
      action = [&, cval, tau_min, tau_max, offset] {
        return cmd_invertibility(g, *cval, *tau_min, *tau_max, *offset);
      };
    });
  }
  {
    auto* c = app.add_subcommand(
        "rh-scan", "quasi-invertibility verdicts over a grid of lines");
    auto grid = std::make_shared<std::string>();
    auto tmax = std::make_shared<double>(100.0);
    auto offset = std::make_shared<double>(0.0);
    c->add_option("--c", *grid, "comma list of lines in (0,1) avoiding 1/2")
        ->required();
    c->add_option("--tmax", *tmax, "horizon")->capture_default_str();
    c->add_option("--sample-offset", *offset, "grid phase in [0,1) steps")
        ->capture_default_str();
    c->callback([&, grid, tmax, offset] {
      action = [&, grid, tmax, offset] {
        return cmd_rh_scan(g, *grid, *tmax, *offset);
      };
    });
  }
  {
    auto* c = app.add_subcommand(
        "global-xi", "completed-symbol curve on a vertical segment");
    auto cval = std::make_shared<double>(0.5);
    auto tmax = std::make_shared<double>(20.0);
    auto resolution = std::make_shared<double>(0.0);
    auto offset = std::make_shared<double>(0.0);
    c->add_option("--c", *cval, "line Re s = c (not 0 or 1)")
        ->capture_default_str();
    c->add_option("--tmax", *tmax, "segment height")->required();
    c->add_option("--resolution", *resolution, "tau step bound (0 = auto)")
        ->capture_default_str();
    c->add_option("--sample-offset", *offset, "grid phase in [0,1) steps")
        ->capture_default_str();
    c->callback([&, cval, tmax, resolution, offset] {
      action = [&, cval, tmax, resolution, offset] {
        return cmd_global_xi(g, *cval, *tmax, *resolution, *offset);
      };
    });
  }
  {
    auto* c = app.add_subcommand(
        "explicit", "prime-power count vs zero-sum reconstruction");
    auto xs = std::make_shared<std::string>("100.5");
    auto zeros = std::make_shared<long>(100);
    c->add_option("--x", *xs, "probe list a,b,c or grid lo:hi:n")
        ->capture_default_str();
    c->add_option("--zeros", *zeros, "conjugate zero pairs in the sum")
        ->capture_default_str();
    c->callback([&, xs, zeros] {
      action = [&, xs, zeros] { return cmd_explicit(g, *xs, *zeros); };
    });
  }
  {
    auto* c = app.add_subcommand(
        "momentum-witness", "approximate-eigenfunction residual decay");
    auto cval = std::make_shared<double>(0.5);
    auto tau = std::make_shared<double>(14.134725);
    auto widths = std::make_shared<std::string>("5,10,20,40");
    auto offset = std::make_shared<double>(0.0);
    c->add_option("--c", *cval, "weight exponent (>= 0)")
        ->capture_default_str();
    c->add_option("--tau", *tau, "candidate frequency")
        ->capture_default_str();
    c->add_option("--widths", *widths, "ascending window widths")
        ->capture_default_str();
    c->add_option("--offset", *offset,
                  "Re(lambda) - c, the off-line displacement")
        ->capture_default_str();
    c->callback([&, cval, tau, widths, offset] {
      action = [&, cval, tau, widths, offset] {
        return cmd_momentum_witness(g, *cval, *tau, *widths, *offset);
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    json err{{"error", "InvalidArgument"}, {"detail", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  }

  if (!action) {
    json err{{"error", "InvalidArgument"}, {"detail", "no command given"}};
    std::cerr << err.dump() << "\n";
    return 2;
  }
  try {
    return action();
  } catch (const Error& e) {
    json err{{"error", errc_name(e.code())}, {"detail", e.what()}};
    std::cerr << err.dump() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    json err{{"error", "Internal"}, {"detail", e.what()}};
    std::cerr << err.dump() << "\n";
    return 3;
  }
}
