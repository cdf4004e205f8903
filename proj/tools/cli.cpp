#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <boost/version.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "zumm/counting.hpp"
#include "zumm/io.hpp"
#include "zumm/li.hpp"
#include "zumm/padic.hpp"
#include "zumm/renorm.hpp"
#include "zumm/rmt.hpp"
#include "zumm/trace_formula.hpp"
#include "zumm/umm.hpp"
#include "zumm/wavelet.hpp"
#include "zumm/zeros.hpp"

namespace zumm::cli {

namespace {

using io::Cell;
using io::Table;

struct Common {
  std::string format = "csv";
  std::string out = "-";
  unsigned threads = 0;
  std::string config;
  Parallelism par() const { return Parallelism{threads}; }
};

/// What a command hands back: the table and whether its internal checks held.
struct Outcome {
  Table table;
  bool consistent = true;
  std::string failure;
};

struct Command {
  CLI::App* app = nullptr;
  std::function<Outcome(const Common&)> run;
};

Cell num(double x) { return Cell{x}; }
Cell num(long long x) { return Cell{x}; }
Cell text(std::string s) { return Cell{std::move(s)}; }

std::vector<double> parse_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError(what + ": cannot parse '" + item + "' as a number");
    }
  }
  return out;
}

// Entries that fail validation are left out of the table; their count and
// line numbers go into the output metadata.
ZeroTable load_zeros(const std::string& path, std::size_t count, double tol, const Common& c, Table& t) {
  if (path.empty()) throw ValidationError("--zeros: this command needs a zero table file");
  std::ifstream probe(path);
  if (!probe) throw ValidationError("--zeros: cannot open '" + path + "'");
  auto table = ingest_zeros(path, tol, count, c.par());
  t.meta("zeros.rejected", static_cast<long long>(table.rejected.size()));
  if (!table.rejected.empty()) {
    std::string lines;
    for (const auto& r : table.rejected) lines += (lines.empty() ? "" : ";") + std::to_string(r.line);
    t.meta("zeros.rejected_lines", lines);
  }
  if (table.size() < count)
    throw ValidationError("--zeros: file holds " + std::to_string(table.size()) + " valid zeros, " +
                          std::to_string(count) + " requested");
  return table;
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--out", c.out, "Output file, '-' for stdout");
  app->add_option("--threads", c.threads, "Worker cap, 0 = all cores; results do not depend on it");
  app->add_option("--config", c.config, "key=value file supplying defaults");
}

// ---------------------------------------------------------------- padic-check

struct PadicParams {
  long prime = 2;
  double s_re = 2.0;
  double s_im = 0.0;
  int shells = 60;
  std::string x;
  int precision = 20;
};

Outcome run_padic(const PadicParams& P, const Common&) {
  require(is_prime(P.prime), "--prime must be prime");
  Outcome o;
  Table& t = o.table;
  t.columns = {"check", "value_re", "value_im", "reference_re", "reference_im", "abs_error", "bound", "pass"};
  const Complex s(P.s_re, P.s_im);
  const auto sum = padic::haar_integrate_norm_power(P.prime, s, P.shells);
  const double err = std::abs(sum.value - sum.closed_form);
  const double bound = sum.tail_bound + 1e-14 * std::abs(sum.closed_form);
  const bool ok = err <= bound;
  t.rows.push_back({text("haar_shell_sum"), num(sum.value.real()), num(sum.value.imag()),
                    num(sum.closed_form.real()), num(sum.closed_form.imag()), num(err), num(bound),
                    num(static_cast<long long>(ok))});
  o.consistent = ok;
  if (P.s_im == 0 && P.s_re == std::round(P.s_re) && P.s_re >= 1) {
    const auto ex = padic::haar_integrate_norm_power_exact(P.prime, static_cast<long>(P.s_re), P.shells);
    const padic::Rational diff = abs(ex.value - ex.closed_form);
    const bool eok = diff <= ex.tail_bound;
    t.rows.push_back({text("haar_exact"), num(static_cast<double>(ex.value)), num(0.0),
                      num(static_cast<double>(ex.closed_form)), num(0.0), num(static_cast<double>(diff)),
                      num(static_cast<double>(ex.tail_bound)), num(static_cast<long long>(eok))});
    t.meta("haar_exact.closed_form", ex.closed_form.str());
    o.consistent = o.consistent && eok;
  }
  if (!P.x.empty()) {
    padic::Rational q;
    try {
      q = padic::Rational(P.x);
    } catch (const std::exception&) {
      throw ValidationError("--x: cannot parse '" + P.x + "' as a rational m/n");
    }
    const auto a = padic::PAdicNumber::from_rational(q, P.prime, P.precision);
    std::string digits;
    for (int d : a.digits()) digits += (digits.empty() ? "" : " ") + std::to_string(d);
    t.meta("x.value", q.str());
    t.meta("x.valuation", a.is_zero() ? std::string("inf") : std::to_string(a.valuation()));
    t.meta("x.norm", padic::padic_norm(q, P.prime).str());
    t.meta("x.digits", digits);
    t.meta("x.fractional_part", padic::fractional_part(q, P.prime).str());
  }
  if (!o.consistent) o.failure = "shell sum differs from the closed form by more than the tail bound";
  return o;
}

// -------------------------------------------------------------- wavelet-check

struct WaveletParams {
  long prime = 2;
  int states = 12;
  double alpha_re = 1.0;
  double alpha_im = 0.0;
  long coset_level = 12;
  long domain_exponent = 12;
  std::string n_list = "0,1";
  double tolerance = 1e-6;
};

Outcome run_wavelet(const WaveletParams& P, const Common&) {
  require(is_prime(P.prime), "--prime must be prime");
  require(P.states >= 1, "--states must be >= 1");
  Outcome o;
  Table& t = o.table;
  t.columns = {"check", "n", "value_re", "value_im", "reference_re", "reference_im", "error", "pass"};
  double gram = 0;
  for (int a = 1; a <= P.states; ++a)
    for (int b = 1; b <= P.states; ++b) {
      const auto v = wavelet::inner_product(wavelet::WaveletIndex::restricted(P.prime, a),
                                            wavelet::WaveletIndex::restricted(P.prime, b), P.states + 1);
      gram = std::max(gram, std::abs(v - Complex(a == b ? 1.0 : 0.0)));
    }
  const bool gok = gram < 1e-12;
  t.rows.push_back({text("gram_max_deviation"), num(static_cast<long long>(P.states)), num(gram), num(0.0),
                    num(0.0), num(0.0), num(gram), num(static_cast<long long>(gok))});
  o.consistent = gok;
  for (double nd : parse_list(P.n_list, "--n-list")) {
    require(nd == std::round(nd), "--n-list: scales must be integers");
    wavelet::WaveletIndex idx{P.prime, static_cast<long>(nd), 0, 1};
    wavelet::VladimirovSpec spec;
    spec.alpha = Complex(P.alpha_re, P.alpha_im);
    spec.mode = wavelet::VladimirovMode::Spectral;
    const auto ev = wavelet::vladimirov_apply(spec, idx).eigenvalue;
    spec.mode = wavelet::VladimirovMode::Kernel;
    spec.coset_level = P.coset_level;
    spec.domain_exponent = P.domain_exponent;
    const auto kr = wavelet::vladimirov_apply(spec, idx);
    const bool ok = kr.residual < P.tolerance;
    t.rows.push_back({text("vladimirov_kernel"), num(static_cast<long long>(idx.n)), num(kr.eigenvalue.real()),
                      num(kr.eigenvalue.imag()), num(ev.real()), num(ev.imag()), num(kr.residual),
                      num(static_cast<long long>(ok))});
    o.consistent = o.consistent && ok;
  }
  if (!o.consistent) o.failure = "Gram matrix or kernel residual outside tolerance";
  return o;
}

// ---------------------------------------------------------------------- betas

struct BetasParams {
  std::string model = "local";
  long prime = 2;
  double s0 = 1.5;
  int mmax = 20;
  double radius = 0.5;
  int nodes = 512;
  double radius2 = 0.0;
  double tolerance = 1e-7;
};

void beta_table(Table& t, const umm::BetaSeries& b) {
  t.columns = {"n", "beta_re", "beta_im", "radius_consistency"};
  for (std::size_t i = 0; i < b.beta.size(); ++i)
    t.rows.push_back({num(static_cast<long long>(i + 1)), num(b.beta[i].real()), num(b.beta[i].imag()),
                      num(b.error[i])});
  t.meta("series.model", b.model);
  t.meta("series.radius", b.radius);
  t.meta("series.second_radius", b.second_radius);
  t.meta("series.nodes", static_cast<long long>(b.nodes));
  t.meta("series.radius_error", b.radius_error);
  t.meta("series.node_error", b.node_error);
}

umm::ContourSpec contour_spec(double radius, int nodes, double radius2, double tol) {
  umm::ContourSpec cs;
  cs.radius = radius;
  cs.nodes = nodes;
  cs.second_radius = radius2;
  cs.tolerance = tol;
  return cs;
}

Outcome run_betas(const BetasParams& P, const Common& c) {
  umm::ResolventModel model;
  if (P.model == "local")
    model = umm::ResolventModel::local_zeta(P.prime);
  else if (P.model == "gamma")
    model = umm::ResolventModel::gamma_place();
  else if (P.model == "shifted")
    model = umm::ResolventModel::shifted_zeta(P.s0);
  else if (P.model == "symmetric")
    model = umm::ResolventModel::symmetric_xi();
  else
    throw ValidationError("--model must be one of local, gamma, shifted, symmetric");
  Outcome o;
  const auto b = umm::beta_contour(model, P.mmax, contour_spec(P.radius, P.nodes, P.radius2, P.tolerance), c.par());
  beta_table(o.table, b);
  return o;
}

// -------------------------------------------------------------------- density

struct DensityParams {
  long prime = 2;
  int points = 256;
  int spikes = 5;
};

Outcome run_density(const DensityParams& P, const Common&) {
  require(P.points >= 1, "--points must be >= 1");
  std::vector<double> grid(P.points);
  for (int k = 0; k < P.points; ++k) grid[k] = kTwoPi * (k + 0.5) / P.points;
  const auto prof = umm::density_profile(P.prime, grid, P.spikes);
  Outcome o;
  Table& t = o.table;
  t.columns = {"kind", "index", "theta", "value"};
  for (const auto& s : prof.spikes)
    t.rows.push_back({text("spike"), num(static_cast<long long>(s.n)), num(s.theta), num(s.weight)});
  for (std::size_t i = 0; i < prof.theta.size(); ++i)
    t.rows.push_back({text("vprime"), num(static_cast<long long>(i)), num(prof.theta[i]), num(prof.vprime[i])});
  return o;
}

// ------------------------------------------------------------------------- li

struct LiParams {
  int nmax = 10;
  std::string method = "both";
  double radius = 0.4;
  int nodes = 256;
  std::string zeros;
  std::size_t nzeros = 2000;
  double zero_tol = 1e-6;
  double tolerance = 1e-3;
  bool tail_correction = true;
};

Outcome run_li(const LiParams& P, const Common& c) {
  require(P.method == "cauchy" || P.method == "zeros" || P.method == "both",
          "--method must be cauchy, zeros or both");
  Outcome o;
  Table& t = o.table;
  std::optional<LiSeries> a, b;
  if (P.method != "zeros") a = li_cauchy(P.nmax, P.radius, P.nodes, c.par());
  if (P.method != "cauchy") {
    const auto zt = load_zeros(P.zeros, P.nzeros, P.zero_tol, c, t);
    b = li_zero_sum(P.nmax, zt, P.nzeros, P.tail_correction);
    t.meta("zeros.tail_cutoff", b->tail_cutoff);
  }
  t.columns = {"n"};
  if (a) t.columns.insert(t.columns.end(), {"lambda_cauchy", "error_cauchy"});
  if (b) t.columns.insert(t.columns.end(), {"lambda_zeros", "error_zeros"});
  if (a && b) t.columns.push_back("difference");
  bool positive = true;
  for (int n = 1; n <= P.nmax; ++n) {
    std::vector<Cell> row{num(static_cast<long long>(n))};
    if (a) {
      row.insert(row.end(), {num(a->lambda[n - 1]), num(a->error[n - 1])});
      positive = positive && a->lambda[n - 1] > 0;
    }
    if (b) {
      row.insert(row.end(), {num(b->lambda[n - 1]), num(b->error[n - 1])});
      positive = positive && b->lambda[n - 1] > 0;
    }
    if (a && b) row.push_back(num(a->lambda[n - 1] - b->lambda[n - 1]));
    t.rows.push_back(std::move(row));
  }
  t.meta("all_positive", positive ? "true" : "false");
  o.consistent = positive;
  if (a && b) {
    const auto cmp = compare_li(*a, *b, P.tolerance);
    t.meta("max_difference", cmp.max_difference);
    t.meta("agree", cmp.agree ? "true" : "false");
    o.consistent = o.consistent && cmp.agree;
  }
  if (!o.consistent) o.failure = "Li coefficients disagree between methods or are not all positive";
  return o;
}

// ------------------------------------------------------------------- beta-ren

struct BetaRenParams {
  int mmax = 10;
  double mu = 1.5;
  std::string method = "compare";
  long long primes_max = 10000000;
  int power_max = 60;
  bool tail_correction = true;
  double radius = 0.5;
  int nodes = 1024;
  double tolerance = 1e-6;
};

Outcome run_beta_ren(const BetaRenParams& P, const Common& c) {
  Outcome o;
  Table& t = o.table;
  renorm::PrimeSumSpec ps;
  ps.prime_max = P.primes_max;
  ps.power_max = P.power_max;
  ps.tail_correction = P.tail_correction;
  const auto cs = contour_spec(P.radius, P.nodes, 0.0, 1e-7);
  if (P.method == "prime_sum") {
    beta_table(t, renorm::beta_ren_prime_sum(P.mmax, P.mu, ps, c.par()));
  } else if (P.method == "shifted") {
    beta_table(t, renorm::beta_ren_shifted(P.mmax, P.mu, cs, c.par()));
  } else if (P.method == "xi_decomposition") {
    const auto d = renorm::xi_decomposition(P.mmax, cs, c.par());
    t.columns = {"m", "xi", "two_over_m", "real_place", "g", "identity_residual"};
    for (int m = 1; m <= P.mmax; ++m)
      t.rows.push_back({num(static_cast<long long>(m)), num(d.xi.beta[m - 1].real()), num(2.0 / m),
                        num(d.real_place.beta[m - 1].real()), num(d.g.beta[m - 1].real()),
                        num(d.identity_residual[m - 1])});
    t.meta("max_identity_residual", d.max_identity_residual);
    o.consistent = d.max_identity_residual < P.tolerance;
  } else if (P.method == "compare") {
    const auto a = renorm::beta_ren_prime_sum(P.mmax, P.mu, ps, c.par());
    const auto b = renorm::beta_ren_shifted(P.mmax, P.mu, cs, c.par());
    t.columns = {"m", "prime_sum", "prime_sum_bound", "shifted_contour", "shifted_error", "difference"};
    double md = 0;
    for (int m = 1; m <= P.mmax; ++m) {
      const double d = std::abs(a.beta[m - 1] - b.beta[m - 1]);
      md = std::max(md, d);
      t.rows.push_back({num(static_cast<long long>(m)), num(a.beta[m - 1].real()), num(a.error[m - 1]),
                        num(b.beta[m - 1].real()), num(b.error[m - 1]), num(d)});
    }
    t.meta("max_difference", md);
    o.consistent = md < P.tolerance;
  } else {
    throw ValidationError("--method must be prime_sum, shifted, xi_decomposition or compare");
  }
  if (!o.consistent) o.failure = "renormalized coefficients disagree beyond --tolerance";
  return o;
}

// ---------------------------------------------------------------- trace-check

struct TraceParams {
  std::string zeros;
  std::size_t nzeros = 100;
  long long primes_max = 10000;
  double width = 1.0;
  double zero_tol = 1e-6;
};

Outcome run_trace(const TraceParams& P, const Common& c) {
  Outcome o;
  Table& t = o.table;
  const auto zt = load_zeros(P.zeros, P.nzeros, P.zero_tol, c, t);
  const auto r = trace_formula_check(TestFunctionPair::gaussian(P.width), zt, PrimeTable(P.primes_max));
  t.columns = {"term", "value"};
  const std::vector<std::pair<std::string, double>> terms = {
      {"pole_terms", r.pole_terms},
      {"zero_sum", r.zero_sum},
      {"digamma_integral", r.digamma_integral},
      {"lhs", r.lhs},
      {"log_pi_term", r.log_pi_term},
      {"prime_sum", r.prime_sum},
      {"rhs", r.rhs},
      {"h_half_closed", r.h_half_closed},
      {"h_half_quadrature", r.h_half_quadrature},
      {"integral_cutoff", r.integral_cutoff},
      {"zero_tail_bound", r.zero_tail_bound},
      {"prime_tail_bound", r.prime_tail_bound},
      {"integral_tail_bound", r.integral_tail_bound},
      {"quadrature_error", r.quadrature_error},
      {"rounding_bound", r.rounding_bound},
      {"total_bound", r.total_bound},
      {"residual", r.residual},
      {"self_test_h_error", r.self_test.max_h_error},
      {"self_test_inverse_error", r.self_test.max_double_error},
  };
  for (const auto& [k, v] : terms) t.rows.push_back({text(k), num(v)});
  t.meta("within_bound", r.within_bound ? "true" : "false");
  o.consistent = r.within_bound;
  if (!o.consistent) o.failure = "trace-formula residual exceeds the reported truncation bound";
  return o;
}

// ----------------------------------------------------------- explicit-formula

struct ExplicitParams {
  std::string kind = "psi";
  double x = 10.5;
  std::string zeros;
  std::size_t nzeros = 100;
  long prime = 2;
  std::size_t poles = 1000;
  double zero_tol = 1e-6;
};

Outcome run_explicit(const ExplicitParams& P, const Common& c) {
  Outcome o;
  Table& t = o.table;
  t.columns = {"kind", "x", "direct", "explicit", "difference", "tail_estimate", "terms"};
  double direct = 0;
  CountingValue ex;
  if (P.kind == "psi" || P.kind == "J") {
    const auto zt = load_zeros(P.zeros, P.nzeros, P.zero_tol, c, t);
    direct = P.kind == "psi" ? psi_direct(P.x) : j_direct(P.x);
    ex = P.kind == "psi" ? psi_explicit(P.x, zt, P.nzeros) : j_explicit(P.x, zt, P.nzeros);
  } else if (P.kind == "jlocal") {
    direct = j_local_direct(P.prime, P.x);
    ex = j_local_explicit(P.prime, P.x, P.poles);
  } else {
    throw ValidationError("--kind must be psi, J or jlocal");
  }
  t.rows.push_back({text(P.kind), num(P.x), num(direct), num(ex.value), num(ex.value - direct),
                    num(ex.tail_estimate), num(static_cast<long long>(ex.terms))});
  return o;
}

// ----------------------------------------------------------------- cue-sample

struct CueParams {
  int n = 40;
  std::size_t samples = 4000;
  std::uint64_t seed = 7;
  int bins = 30;
  double rmax = 3.0;
};

void correlation_table(Table& t, const rmt::CorrelationReport& r) {
  t.columns = {"r", "r2", "sine_kernel"};
  for (std::size_t i = 0; i < r.r2.size(); ++i)
    t.rows.push_back({num(r.bin_centers[i]), num(r.r2[i]), num(r.sine_kernel[i])});
  t.meta("points", static_cast<long long>(r.points));
  t.meta("bin_width", r.bin_width);
  t.meta("l2_sine", r.l2_sine);
  t.meta("l2_poisson", r.l2_poisson);
}

Outcome run_cue(const CueParams& P, const Common& c) {
  const auto s = rmt::sample_cue(P.n, P.samples, P.seed, c.par());
  Outcome o;
  correlation_table(o.table, rmt::pair_correlation_cue(s, P.bins, P.rmax));
  return o;
}

// --------------------------------------------------------------- plaquette-mc

struct PlaquetteParams {
  int n = 32;
  std::string beta = "0.25";
  int sweeps = 20000;
  int burn_in = 2000;
  int chains = 4;
  int bins = 64;
  int thin = 10;
  double width = 0.5;
  std::uint64_t seed = 1;
};

Outcome run_plaquette(const PlaquetteParams& P, const Common& c) {
  rmt::PlaquetteSpec spec;
  spec.n = P.n;
  spec.beta = parse_list(P.beta, "--beta");
  spec.sweeps = P.sweeps;
  spec.burn_in = P.burn_in;
  spec.chains = P.chains;
  spec.bins = P.bins;
  spec.thin = P.thin;
  spec.initial_width = P.width;
  spec.seed = P.seed;
  const auto r = rmt::plaquette_mc(spec, c.par());
  Outcome o;
  Table& t = o.table;
  t.columns = {"theta", "density", "oracle", "count"};
  double sup = 0;
  for (std::size_t i = 0; i < r.density.size(); ++i) {
    const double ref = rmt::plaquette_oracle_density(r.bin_centers[i], spec.beta);
    sup = std::max(sup, std::abs(r.density[i] - ref));
    t.rows.push_back({num(r.bin_centers[i]), num(r.density[i]), num(ref), num(static_cast<long long>(r.counts[i]))});
  }
  t.meta("sign_convention", static_cast<long long>(rmt::kPlaquetteSign));
  t.meta("sup_norm_to_oracle", sup);
  t.meta("acceptance_rate", r.acceptance_rate);
  t.meta("acceptance_in_range", r.acceptance_in_range ? "true" : "false");
  t.meta("ungapped_min", r.ungapped_min);
  t.meta("empty_bins", static_cast<long long>(r.empty_bins));
  std::string widths;
  for (double w : r.final_width) widths += (widths.empty() ? "" : ",") + io::format_double(w);
  t.meta("final_width", widths);
  return o;
}

// ----------------------------------------------------------------------- comb

struct CombParams {
  long long prime = 0;
  std::optional<double> mu;
  double qmax = 3.0;
};

Outcome run_comb(const CombParams& P, const Common&) {
  const auto comb = wigner_marginal_comb(P.prime, P.mu, P.qmax);
  Outcome o;
  Table& t = o.table;
  t.columns = {"q", "weight", "prime", "exponent"};
  for (const auto& tooth : comb.teeth)
    t.rows.push_back({num(tooth.q), num(tooth.weight), num(static_cast<long long>(tooth.prime)),
                      num(static_cast<long long>(tooth.exponent))});
  t.meta("position_period", comb.position_period);
  return o;
}

// ------------------------------------------------------------------- plumbing

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

/// Reads key=value lines into "--key=value" arguments.
std::vector<std::string> config_args(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("--config: cannot open '" + path + "'");
  std::vector<std::string> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("--config: line " + std::to_string(lineno) + " is not key=value");
    std::string key = trim(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    if (key == "config") throw ValidationError("--config: nested config files are not supported");
    out.push_back("--" + key + "=" + trim(line.substr(eq + 1)));
  }
  return out;
}

/// Finds --config in the arguments after the subcommand name.
std::optional<std::string> find_config(const std::vector<std::string>& args) {
  std::optional<std::string> path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  return path;
}

/// Rebuilds the argument list that produced an output file from its metadata.
std::vector<std::string> replay_args(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("--replay: cannot open '" + path + "'");
  const int first = in.peek();
  Table t = first == '{' ? io::read_json(in) : io::read_csv(in);
  const std::string* cmd = t.find_meta("command");
  if (!cmd) throw ValidationError("--replay: '" + path + "' has no command in its metadata");
  std::vector<std::string> out{*cmd};
  for (const auto& [k, v] : t.metadata) {
    if (k.rfind("param.", 0) != 0) continue;
    const std::string name = k.substr(6);
    if (name == "out" || name == "config") continue;
    out.push_back("--" + name + "=" + v);
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args = raw_args;
  try {
    if (!args.empty() && (args[0] == "--replay" || args[0].rfind("--replay=", 0) == 0)) {
      std::string path;
      std::size_t rest = 1;
      if (args[0] == "--replay") {
        if (args.size() < 2) throw ValidationError("--replay needs a file");
        path = args[1];
        rest = 2;
      } else {
        path = args[0].substr(9);
      }
      auto rebuilt = replay_args(path);
      rebuilt.insert(rebuilt.end(), args.begin() + static_cast<long>(rest), args.end());
      args = std::move(rebuilt);
    }
    if (!args.empty() && args[0].rfind("-", 0) != 0) {
      if (auto cfg = find_config(args)) {
        auto extra = config_args(*cfg);
        args.insert(args.begin() + 1, extra.begin(), extra.end());
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  CLI::App app{"Numerical experiments on local zeta functions, unitary matrix models and zeta zeros.\n"
               "Use --replay FILE [overrides] to rerun the command recorded in an output file."};
  app.option_defaults()->always_capture_default()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("zumm ") + kVersion);

  Common common;
  std::map<std::string, Command> commands;

  PadicParams padic;
  {
    auto* s = app.add_subcommand("padic-check", "Haar shell sums and p-adic expansions");
    s->add_option("--prime", padic.prime);
    s->add_option("--s-re", padic.s_re);
    s->add_option("--s-im", padic.s_im);
    s->add_option("--shells", padic.shells);
    s->add_option("--x", padic.x, "Rational m/n to expand");
    s->add_option("--precision", padic.precision);
    add_common(s, common);
    commands["padic-check"] = {s, [&](const Common& c) { return run_padic(padic, c); }};
  }
  WaveletParams wav;
  {
    auto* s = app.add_subcommand("wavelet-check", "Kozyrev Gram matrix and Vladimirov kernel residuals");
    s->add_option("--prime", wav.prime);
    s->add_option("--states", wav.states);
    s->add_option("--alpha-re", wav.alpha_re);
    s->add_option("--alpha-im", wav.alpha_im);
    s->add_option("--coset-level", wav.coset_level);
    s->add_option("--domain-exponent", wav.domain_exponent);
    s->add_option("--n-list", wav.n_list, "Comma-separated wavelet scales");
    s->add_option("--tolerance", wav.tolerance);
    add_common(s, common);
    commands["wavelet-check"] = {s, [&](const Common& c) { return run_wavelet(wav, c); }};
  }
  BetasParams betas;
  {
    auto* s = app.add_subcommand("betas", "Resolvent Taylor coefficients by contour quadrature");
    s->add_option("--model", betas.model)->check(CLI::IsMember({"local", "gamma", "shifted", "symmetric"}));
    s->add_option("--prime", betas.prime);
    s->add_option("--s0", betas.s0, "Shift for the shifted model");
    s->add_option("--mmax", betas.mmax);
    s->add_option("--radius", betas.radius);
    s->add_option("--nodes", betas.nodes);
    s->add_option("--radius2", betas.radius2, "Second radius, 0 = 0.8 radius");
    s->add_option("--tolerance", betas.tolerance);
    add_common(s, common);
    commands["betas"] = {s, [&](const Common& c) { return run_betas(betas, c); }};
  }
  DensityParams dens;
  {
    auto* s = app.add_subcommand("density", "Local-zeta potential derivative and density spikes");
    s->add_option("--prime", dens.prime);
    s->add_option("--points", dens.points);
    s->add_option("--spikes", dens.spikes);
    add_common(s, common);
    commands["density"] = {s, [&](const Common& c) { return run_density(dens, c); }};
  }
  LiParams li;
  {
    auto* s = app.add_subcommand("li", "Li coefficients by Cauchy integral and by zero sums");
    s->add_option("--nmax", li.nmax);
    s->add_option("--method", li.method)->check(CLI::IsMember({"cauchy", "zeros", "both"}));
    s->add_option("--radius", li.radius);
    s->add_option("--nodes", li.nodes);
    s->add_option("--zeros", li.zeros, "Zero table file");
    s->add_option("--nzeros", li.nzeros);
    s->add_option("--zero-tol", li.zero_tol);
    s->add_option("--tolerance", li.tolerance);
    s->add_option("--tail-correction", li.tail_correction);
    add_common(s, common);
    commands["li"] = {s, [&](const Common& c) { return run_li(li, c); }};
  }
  BetaRenParams ren;
  {
    auto* s = app.add_subcommand("beta-ren", "Renormalized coefficients");
    s->add_option("--mmax", ren.mmax);
    s->add_option("--mu", ren.mu);
    s->add_option("--method", ren.method)
        ->check(CLI::IsMember({"prime_sum", "shifted", "xi_decomposition", "compare"}));
    s->add_option("--primes-max", ren.primes_max);
    s->add_option("--power-max", ren.power_max);
    s->add_option("--tail-correction", ren.tail_correction);
    s->add_option("--radius", ren.radius);
    s->add_option("--nodes", ren.nodes);
    s->add_option("--tolerance", ren.tolerance);
    add_common(s, common);
    commands["beta-ren"] = {s, [&](const Common& c) { return run_beta_ren(ren, c); }};
  }
  TraceParams tr;
  {
    auto* s = app.add_subcommand("trace-check", "Explicit trace formula with a Gaussian test function");
    s->add_option("--zeros", tr.zeros, "Zero table file");
    s->add_option("--nzeros", tr.nzeros);
    s->add_option("--primes-max", tr.primes_max);
    s->add_option("--width", tr.width);
    s->add_option("--zero-tol", tr.zero_tol);
    add_common(s, common);
    commands["trace-check"] = {s, [&](const Common& c) { return run_trace(tr, c); }};
  }
  ExplicitParams ef;
  {
    auto* s = app.add_subcommand("explicit-formula", "Prime counting functions from zeros or poles");
    s->add_option("--kind", ef.kind)->check(CLI::IsMember({"psi", "J", "jlocal"}));
    s->add_option("--x", ef.x);
    s->add_option("--zeros", ef.zeros, "Zero table file");
    s->add_option("--nzeros", ef.nzeros);
    s->add_option("--prime", ef.prime);
    s->add_option("--poles", ef.poles);
    s->add_option("--zero-tol", ef.zero_tol);
    add_common(s, common);
    commands["explicit-formula"] = {s, [&](const Common& c) { return run_explicit(ef, c); }};
  }
  CueParams cue;
  {
    auto* s = app.add_subcommand("cue-sample", "CUE eigenphases and their pair correlation");
    s->add_option("--n", cue.n);
    s->add_option("--samples", cue.samples);
    s->add_option("--seed", cue.seed);
    s->add_option("--bins", cue.bins);
    s->add_option("--rmax", cue.rmax);
    add_common(s, common);
    commands["cue-sample"] = {s, [&](const Common& c) { return run_cue(cue, c); }};
  }
  PlaquetteParams pl;
  {
    auto* s = app.add_subcommand("plaquette-mc", "Metropolis sampling of the eigenphase action");
    s->add_option("--n", pl.n);
    s->add_option("--beta", pl.beta, "Comma-separated beta_1, beta_2, ...");
    s->add_option("--sweeps", pl.sweeps);
    s->add_option("--burn-in", pl.burn_in);
    s->add_option("--chains", pl.chains);
    s->add_option("--bins", pl.bins);
    s->add_option("--thin", pl.thin);
    s->add_option("--width", pl.width, "Initial proposal width");
    s->add_option("--seed", pl.seed);
    add_common(s, common);
    commands["plaquette-mc"] = {s, [&](const Common& c) { return run_plaquette(pl, c); }};
  }
  CombParams comb;
  {
    auto* s = app.add_subcommand("comb", "Prime-power comb locations and weights");
    s->add_option("--prime", comb.prime, "Prime, or 0 for all primes");
    s->add_option("--mu", comb.mu, "Damping exponent");
    s->add_option("--qmax", comb.qmax);
    add_common(s, common);
    commands["comb"] = {s, [&](const Common& c) { return run_comb(comb, c); }};
  }

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  try {
    const auto format = io::parse_format(common.format);
    Outcome o = commands.at(name).run(common);
    Table t;
    t.meta("tool", "zumm");
    t.meta("version", kVersion);
    t.meta("boost", BOOST_LIB_VERSION);
    t.meta("command", name);
    for (const CLI::Option* opt : sub->get_options()) {
      if (opt->get_lnames().empty() || opt->get_lnames()[0] == "help") continue;
      const std::string key = opt->get_lnames()[0];
      std::string value = opt->count() ? opt->results().back() : opt->get_default_str();
      if (key == "mu" && !opt->count() && !comb.mu) continue;
      t.meta("param." + key, value);
    }
    for (auto& kv : o.table.metadata) t.meta(kv.first, kv.second);
    t.meta("status", o.consistent ? "ok" : "inconsistent");
    t.columns = std::move(o.table.columns);
    t.rows = std::move(o.table.rows);

    if (common.out == "-") {
      io::write(out, t, format);
    } else {
      std::ofstream f(common.out, std::ios::binary);
      if (!f) throw ValidationError("--out: cannot write '" + common.out + "'");
      io::write(f, t, format);
      if (!f) throw NumericError("--out: write to '" + common.out + "' failed");
    }
    if (!o.consistent) {
      err << "inconsistent: " << o.failure << '\n';
      return 2;
    }
    return 0;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const PoleError& e) {
    err << "error: " << e.what() << " (pole index " << e.index() << ")\n";
    return 1;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace zumm::cli
