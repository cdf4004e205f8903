#include "zumm/zeros.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>

#include "zumm/special.hpp"

namespace zumm {

ZeroTable ZeroTable::prefix(std::size_t n) const {
  require(n <= t.size(), "zero table holds " + std::to_string(t.size()) + " zeros, " +
                             std::to_string(n) + " requested");
  ZeroTable out;
  out.t.assign(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(n));
  out.xi_residual.assign(xi_residual.begin(), xi_residual.begin() + static_cast<std::ptrdiff_t>(n));
  out.zeta_residual.assign(zeta_residual.begin(),
                           zeta_residual.begin() + static_cast<std::ptrdiff_t>(n));
  out.source = source;
  out.tolerance = tolerance;
  return out;
}

ZeroTable ingest_zeros(const std::string& path, double validation_tol, std::size_t max_count,
                       const Parallelism& par) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open zeros file '" + path + "'");
  return ingest_zeros(in, path, validation_tol, max_count, par);
}

ZeroTable ingest_zeros(std::istream& in, const std::string& source, double validation_tol,
                       std::size_t max_count, const Parallelism& par) {
  require(validation_tol > 0, "validation tolerance must be positive");
  std::vector<double> values;
  std::vector<std::size_t> lines;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    const char* b = line.data() + first;
    const char* e = line.data() + last + 1;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e)
      throw ValidationError(source + ":" + std::to_string(lineno) + ": cannot parse '" +
                            std::string(b, e) + "' as a decimal");
    if (!(v > 0.0))
      throw ValidationError(source + ":" + std::to_string(lineno) + ": zero ordinate must be positive");
    if (!values.empty() && !(v > values.back()))
      throw ValidationError(source + ":" + std::to_string(lineno) +
                            ": entries must be strictly increasing");
    values.push_back(v);
    lines.push_back(lineno);
    if (max_count > 0 && values.size() == max_count) break;
  }

  std::vector<double> xi_res(values.size()), zeta_res(values.size());
  parallel_for(values.size(), par, [&](std::size_t i) {
    // One Euler-Maclaurin evaluation of (s-1) zeta(s) serves both residuals.
    const Complex s(0.5, values[i]);
    const Complex f = special::zeta_times_pole<double>(s).value;
    const Complex prefactor = std::exp(-s / 2.0 * std::log(kPi)) * special::gamma<double>(1.0 + s / 2.0);
    xi_res[i] = std::abs(prefactor * f);
    zeta_res[i] = std::abs(f / (s - 1.0));
  });

  ZeroTable out;
  out.source = source;
  out.tolerance = validation_tol;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (xi_res[i] < validation_tol && zeta_res[i] < validation_tol) {
      out.t.push_back(values[i]);
      out.xi_residual.push_back(xi_res[i]);
      out.zeta_residual.push_back(zeta_res[i]);
    } else {
      out.rejected.push_back({lines[i], values[i], zeta_res[i]});
    }
  }
  return out;
}

double riemann_siegel_theta(double t) {
  const Complex lg = special::log_gamma<double>(Complex(0.25, 0.5 * t));
  return lg.imag() - 0.5 * t * std::log(kPi);
}

double riemann_siegel_theta_prime(double t) {
  const Complex dg = special::digamma<double>(Complex(0.25, 0.5 * t));
  return 0.5 * dg.real() - 0.5 * std::log(kPi);
}

double smooth_zero_count(double t) { return riemann_siegel_theta(t) / kPi + 1.0; }

double smooth_zero_count_inverse(double n) {
  // Newton from the leading-order guess; the function is increasing for t > 7.
  double t = std::max(20.0, kTwoPi * n / std::max(1.0, std::log(std::max(n, 2.0))));
  for (int it = 0; it < 100; ++it) {
    const double f = smooth_zero_count(t) - n;
    const double step = f / (riemann_siegel_theta_prime(t) / kPi);
    t -= step;
    if (t < 10.0) t = 10.0;
    if (std::abs(step) < 1e-12 * t) break;
  }
  return t;
}

}  // namespace zumm
