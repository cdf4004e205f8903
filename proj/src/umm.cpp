#include "zumm/umm.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zumm/contour.hpp"
#include "zumm/special.hpp"

namespace zumm::umm {

namespace {

using LD = long double;

template <typename C>
C s_of_z(C z) {
  return (C(1) + z) / (C(1) - z);
}

void require_prime(long p) { require(is_prime(p), "p must be prime, got " + std::to_string(p)); }

double unit_tolerance() { return 1e-14; }

}  // namespace

ConformalPoint from_s(Complex s) {
  ConformalPoint pt;
  pt.s = s;
  if (s == Complex(-1.0)) {
    pt.z_infinite = true;
    return pt;
  }
  pt.z = (s - 1.0) / (s + 1.0);
  if (std::abs(std::abs(pt.z) - 1.0) < unit_tolerance()) {
    double th = std::arg(pt.z);
    if (th <= 0) th += kTwoPi;
    pt.theta = th;
  }
  return pt;
}

ConformalPoint from_z(Complex z) {
  ConformalPoint pt;
  pt.z = z;
  if (z == Complex(1.0)) {
    pt.s_infinite = true;
    return pt;
  }
  pt.s = s_of_z(z);
  if (std::abs(std::abs(z) - 1.0) < unit_tolerance()) {
    double th = std::arg(z);
    if (th <= 0) th += kTwoPi;
    pt.theta = th;
  }
  return pt;
}

ConformalPoint from_theta(double theta) {
  require(theta > 0 && theta < kTwoPi, "from_theta: theta must lie in (0, 2 pi)");
  ConformalPoint pt;
  pt.theta = theta;
  pt.z = std::polar(1.0, theta);
  pt.s = Complex(0.0, 1.0 / std::tan(0.5 * theta));
  return pt;
}

ResolventModel ResolventModel::local_zeta(long p, Branch b) {
  require_prime(p);
  ResolventModel m;
  m.kind = ModelKind::LocalZeta;
  m.prime = p;
  m.branch = b;
  return m;
}

ResolventModel ResolventModel::gamma_place(Branch b) {
  ResolventModel m;
  m.kind = ModelKind::GammaPlace;
  m.branch = b;
  return m;
}

ResolventModel ResolventModel::shifted_zeta(double s0, Branch b) {
  ResolventModel m;
  m.kind = ModelKind::ShiftedZeta;
  m.s0 = s0;
  m.branch = b;
  return m;
}

ResolventModel ResolventModel::symmetric_xi(Branch b) {
  ResolventModel m;
  m.kind = ModelKind::SymmetricXi;
  m.branch = b;
  return m;
}

std::string ResolventModel::name() const {
  switch (kind) {
    case ModelKind::LocalZeta: return "local(p=" + std::to_string(prime) + ")";
    case ModelKind::GammaPlace: return "gamma";
    case ModelKind::ShiftedZeta: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "shifted(s0=%.17g)", s0);
      return buf;
    }
    case ModelKind::SymmetricXi: return "symmetric";
  }
  return "unknown";
}

ComplexL resolvent_fluctuation(const ResolventModel& model, ComplexL z) {
  const ComplexL one(1);
  const ComplexL s = s_of_z(z);
  const ComplexL d = (one - z) * (one - z);
  switch (model.kind) {
    case ModelKind::LocalZeta: {
      const ComplexL w = std::exp(-s * std::log(static_cast<LD>(model.prime)));
      const ComplexL den = one - w;
      if (std::abs(den) < 1e-15L) throw PoleError("resolvent: on a pole of the local factor");
      return z * w / (d * den);
    }
    case ModelKind::GammaPlace:
      return z / LD(2) * (special::digamma(s / LD(2)) - std::log(std::numbers::pi_v<LD>)) / d;
    case ModelKind::ShiftedZeta: {
      const ComplexL arg = LD(model.s0) + (one + z) / (LD(2) * (one - z));
      return z * special::zeta_log_derivative(arg) / d;
    }
    case ModelKind::SymmetricXi: {
      const ComplexL lx = special::log_xi(one / (one - z));
      return -(std::log(LD(2)) + lx) / (LD(2) * std::log(LD(2)));
    }
  }
  return {};
}

Complex resolvent(const ResolventModel& model, Complex z) {
  const double r = std::abs(z);
  require(std::abs(r - 1.0) > 1e-12, "resolvent: |z| = 1 lies on the cut; use the density routines");
  if (model.branch == Branch::Inside) {
    require(r < 1.0, "resolvent: inside branch needs |z| < 1");
    const ComplexL f = resolvent_fluctuation(model, ComplexL(z.real(), z.imag()));
    return Complex(1.0 + static_cast<double>(f.real()), static_cast<double>(f.imag()));
  }
  require(r > 1.0, "resolvent: outside branch needs |z| > 1");
  const Complex s = s_of_z(z);
  const Complex d = (1.0 - z) * (1.0 - z);
  switch (model.kind) {
    case ModelKind::LocalZeta: {
      const Complex ps = std::pow(static_cast<double>(model.prime), s);
      const Complex den = 1.0 - ps;
      if (std::abs(den) < 1e-15) throw PoleError("resolvent: on a pole of the local factor");
      return -z / d * ps / den;
    }
    case ModelKind::GammaPlace: {
      // d/dz ln zeta_R(t), t = -s: (1/2)(psi(t/2) - ln pi) dt/dz, dt/dz = -2/(1-z)^2
      const Complex t = -s;
      return -(z / 2.0) * (special::digamma(t / 2.0) - std::log(kPi)) / d;
    }
    case ModelKind::ShiftedZeta:
    case ModelKind::SymmetricXi: {
      ResolventModel inner = model;
      inner.branch = Branch::Inside;
      return 1.0 - resolvent(inner, 1.0 / z);
    }
  }
  return {};
}

double BetaSeries::max_imag() const {
  double m = 0.0;
  for (const auto& b : beta) m = std::max(m, std::abs(b.imag()));
  return m;
}

BetaSeries taylor_contour(const std::string& label, const std::function<ComplexL(ComplexL)>& g,
                          int max_index, const ContourSpec& spec, const Parallelism& par,
                          bool unwrap) {
  require(max_index >= 1, "beta contour: need at least one coefficient");
  require(spec.radius > 0 && spec.radius < 1, "beta contour: radius must lie in (0, 1)");
  require(contour::is_power_of_two(spec.nodes) && spec.nodes >= 64,
          "beta contour: nodes must be a power of two >= 64");
  require(2 * max_index < spec.nodes, "beta contour: need nodes > 2 * max index");
  const double r2 = spec.second_radius > 0 ? spec.second_radius : 0.8 * spec.radius;
  require(r2 > 0 && r2 < 1 && r2 != spec.radius, "beta contour: bad second radius");

  auto run = [&](double r) {
    auto samples = contour::sample_circle(g, ComplexL(0), static_cast<LD>(r), spec.nodes, par);
    if (unwrap) contour::unwrap_log(samples, 0);
    return std::pair{contour::coefficients(samples, r, max_index, 1),
                     contour::coefficients(samples, r, max_index, 2)};
  };
  const auto [c, c_half] = run(spec.radius);
  const auto [c2, c2_half] = run(r2);
  (void)c2_half;

  BetaSeries out;
  out.model = label;
  out.radius = spec.radius;
  out.nodes = spec.nodes;
  out.second_radius = r2;
  for (int n = 1; n <= max_index; ++n) {
    const auto i = static_cast<std::size_t>(n);
    const Complex b(static_cast<double>(c[i].real()), static_cast<double>(c[i].imag()));
    const double dr = static_cast<double>(std::abs(c[i] - c2[i]));
    const double dq = static_cast<double>(std::abs(c[i] - c_half[i]));
    out.beta.push_back(b);
    out.error.push_back(std::max(dr, dq));
    out.radius_error = std::max(out.radius_error, dr);
    out.node_error = std::max(out.node_error, dq);
  }
  if (!(out.radius_error <= spec.tolerance)) {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "%s: coefficients depend on the contour radius (max |dbeta| = %.3g at r=%.3g vs %.3g, "
                  "tolerance %.3g); a singularity may lie inside the disk",
                  label.c_str(), out.radius_error, spec.radius, r2, spec.tolerance);
    throw NumericError(buf);
  }
  return out;
}

BetaSeries beta_contour(const ResolventModel& model, int max_index, const ContourSpec& spec,
                        const Parallelism& par) {
  if (model.kind == ModelKind::SymmetricXi) {
    // -(1/(2 ln 2)) [z^n] ln xi(1/(1-z)), log unwrapped along the contour
    auto series = taylor_contour(
        model.name(), [](ComplexL z) { return special::log_xi(ComplexL(1) / (ComplexL(1) - z)); },
        max_index, spec, par, true);
    const double scale = -1.0 / (2.0 * std::log(2.0));
    for (auto& b : series.beta) b *= scale;
    for (auto& e : series.error) e *= -scale;
    series.radius_error *= -scale;
    series.node_error *= -scale;
    return series;
  }
  return taylor_contour(
      model.name(), [model](ComplexL z) { return resolvent_fluctuation(model, z); }, max_index, spec,
      par, false);
}

Complex potential_sum_local(long p, Complex z) {
  require_prime(p);
  require(std::abs(z) < 1.0, "potential_sum_local: needs |z| < 1");
  const double lp = std::log(static_cast<double>(p));
  const Complex s = s_of_z(z);
  const Complex num = 1.0 - std::exp(-s * lp);
  return std::log(num / (1.0 - 1.0 / static_cast<double>(p))) / (2.0 * lp);
}

double vprime_local(long p, double theta) {
  require_prime(p);
  const double lp = std::log(static_cast<double>(p));
  const double half = 0.5 * theta;
  const double sn = std::sin(half);
  const double x = std::cos(half) / sn;
  return 1.0 / std::tan(0.5 * lp * x) / (4.0 * sn * sn);
}

DensityProfile density_profile(long p, const std::vector<double>& theta_grid, int n_spikes) {
  require_prime(p);
  require(n_spikes >= 0, "density_profile: n_spikes must be >= 0");
  const double lp = std::log(static_cast<double>(p));
  const double weight = kPi / lp;
  DensityProfile out;
  out.prime = p;
  out.spikes.push_back({0, kPi, weight});
  for (long n = 1; n <= n_spikes; ++n) {
    // cot(theta/2) = 2 pi n / ln p  =>  theta = 2 atan(ln p / (2 pi n))
    const double th = 2.0 * std::atan(lp / (kTwoPi * static_cast<double>(n)));
    out.spikes.push_back({n, th, weight});
    out.spikes.push_back({-n, kTwoPi - th, weight});
  }
  std::sort(out.spikes.begin(), out.spikes.end(),
            [](const Spike& a, const Spike& b) { return a.theta < b.theta; });
  for (double th : theta_grid) {
    const double red = std::fmod(std::fmod(th, kTwoPi) + kTwoPi, kTwoPi);
    require(red > 1e-9 && red < kTwoPi - 1e-9, "density_profile: grid point at theta = 0");
    for (const auto& sp : out.spikes)
      require(std::abs(red - sp.theta) > 1e-9,
              "density_profile: grid point within 1e-9 of spike n=" + std::to_string(sp.n));
    out.theta.push_back(th);
    out.vprime.push_back(vprime_local(p, red));
  }
  return out;
}

Complex phase_space_density(long p, double theta, const padic::Rational& h) {
  require_prime(p);
  require(h != 0, "phase_space_density: h must be nonzero");
  const double red = std::fmod(std::fmod(theta, kTwoPi) + kTwoPi, kTwoPi);
  require(red > 0.0, "phase_space_density: theta = 0 or 2 pi is singular");
  const double half = 0.5 * theta;
  const double sn = std::sin(half);
  const double x = std::cos(half) / sn;
  const double log_norm = std::log(static_cast<double>(padic::padic_norm(h, p)));
  const Complex power = std::exp(Complex(-1.0, x) * log_norm);
  const double pd = static_cast<double>(p);
  return pd * (1.0 - power / (sn * sn * 2.0 * (pd - 1.0)));
}

TraceFluctuation trace_fluctuation(long p, double theta, double eps, int terms) {
  require_prime(p);
  require(eps > 0, "trace_fluctuation: Abel parameter eps must be positive");
  require(terms >= 0, "trace_fluctuation: term count must be >= 0");
  const double lp = std::log(static_cast<double>(p));
  const double x = 1.0 / std::tan(0.5 * theta);
  const Complex w(eps, x);
  const Complex q = std::exp(-w * lp);
  const Complex den = 1.0 - q;
  if (std::abs(den) < 1e-12)
    throw PoleError("trace_fluctuation: eps -> 0 on a pole of the local zeta factor",
                    std::lround(x * lp / kTwoPi));
  std::vector<Complex> parts(static_cast<std::size_t>(terms));
  Complex qn = q;
  for (int n = 0; n < terms; ++n) {
    parts[static_cast<std::size_t>(n)] = qn;
    qn *= q;
  }
  TraceFluctuation out;
  out.partial = pairwise_sum(parts);
  out.closed_form = q / den;
  const double a = std::exp(-eps * lp);
  out.tail_bound = std::pow(a, terms + 1) / (1.0 - a);
  return out;
}

double boundary_h(double theta, const std::vector<Complex>& beta,
                  const std::function<double(double)>& f_even) {
  std::vector<double> terms(beta.size());
  for (std::size_t n = 0; n < beta.size(); ++n)
    terms[n] = beta[n].real() * std::cos(static_cast<double>(n + 1) * theta);
  double h = 0.5 + pairwise_sum(terms);
  if (f_even) h += f_even(theta);
  return h;
}

double ungapped_density(double theta, const std::vector<double>& beta) {
  double acc = 1.0;
  for (std::size_t n = 0; n < beta.size(); ++n)
    acc += 2.0 * beta[n] * std::cos(static_cast<double>(n + 1) * theta);
  return acc / kTwoPi;
}

}  // namespace zumm::umm
