#include "zumm/rmt.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>
#include <cmath>
#include <random>

#include "zumm/zeros.hpp"

namespace zumm::rmt {

namespace {

// boost's distributions are specified algorithms, unlike std::normal_distribution,
// so streams match across standard libraries.
std::mt19937_64 stream_for(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

double wrap_phase(double x) {
  x = std::remainder(x, kTwoPi);  // [-pi, pi]
  if (x <= -kPi) x += kTwoPi;
  return x;
}

std::vector<double> cue_phases(int n, std::mt19937_64& rng) {
  using Mat = Eigen::MatrixXcd;
  boost::random::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Mat z(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = Complex(re, im);
    }
  Eigen::HouseholderQR<Mat> qr(z);
  Mat q = qr.householderQ();
  const Mat& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= (a > 0 ? d / a : Complex(1.0));
  }
  Eigen::ComplexEigenSolver<Mat> es(q, false);
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = wrap_phase(std::arg(es.eigenvalues()[i]));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

EnsembleSample sample_cue(int n, std::size_t samples, std::uint64_t seed, const Parallelism& par) {
  require(n >= 2, "sample_cue: N must be >= 2");
  EnsembleSample out;
  out.n = n;
  out.seed = seed;
  out.source = "cue";
  out.phases.resize(samples);
  parallel_for(samples, par, [&](std::size_t k) {
    auto rng = stream_for(seed, k);
    out.phases[k] = cue_phases(n, rng);
  });
  return out;
}

double plaquette_oracle_density(double theta, const std::vector<double>& beta) {
  double s = 0;
  for (std::size_t k = 0; k < beta.size(); ++k) s += beta[k] * std::cos(double(k + 1) * theta);
  return (1.0 + 2.0 * kPlaquetteSign * s) / kTwoPi;
}

namespace {

struct ChainOutput {
  std::vector<std::uint64_t> counts;
  std::vector<std::vector<double>> snapshots;
  std::uint64_t accepted = 0;
  std::uint64_t proposed = 0;
  double width = 0;
};

double one_body(double theta, const std::vector<double>& beta, int n) {
  double s = 0;
  for (std::size_t k = 0; k < beta.size(); ++k) {
    const double m = double(k + 1);
    s += 2.0 * beta[k] / m * std::cos(m * theta);
  }
  return n * s;
}

ChainOutput run_chain(const PlaquetteSpec& spec, std::size_t chain) {
  auto rng = stream_for(spec.seed, chain);
  boost::random::normal_distribution<double> normal(0.0, 1.0);
  boost::random::uniform_real_distribution<double> unif(0.0, 1.0);
  const int n = spec.n;
  std::vector<double> th(n);
  for (int i = 0; i < n; ++i) th[i] = wrap_phase(-kPi + kTwoPi * (i + 0.5) / n);
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = one_body(th[i], spec.beta, n);

  ChainOutput out;
  out.counts.assign(spec.bins, 0);
  double width = spec.initial_width;
  const int total = spec.burn_in + spec.sweeps;
  std::uint64_t window_acc = 0, window_prop = 0;

  for (int sweep = 0; sweep < total; ++sweep) {
    const bool measuring = sweep >= spec.burn_in;
    for (int i = 0; i < n; ++i) {
      const double cand = wrap_phase(th[i] + width * normal(rng));
      const double vc = one_body(cand, spec.beta, n);
      double dlog = 0;  // change in sum_j ln sin^2 of half differences
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const double sn = std::sin(0.5 * (cand - th[j]));
        const double so = std::sin(0.5 * (th[i] - th[j]));
        dlog += std::log((sn * sn) / (so * so));
      }
      const double ds = (vc - v[i]) - dlog;
      const bool accept = ds <= 0 || unif(rng) < std::exp(-ds);
      if (accept) {
        th[i] = cand;
        v[i] = vc;
      }
      if (measuring) {
        ++out.proposed;
        out.accepted += accept;
      } else {
        ++window_prop;
        window_acc += accept;
      }
    }
    if (!measuring && window_prop >= 50u * n) {
      const double rate = double(window_acc) / double(window_prop);
      width = std::clamp(width * std::exp(rate - 0.4), 1e-3, kPi);
      window_acc = window_prop = 0;
    }
    if (measuring) {
      for (int i = 0; i < n; ++i) {
        int b = static_cast<int>((th[i] + kPi) / kTwoPi * spec.bins);
        b = std::clamp(b, 0, spec.bins - 1);
        ++out.counts[b];
      }
      if ((sweep - spec.burn_in) % spec.thin == 0) {
        auto snap = th;
        std::sort(snap.begin(), snap.end());
        out.snapshots.push_back(std::move(snap));
      }
    }
  }
  out.width = width;
  return out;
}

}  // namespace

PlaquetteResult plaquette_mc(const PlaquetteSpec& spec, const Parallelism& par) {
  require(spec.n >= 2, "plaquette_mc: N must be >= 2");
  require(spec.sweeps > 0 && spec.burn_in >= 0, "plaquette_mc: sweeps must be positive, burn_in >= 0");
  require(spec.chains >= 1 && spec.bins >= 2 && spec.thin >= 1, "plaquette_mc: chains, bins, thin out of range");
  require(spec.initial_width > 0, "plaquette_mc: initial width must be positive");
  for (double b : spec.beta) require(std::isfinite(b), "plaquette_mc: beta must be finite");

  std::vector<ChainOutput> chains(spec.chains);
  parallel_for(spec.chains, par, [&](std::size_t c) { chains[c] = run_chain(spec, c); });

  PlaquetteResult res;
  res.sample.n = spec.n;
  res.sample.seed = spec.seed;
  res.sample.source = "plaquette";
  res.counts.assign(spec.bins, 0);
  std::uint64_t acc = 0, prop = 0;
  for (auto& c : chains) {
    for (int b = 0; b < spec.bins; ++b) res.counts[b] += c.counts[b];
    acc += c.accepted;
    prop += c.proposed;
    res.final_width.push_back(c.width);
    for (auto& s : c.snapshots) res.sample.phases.push_back(std::move(s));
  }
  std::uint64_t total = 0;
  for (auto c : res.counts) total += c;
  const double dtheta = kTwoPi / spec.bins;
  for (int b = 0; b < spec.bins; ++b) {
    res.bin_centers.push_back(-kPi + (b + 0.5) * dtheta);
    res.density.push_back(double(res.counts[b]) / (double(total) * dtheta));
    if (res.counts[b] == 0) ++res.empty_bins;
  }
  res.acceptance_rate = prop ? double(acc) / double(prop) : 0.0;
  res.acceptance_in_range = res.acceptance_rate >= 0.1 && res.acceptance_rate <= 0.9;
  double mn = 1e300;
  for (int k = 0; k <= 4096; ++k) {
    const double t = -kPi + kTwoPi * k / 4096.0;
    mn = std::min(mn, plaquette_oracle_density(t, spec.beta) * kTwoPi);
  }
  res.ungapped_min = mn;
  return res;
}

namespace {

// Mean of 1 - (sin pi r / pi r)^2 over [lo, hi], Simpson with fine panels.
double sine_kernel_bin_mean(double lo, double hi) {
  auto f = [](double r) {
    if (r < 1e-8) return (kPi * r) * (kPi * r) / 3.0;
    const double x = kPi * r;
    const double s = std::sin(x) / x;
    return 1.0 - s * s;
  };
  const int m = 64;
  const double h = (hi - lo) / m;
  double acc = f(lo) + f(hi);
  for (int k = 1; k < m; ++k) acc += (k % 2 ? 4.0 : 2.0) * f(lo + k * h);
  return acc * h / 3.0 / (hi - lo);
}

}  // namespace

CorrelationReport pair_correlation_unfolded(const std::vector<std::vector<double>>& groups,
                                            bool circular, int bins, double r_max) {
  require(bins >= 1 && r_max > 0, "pair_correlation: bins and r_max must be positive");
  std::size_t npts = 0;
  for (const auto& g : groups) npts += g.size();
  require(npts >= 1000, "pair_correlation: too few points (" + std::to_string(npts) +
                            " < 1000 after pooling)");
  const double dr = r_max / bins;
  std::vector<std::uint64_t> counts(bins, 0);
  for (const auto& g : groups) {
    const double period = double(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = i + 1; j < g.size(); ++j) {
        double d = g[j] - g[i];
        if (circular) {
          d = std::fmod(std::abs(d), period);
          d = std::min(d, period - d);
        } else if (d >= r_max) {
          break;  // groups are sorted
        }
        if (d < r_max) ++counts[static_cast<std::size_t>(d / dr)];
      }
    }
  }
  CorrelationReport rep;
  rep.points = npts;
  rep.bin_width = dr;
  double s2 = 0, p2 = 0;
  for (int b = 0; b < bins; ++b) {
    const double lo = b * dr;
    rep.bin_centers.push_back(lo + 0.5 * dr);
    const double r2 = double(counts[b]) / (double(npts) * dr);
    const double ref = sine_kernel_bin_mean(lo, lo + dr);
    rep.r2.push_back(r2);
    rep.sine_kernel.push_back(ref);
    s2 += (r2 - ref) * (r2 - ref) * dr;
    p2 += (r2 - 1.0) * (r2 - 1.0) * dr;
  }
  rep.l2_sine = std::sqrt(s2);
  rep.l2_poisson = std::sqrt(p2);
  return rep;
}

CorrelationReport pair_correlation_cue(const EnsembleSample& sample, int bins, double r_max) {
  std::vector<std::vector<double>> groups;
  groups.reserve(sample.phases.size());
  for (const auto& ph : sample.phases) {
    std::vector<double> u(ph.size());
    const double scale = double(ph.size()) / kTwoPi;
    for (std::size_t i = 0; i < ph.size(); ++i) u[i] = (ph[i] + kPi) * scale;
    groups.push_back(std::move(u));
  }
  return pair_correlation_unfolded(groups, true, bins, r_max);
}

CorrelationReport pair_correlation_zeros(const std::vector<double>& t, int bins, double r_max) {
  std::vector<double> u(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) u[i] = smooth_zero_count(t[i]);
  return pair_correlation_unfolded({u}, false, bins, r_max);
}

std::vector<double> poisson_points(std::size_t n, std::uint64_t seed) {
  auto rng = stream_for(seed, 0);
  boost::random::uniform_real_distribution<double> unif(0.0, double(n));
  std::vector<double> out(n);
  for (auto& x : out) x = unif(rng);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> circular_spacings(const EnsembleSample& sample) {
  std::vector<double> out;
  for (const auto& ph : sample.phases) {
    const std::size_t n = ph.size();
    const double mean = kTwoPi / double(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double next = (i + 1 < n) ? ph[i + 1] : ph[0] + kTwoPi;
      out.push_back((next - ph[i]) / mean);
    }
  }
  return out;
}

namespace {

// Q_KS(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_q(double lambda) {
  if (lambda < 0.2) return 1.0;
  double sum = 0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 ? term : -term);
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace

KsResult ks_test(std::vector<double> data, const std::function<double(double)>& cdf) {
  require(!data.empty(), "ks_test: empty sample");
  std::sort(data.begin(), data.end());
  const double n = double(data.size());
  double d = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double f = cdf(data[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  const double sn = std::sqrt(n);
  return {d, kolmogorov_q((sn + 0.12 + 0.11 / sn) * d)};
}

double cue2_arc(const std::vector<double>& phases) {
  require(phases.size() == 2, "cue2_arc: needs exactly two phases");
  const double d = std::abs(phases[1] - phases[0]);
  return std::min(d, kTwoPi - d);
}

double cue2_arc_cdf(double m) {
  if (m <= 0) return 0;
  if (m >= kPi) return 1;
  return (m - std::sin(m)) / kPi;
}

}  // namespace zumm::rmt
