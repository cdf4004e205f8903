#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "zumm/rmt.hpp"
#include "zumm/zeros.hpp"

using namespace zumm;
using namespace zumm::rmt;

namespace {

double variance(const std::vector<double>& v) {
  const double m = std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return s / double(v.size());
}

double sup_distance(const PlaquetteResult& r, const std::vector<double>& beta) {
  double d = 0;
  for (std::size_t i = 0; i < r.density.size(); ++i)
    d = std::max(d, std::abs(r.density[i] - plaquette_oracle_density(r.bin_centers[i], beta)));
  return d;
}

PlaquetteSpec small_chain(std::vector<double> beta) {
  PlaquetteSpec s;
  s.n = 24;
  s.beta = std::move(beta);
  s.sweeps = 10000;
  s.burn_in = 1000;
  s.chains = 2;
  s.bins = 32;
  return s;
}

}  // namespace

TEST_CASE("CUE samples are sorted phases with unit mean spacing") {
  const auto s = sample_cue(16, 400, 11);
  REQUIRE(s.phases.size() == 400);
  for (const auto& ph : s.phases) {
    REQUIRE(ph.size() == 16);
    CHECK(std::is_sorted(ph.begin(), ph.end()));
    CHECK(ph.front() > -kPi);
    CHECK(ph.back() <= kPi);
  }
  const auto sp = circular_spacings(s);
  CHECK(sp.size() == 400 * 16);
  const double mean = std::accumulate(sp.begin(), sp.end(), 0.0) / double(sp.size());
  CHECK(std::abs(mean - 1) < 1e-12);
  // Spacing variance: 0.180 at N -> infinity (GUE), well below Poisson's 1.
  CHECK(std::abs(variance(sp) - 0.180) < 0.02);
}

TEST_CASE("2x2 CUE eigenphase arc follows its exact law") {
  const auto s = sample_cue(2, 20000, 5);
  std::vector<double> arcs;
  for (const auto& ph : s.phases) arcs.push_back(cue2_arc(ph));
  const auto ks = ks_test(arcs, cue2_arc_cdf);
  CHECK(ks.p_value > 0.01);
  // the uniform law on [0, pi] is rejected
  const auto flat = ks_test(arcs, [](double m) { return m / kPi; });
  CHECK(flat.p_value < 1e-6);
  CHECK(cue2_arc_cdf(0) == 0);
  CHECK(std::abs(cue2_arc_cdf(kPi) - 1) < 1e-15);
  CHECK(std::abs(cue2_arc({-3.0, 3.0}) - (kTwoPi - 6.0)) < 1e-15);
}

TEST_CASE("sampling is reproducible") {
  const auto a = sample_cue(8, 50, 42, Parallelism{1});
  const auto b = sample_cue(8, 50, 42, Parallelism{3});
  const auto c = sample_cue(8, 50, 43);
  CHECK(a.phases == b.phases);
  CHECK(a.phases != c.phases);
}

TEST_CASE("Kolmogorov-Smirnov statistic") {
  const auto u = poisson_points(5000, 3);
  std::vector<double> scaled;
  for (double x : u) scaled.push_back(x / 5000.0);
  const auto ks = ks_test(scaled, [](double x) { return std::clamp(x, 0.0, 1.0); });
  CHECK(ks.statistic < 0.03);
  CHECK(ks.p_value > 0.01);
  const auto bad = ks_test(scaled, [](double x) { return std::clamp(x * x, 0.0, 1.0); });
  CHECK(bad.p_value < 1e-10);
}

TEST_CASE("pair correlation of CUE and of Poisson points") {
  const auto cue = pair_correlation_cue(sample_cue(20, 600, 9));
  CHECK(cue.l2_sine < 0.05);
  CHECK(cue.l2_poisson > 0.3);
  CHECK(cue.bin_centers.size() == 30);
  CHECK(std::abs(cue.bin_width - 0.1) < 1e-15);

  std::vector<std::vector<double>> groups;
  for (std::uint64_t k = 0; k < 12; ++k) groups.push_back(poisson_points(1000, 100 + k));
  const auto poi = pair_correlation_unfolded(groups, true, 30, 3.0);
  CHECK(poi.l2_poisson < 0.05);
  CHECK(poi.l2_sine > 0.3);

  CHECK_THROWS_AS(pair_correlation_unfolded({poisson_points(100, 1)}, false, 30, 3.0), ValidationError);
}

TEST_CASE("pair correlation of the shipped zeros") {
  const auto zt = ingest_zeros(std::string(ZUMM_ZEROS_FILE), 1e-6);
  const auto r = pair_correlation_zeros(zt.t);
  INFO("zeros: " << zt.size() << " l2: " << r.l2_sine);
  CHECK(r.l2_sine < 0.08);
  CHECK(r.l2_sine < r.l2_poisson);
}

TEST_CASE("plaquette model without couplings is CUE") {
  const auto r = plaquette_mc(small_chain({}));
  CHECK(r.acceptance_in_range);
  CHECK(sup_distance(r, {}) < 0.025);
  CHECK(r.empty_bins == 0);

  // Spacings agree with direct CUE sampling.
  const auto mc = circular_spacings(r.sample);
  const auto cue = circular_spacings(sample_cue(24, 400, 2));
  CHECK(std::abs(variance(mc) - variance(cue)) < 0.02);
}

TEST_CASE("plaquette density with a coupling follows the oracle") {
  const auto r = plaquette_mc(small_chain({0.25}));
  CHECK(r.acceptance_rate > 0.1);
  CHECK(r.acceptance_rate < 0.9);
  CHECK(sup_distance(r, {0.25}) < 0.025);
  CHECK(r.ungapped_min == doctest::Approx(0.5));
  // Opposite sign is clearly excluded.
  double d = 0;
  for (std::size_t i = 0; i < r.density.size(); ++i)
    d = std::max(d, std::abs(r.density[i] - (1 + 0.5 * std::cos(r.bin_centers[i])) / kTwoPi));
  CHECK(d > 0.05);

  auto spec = small_chain({0.25});
  spec.sweeps = 500;
  spec.burn_in = 0;
  const auto cold = plaquette_mc(spec);
  spec.burn_in = 300;
  const auto warm = plaquette_mc(spec);
  CHECK(cold.sample.phases != warm.sample.phases);
  CHECK(plaquette_mc(spec).sample.phases == warm.sample.phases);
}

TEST_CASE("oracle density integrates to one") {
  double mass = 0;
  for (int k = 0; k < 2000; ++k) mass += plaquette_oracle_density(-kPi + kTwoPi * (k + 0.5) / 2000, {0.25, 0.1});
  CHECK(std::abs(mass * kTwoPi / 2000 - 1) < 1e-12);
}
