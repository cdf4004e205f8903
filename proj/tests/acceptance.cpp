// Acceptance run: one PASS/FAIL line per criterion, tolerances fixed below.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "zumm/counting.hpp"
#include "zumm/li.hpp"
#include "zumm/padic.hpp"
#include "zumm/renorm.hpp"
#include "zumm/rmt.hpp"
#include "zumm/special.hpp"
#include "zumm/trace_formula.hpp"
#include "zumm/umm.hpp"
#include "zumm/wavelet.hpp"
#include "zumm/zeros.hpp"

using namespace zumm;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

void note(Outcome& o, bool ok, const std::string& what, double value, double tol) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s%s %.3g (tol %.3g)", o.detail.empty() ? "" : "; ", what.c_str(), value, tol);
  o.detail += buf;
  o.pass = o.pass && ok;
}

int failures = 0;

void criterion(int id, double time_limit, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < time_limit;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("[%s] criterion %d: %s; time %.2f s (limit %.0f s)\n", pass ? "PASS" : "FAIL", id, o.detail.c_str(), secs,
              time_limit);
  std::fflush(stdout);
}

const std::string kZeros = ZUMM_ZEROS_FILE;

}  // namespace

int main() {
  // 1. Resolvent reflection on 100 random points per model.
  criterion(1, 1, [] {
    Outcome o;
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> rad(0.05, 0.95), ang(0, kTwoPi);
    double worst = 0;
    for (auto model : {umm::ResolventModel::local_zeta(2), umm::ResolventModel::local_zeta(3),
                       umm::ResolventModel::local_zeta(5), umm::ResolventModel::gamma_place()}) {
      auto outer = model;
      outer.branch = umm::Branch::Outside;
      for (int i = 0; i < 100; ++i) {
        const Complex z = std::polar(rad(rng), ang(rng));
        worst = std::max(worst, std::abs(umm::resolvent(model, z) + umm::resolvent(outer, 1.0 / z) - 1.0));
      }
    }
    note(o, worst < 1e-10, "max |R<(z)+R>(1/z)-1|", worst, 1e-10);
    return o;
  });

  // 2. beta_1 = 1/(p-1) and radius independence for n <= 20.
  criterion(2, 5, [] {
    Outcome o;
    double b1 = 0, radius = 0;
    for (long p : {2L, 3L, 5L}) {
      umm::ContourSpec a, b;
      a.radius = 0.4;
      a.second_radius = 0.3;
      b.radius = 0.7;
      b.second_radius = 0.6;
      const auto sa = umm::beta_contour(umm::ResolventModel::local_zeta(p), 20, a);
      const auto sb = umm::beta_contour(umm::ResolventModel::local_zeta(p), 20, b);
      b1 = std::max(b1, std::abs(sa.beta[0] - 1.0 / double(p - 1)));
      for (int n = 0; n < 20; ++n) radius = std::max(radius, std::abs(sa.beta[n] - sb.beta[n]));
      radius = std::max(radius, std::max(sa.radius_error, sb.radius_error));
    }
    note(o, b1 < 1e-9, "max |beta_1 - 1/(p-1)|", b1, 1e-9);
    note(o, radius < 1e-9, "radius dependence", radius, 1e-9);
    return o;
  });

  // 3. Potential series against the closed-form logarithm.
  criterion(3, 5, [] {
    Outcome o;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> rad(0.0, 0.5), ang(0, kTwoPi);
    double worst = 0;
    umm::ContourSpec cs;
    cs.radius = 0.7;
    cs.second_radius = 0.6;
    for (long p : {2L, 3L, 5L}) {
      const auto b = umm::beta_contour(umm::ResolventModel::local_zeta(p), 40, cs);
      for (int i = 0; i < 20; ++i) {
        const Complex z = std::polar(rad(rng), ang(rng));
        Complex sum = 0, zn = 1;
        for (int n = 1; n <= 40; ++n) {
          zn *= z;
          sum += b.beta[n - 1] * zn / double(n);
        }
        worst = std::max(worst, std::abs(sum - umm::potential_sum_local(p, z)));
      }
    }
    note(o, worst < 1e-8, "max |series - closed form|", worst, 1e-8);
    return o;
  });

  // 4. Vladimirov kernel vs spectrum, Gram matrix of 12 restricted wavelets.
  criterion(4, 30, [] {
    Outcome o;
    double residual = 0;
    for (long p : {2L, 3L})
      for (Complex alpha : {Complex(1, 0), Complex(2, 0), Complex(1, 1)})
        for (long n : {0L, 1L}) {
          wavelet::VladimirovSpec s;
          s.alpha = alpha;
          s.mode = wavelet::VladimirovMode::Kernel;
          s.coset_level = 12;
          s.domain_exponent = 12;
          wavelet::WaveletIndex idx;
          idx.p = p;
          idx.n = n;
          residual = std::max(residual, wavelet::vladimirov_apply(s, idx).residual);
        }
    note(o, residual < 1e-6, "max kernel residual", residual, 1e-6);
    double gram = 0;
    for (long p : {2L, 3L, 5L})
      for (long a = 1; a <= 12; ++a)
        for (long b = 1; b <= 12; ++b) {
          const Complex g = wavelet::inner_product(wavelet::WaveletIndex::restricted(p, a),
                                                   wavelet::WaveletIndex::restricted(p, b), 12);
          gram = std::max(gram, std::abs(g - (a == b ? 1.0 : 0.0)));
        }
    note(o, gram < 1e-12, "max |Gram - I|", gram, 1e-12);
    return o;
  });

  // 5. Haar shell sums.
  criterion(5, 1, [] {
    Outcome o;
    double excess = 0;
    for (long p : {2L, 3L, 7L})
      for (Complex s : {Complex(0.5, 0), Complex(2, 0), Complex(1, 3)})
        for (int K : {5, 20, 60}) {
          const auto r = padic::haar_integrate_norm_power(p, s, K);
          excess = std::max(excess, std::abs(r.value - r.closed_form) - r.tail_bound * (1 + 1e-12) - 1e-15);
        }
    note(o, excess <= 0, "shell sum beyond tail bound by", std::max(excess, 0.0), 0.0);
    const auto ex = padic::haar_integrate_norm_power_exact(2, 2, 80);
    const padic::Rational sixth(1, 6);
    const padic::Rational diff = ex.value > sixth ? ex.value - sixth : sixth - ex.value;
    const padic::Rational limit = padic::Rational(1) / boost::multiprecision::pow(padic::BigInt(2), 80);
    note(o, ex.closed_form == sixth && diff < limit && diff <= ex.tail_bound, "|exact(p=2,s=2) - 1/6| * 2^80",
         static_cast<double>(diff / limit), 1.0);
    return o;
  });

  // 6. psi(10.5) from 100 and 200 zeros.
  criterion(6, 5, [] {
    Outcome o;
    const auto zt = ingest_zeros(kZeros, 1e-6, 200);
    const double direct = psi_direct(10.5);
    note(o, std::abs(direct - 7.832015) < 1e-6, "|psi_direct - 7.832015|", std::abs(direct - 7.832015), 1e-6);
    const double d100 = std::abs(psi_explicit(10.5, zt, 100).value - direct);
    const double d200 = std::abs(psi_explicit(10.5, zt, 200).value - direct);
    note(o, d100 < 0.1, "|psi_zeros(100) - psi_direct|", d100, 0.1);
    note(o, d200 <= d100, "200-zero error", d200, d100);
    return o;
  });

  // 7. Li coefficients, two methods.
  criterion(7, 30, [] {
    Outcome o;
    const auto zt = ingest_zeros(kZeros, 1e-6, 2000);
    const auto a = li_cauchy(10);
    const auto b = li_zero_sum(10, zt, 2000);
    const auto cmp = compare_li(a, b, 1e-3);
    note(o, cmp.agree, "max |lambda_cauchy - lambda_zeros|", cmp.max_difference, 1e-3);
    double least = a.lambda[0];
    for (int n = 0; n < 10; ++n) least = std::min({least, a.lambda[n], b.lambda[n]});
    note(o, least > 0, "min lambda_n", least, 0.0);
    return o;
  });

  // 8. Renormalized coefficients.
  criterion(8, 60, [] {
    Outcome o;
    const auto ps = renorm::beta_ren_prime_sum(10, 1.5);
    const auto sc = renorm::beta_ren_shifted(10, 1.5);
    double d = 0;
    for (int m = 0; m < 10; ++m) d = std::max(d, std::abs(ps.beta[m] - sc.beta[m]));
    note(o, d < 1e-6, "prime_sum vs shifted (mu=1.5)", d, 1e-6);
    const auto x = renorm::xi_decomposition(20);
    note(o, x.max_identity_residual < 1e-8, "Xi = 2/m + R + G", x.max_identity_residual, 1e-8);
    const auto sym = renorm::beta_symmetric(20);
    double s = 0;
    for (int m = 0; m < 20; ++m) s = std::max(s, std::abs(-2 * std::log(2.0) * sym.beta[m] - x.xi.beta[m]));
    note(o, s < 1e-12, "-2 ln2 beta_sym vs Xi", s, 1e-12);
    return o;
  });

  // 9. Trace formula, Gaussian a = 1.
  criterion(9, 10, [] {
    Outcome o;
    const auto zt = ingest_zeros(kZeros, 1e-6, 100);
    const auto r = trace_formula_check(TestFunctionPair::gaussian(1.0), zt, PrimeTable(10000));
    note(o, std::abs(r.residual) < 1e-3, "|residual|", std::abs(r.residual), 1e-3);
    note(o, std::abs(r.residual) <= r.total_bound, "|residual| vs reported bound", std::abs(r.residual), r.total_bound);
    return o;
  });

  // 10. Random-matrix statistics.
  criterion(10, 600, [] {
    Outcome o;
    const auto cue = rmt::sample_cue(40, 4000, 7);
    const auto pc = rmt::pair_correlation_cue(cue);
    note(o, pc.l2_sine < 0.05, "CUE L2 to sine kernel", pc.l2_sine, 0.05);

    rmt::PlaquetteSpec spec;
    spec.n = 32;
    spec.beta = {0.25};
    const auto mc = rmt::plaquette_mc(spec);
    double sup = 0;
    for (std::size_t i = 0; i < mc.density.size(); ++i)
      sup = std::max(sup, std::abs(mc.density[i] - rmt::plaquette_oracle_density(mc.bin_centers[i], spec.beta)));
    note(o, sup < 0.02, "plaquette sup-norm to ungapped density", sup, 0.02);

    std::vector<std::vector<double>> groups;
    for (std::uint64_t k = 0; k < 4000; ++k) groups.push_back(rmt::poisson_points(40, 1000 + k));
    const auto poi = rmt::pair_correlation_unfolded(groups, true, 30, 3.0);
    note(o, poi.l2_sine > 0.05, "Poisson L2 to sine kernel (must exceed)", poi.l2_sine, 0.05);
    return o;
  });

  // 11. First line of the zero table.
  criterion(11, 1, [] {
    Outcome o;
    std::ifstream in(kZeros);
    if (!in) throw ValidationError("cannot open " + kZeros);
    std::string line;
    while (std::getline(in, line))
      if (!line.empty() && line[0] != '#') break;
    std::istringstream first(line + "\n");
    const auto zt = ingest_zeros(first, kZeros, 1e-6);
    if (zt.size() != 1) throw ValidationError("first entry rejected");
    note(o, std::abs(zt.t[0] - 14.134725) < 1e-6, "|t_1 - 14.134725|", std::abs(zt.t[0] - 14.134725), 1e-6);
    const double x = std::abs(special::xi<double>(Complex(0.5, zt.t[0])));
    note(o, x < 1e-6, "|xi(1/2 + i t_1)|", x, 1e-6);
    return o;
  });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
