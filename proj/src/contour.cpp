#include "zumm/contour.hpp"

#include <cmath>
#include <numbers>

namespace zumm::contour {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

namespace {

std::vector<ComplexL> roots_of_unity(int q) {
  std::vector<ComplexL> w(static_cast<std::size_t>(q));
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  for (int j = 0; j < q; ++j) w[static_cast<std::size_t>(j)] = std::polar(1.0L, two_pi * j / q);
  return w;
}

}  // namespace

std::vector<ComplexL> sample_circle(const std::function<ComplexL(ComplexL)>& f, ComplexL center,
                                    long double radius, int nodes, const Parallelism& par) {
  require(is_power_of_two(nodes), "contour: node count must be a power of two");
  require(radius > 0, "contour: radius must be positive");
  const auto w = roots_of_unity(nodes);
  std::vector<ComplexL> out(static_cast<std::size_t>(nodes));
  parallel_for(out.size(), par, [&](std::size_t j) { out[j] = f(center + radius * w[j]); });
  return out;
}

std::vector<ComplexL> coefficients(const std::vector<ComplexL>& samples, long double radius,
                                   int max_index, int stride) {
  require(stride >= 1 && samples.size() % static_cast<std::size_t>(stride) == 0,
          "contour: stride must divide the node count");
  const int q = static_cast<int>(samples.size()) / stride;
  require(is_power_of_two(q), "contour: node count must be a power of two");
  require(max_index < q, "contour: need more nodes than coefficients");
  const auto w = roots_of_unity(q);
  std::vector<ComplexL> out(static_cast<std::size_t>(max_index + 1));
  std::vector<ComplexL> terms(static_cast<std::size_t>(q));
  long double rk = 1.0L;
  for (int k = 0; k <= max_index; ++k) {
    for (int j = 0; j < q; ++j) {
      // exp(-2 pi i jk/q) via exact index arithmetic
      const long long idx = (static_cast<long long>(q) - (static_cast<long long>(j) * k) % q) % q;
      terms[static_cast<std::size_t>(j)] =
          samples[static_cast<std::size_t>(j * stride)] * w[static_cast<std::size_t>(idx)];
    }
    out[static_cast<std::size_t>(k)] = pairwise_sum(terms) / (static_cast<long double>(q) * rk);
    rk *= radius;
  }
  return out;
}

void unwrap_log(std::vector<ComplexL>& logs, std::size_t anchor) {
  const std::size_t n = logs.size();
  if (n == 0) return;
  require(anchor < n, "unwrap_log: anchor out of range");
  const long double two_pi = 2.0L * std::numbers::pi_v<long double>;
  const long double pi = std::numbers::pi_v<long double>;
  // walk forward from the anchor around the full loop
  for (std::size_t step = 1; step < n; ++step) {
    const std::size_t prev = (anchor + step - 1) % n;
    const std::size_t cur = (anchor + step) % n;
    long double d = logs[cur].imag() - logs[prev].imag();
    const long double k = std::round(d / two_pi);
    if (k != 0) logs[cur] -= ComplexL(0, k * two_pi);
    d = logs[cur].imag() - logs[prev].imag();
    if (std::abs(d) > pi / 2)
      throw NumericError("unwrap_log: phase jumps by more than pi/2 between nodes; refine the contour");
  }
  const long double closing = logs[anchor].imag() - logs[(anchor + n - 1) % n].imag();
  if (std::abs(closing) > pi / 2)
    throw NumericError("unwrap_log: logarithm is not single-valued on the contour (winding)");
}

}  // namespace zumm::contour
