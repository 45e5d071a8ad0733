#include "cspin/dicke.hpp"

#include "cspin/errors.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace cspin {

namespace {

// Exact C(N,n) in 64 bits, or 0 on overflow.
std::uint64_t binomial_u64(int N, int n) {
  if (n > N - n) n = N - n;
  std::uint64_t c = 1;
  for (int k = 1; k <= n; ++k) {
    unsigned __int128 t = static_cast<unsigned __int128>(c) * (N - n + k);
    t /= k;  // exact: C(N-n+k, k) is an integer
    if (t > std::numeric_limits<std::uint64_t>::max()) return 0;
    c = static_cast<std::uint64_t>(t);
  }
  return c;
}

}  // namespace

double log_binomial(int N, int n) {
  if (N < 0 || n < 0 || n > N)
    throw std::domain_error("log_binomial: require 0 <= n <= N, got N=" +
                            std::to_string(N) + " n=" + std::to_string(n));
  if (std::uint64_t c = binomial_u64(N, n); c != 0)
    return std::log(static_cast<double>(c));
  return std::lgamma(N + 1.0) - std::lgamma(n + 1.0) - std::lgamma(N - n + 1.0);
}

double ladder_coefficient(int n, int N) {
  if (n < 0 || n > N + 1)
    throw std::domain_error("ladder_coefficient: require 0 <= n <= N+1");
  return static_cast<double>(n) * (N - n + 1);
}

CoherentWeights coherent_weights(int N, double theta) {
  if (N < 1) throw std::domain_error("coherent_weights: N must be >= 1");
  if (!(theta >= 0.0 && theta <= std::acos(-1.0) + 1e-12))
    throw std::domain_error("coherent_weights: theta must lie in [0, pi]");

  const double s2 = std::sin(theta / 2) * std::sin(theta / 2);
  const double c2 = std::cos(theta / 2) * std::cos(theta / 2);
  const double inf = std::numeric_limits<double>::infinity();

  CoherentWeights out;
  out.bath_size = N;
  out.theta = theta;
  out.w.resize(N + 1);
  out.log_w.resize(N + 1);
  out.c.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    // Convention 0*ln(0) = 0 so theta = 0 and pi stay exact.
    double lw = log_binomial(N, n);
    if (n > 0) lw += (s2 > 0.0) ? n * std::log(s2) : -inf;
    if (n < N) lw += (c2 > 0.0) ? (N - n) * std::log(c2) : -inf;
    out.log_w[n] = lw;
    out.w[n] = std::exp(lw);
    out.c[n] = std::exp(0.5 * lw);
  }
  return out;
}

std::vector<double> dicke_vector(int N, int n, int ed_cap) {
  if (N < 1 || n < 0 || n > N) throw std::domain_error("dicke_vector: require 0 <= n <= N");
  if (N > ed_cap)
    throw CapacityError("dicke_vector: N=" + std::to_string(N) +
                        " exceeds ED cap " + std::to_string(ed_cap));
  const std::size_t dim = std::size_t{1} << N;
  const double amp = std::exp(-0.5 * log_binomial(N, n));
  std::vector<double> v(dim, 0.0);
  for (std::size_t cfg = 0; cfg < dim; ++cfg)
    if (std::popcount(cfg) == n) v[cfg] = amp;
  return v;
}

}  // namespace cspin
