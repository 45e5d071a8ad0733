#include "cspin/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cspin {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// sin(w t/2)/w as (t/2) sinc(w t/2); finite and analytic through w = 0.
double half_period_sine(double w, double t) {
  const double x = 0.5 * w * t;
  double sinc;
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    sinc = 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  } else {
    sinc = std::sin(x) / x;
  }
  return 0.5 * t * sinc;
}

void validate(const ModelParams& p) {
  if (p.N < 1) throw std::domain_error("ModelParams: N must be >= 1");
  if (!std::isfinite(p.B) || !std::isfinite(p.A) || !std::isfinite(p.Delta))
    throw std::domain_error("ModelParams: B, A, Delta must be finite");
}

}  // namespace

ModeFrequencies mode_frequencies(const ModelParams& p) {
  validate(p);
  ModeFrequencies f;
  f.detuning.resize(p.N + 2);
  f.rabi.resize(p.N + 2);
  for (int n = 0; n <= p.N + 1; ++n) {
    const double d = p.B + (2.0 * n - 1.0 - p.N) * p.Delta;
    const double b = ladder_coefficient(n, p.N);
    f.detuning[n] = d;
    f.rabi[n] = std::sqrt(d * d + 4.0 * b * p.A * p.A);
  }
  return f;
}

AmplitudeTable amplitudes(const ModelParams& p, double theta, double t) {
  const ModeFrequencies f = mode_frequencies(p);
  AmplitudeTable tab;
  tab.t = t;
  tab.weights = coherent_weights(p.N, theta);
  tab.up.resize(p.N + 1);
  tab.down.resize(p.N + 1);
  for (int n = 0; n <= p.N; ++n) {
    const double w = f.rabi[n + 1];
    const double s = half_period_sine(w, t);
    const double b = ladder_coefficient(n + 1, p.N);
    tab.up[n] = std::cos(0.5 * w * t) - kI * (f.detuning[n + 1] * s);
    tab.down[n] = -2.0 * kI * (std::sqrt(b) * p.A * s);
  }
  return tab;
}

double central_polarization(const ModelParams& p, double theta, double t) {
  const ModeFrequencies f = mode_frequencies(p);
  const CoherentWeights cw = coherent_weights(p.N, theta);
  // S0z = 1/2 - sum_n w[n] |down[n]|^2 with |down|^2 = 4 b_{n+1} A^2 s^2.
  // This form bakes in per-mode normalization, stays finite at rabi = 0
  // (where the Delta^2/Omega^2 form is 0/0), and is exact at t = 0.
  double transferred = 0.0;
  for (int n = 0; n <= p.N; ++n) {
    if (cw.w[n] == 0.0) continue;
    const double s = half_period_sine(f.rabi[n + 1], t);
    transferred += cw.w[n] * 4.0 * ladder_coefficient(n + 1, p.N) * p.A * p.A * s * s;
  }
  return 0.5 - transferred;
}

std::vector<double> polarization_series(const ModelParams& p, double theta,
                                        const std::vector<double>& grid) {
  if (grid.empty()) throw std::domain_error("polarization_series: empty time grid");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::domain_error("polarization_series: grid must be strictly increasing");
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    out[i] = central_polarization(p, theta, grid[i]);
  return out;
}

QubitState reduced_density_matrix(const ModelParams& p, double theta, double t) {
  const AmplitudeTable tab = amplitudes(p, theta, t);
  QubitState rho;
  rho.a = 0.0;
  rho.b = 0.0;
  for (int n = 0; n <= p.N; ++n)
    rho.a += tab.weights.w[n] * std::norm(tab.up[n]);
  // Coherence: the n = N term has no |up, N+1> partner, so the sum stops at N-1.
  // The half-integer weight exponents sin^{2n+1} cos^{2(N-n)-1} of the
  // coherent-state expansion combine to sqrt(w[n] w[n+1]).
  for (int n = 0; n < p.N; ++n) {
    const double lw = 0.5 * (tab.weights.log_w[n] + tab.weights.log_w[n + 1]);
    if (!std::isfinite(lw)) continue;
    rho.b += std::exp(lw) * tab.up[n + 1] * std::conj(tab.down[n]);
  }
  return rho;
}

double purity(const QubitState& rho) {
  const double g = rho.a * rho.a + (1.0 - rho.a) * (1.0 - rho.a) + 2.0 * std::norm(rho.b);
  return std::clamp(g, 0.5, 1.0);
}

double von_neumann_entropy(const QubitState& rho) {
  const double d = rho.a - 0.5;
  const double r = std::sqrt(d * d + std::norm(rho.b));
  const double lp = std::clamp(0.5 + r, 0.0, 1.0);
  const double lm = std::clamp(0.5 - r, 0.0, 1.0);
  auto xlnx = [](double x) { return x > 0.0 ? x * std::log(x) : 0.0; };
  return -(xlnx(lp) + xlnx(lm)) + 0.0;  // + 0.0 normalizes -0.0
}

double fidelity(const QubitState& rho, double phi) {
  const double overlap =
      0.5 * (1.0 + 2.0 * std::real(rho.b * std::exp(-kI * phi)));
  return std::sqrt(std::max(overlap, 0.0));
}

double revival_time(const ModelParams& p, double theta, int m) {
  validate(p);
  if (m < 1) throw std::domain_error("revival_time: m must be >= 1");
  if (p.A == 0.0) throw std::domain_error("revival_time: A = 0 admits no revival");
  const CoherentWeights cw = coherent_weights(p.N, theta);
  const int n_star = static_cast<int>(
      std::max_element(cw.w.begin(), cw.w.end()) - cw.w.begin());
  const ModeFrequencies f = mode_frequencies(p);
  const double gap = f.rabi[n_star + 1] - f.rabi[n_star];
  if (gap == 0.0) throw std::domain_error("revival_time: degenerate mode gap");
  const double pi = std::acos(-1.0);
  return 2.0 * pi * m / std::abs(gap);
}

}  // namespace cspin
