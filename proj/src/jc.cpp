#include "cspin/jc.hpp"

#include <cmath>
#include <stdexcept>

namespace cspin {

JCParams correspondence(const ModelParams& p, double theta) {
  if (p.N < 1) throw std::domain_error("correspondence: N must be >= 1");
  const double s = std::sin(theta / 2);
  JCParams jc;
  jc.detuning = p.B;
  jc.g = std::sqrt(static_cast<double>(p.N)) * p.A;
  jc.nbar = p.N * s * s;
  jc.longitudinal = p.Delta;
  jc.bath_size = p.N;
  return jc;
}

PoissonWeights poisson_weights(double lambda, double eps_tail) {
  if (lambda < 0.0) throw std::domain_error("poisson_weights: lambda must be >= 0");
  if (!(eps_tail > 0.0 && eps_tail < 1.0))
    throw std::domain_error("poisson_weights: eps_tail must lie in (0, 1)");
  PoissonWeights out;
  out.lambda = lambda;
  double cumulative = 0.0;
  for (int n = 0;; ++n) {
    const double lp = -lambda + n * (lambda > 0.0 ? std::log(lambda) : 0.0) -
                      std::lgamma(n + 1.0);
    const double pn = (lambda == 0.0 && n > 0) ? 0.0 : std::exp(lp);
    out.p.push_back(pn);
    cumulative += pn;
    if (cumulative >= 1.0 - eps_tail) {
      out.n_max = n;
      return out;
    }
    if (n > 100000) throw std::runtime_error("poisson_weights: tail did not converge");
  }
}

double jc_inversion(const JCParams& jc, const PoissonWeights& w, double t) {
  const double d = jc.detuning - jc.bath_size * jc.longitudinal;
  double inv = 0.0;
  for (int n = 0; n <= w.n_max; ++n) {
    const double q = 4.0 * (n + 1.0) * jc.g * jc.g;
    const double w2 = d * d + q;
    if (w2 == 0.0) {
      inv += w.p[n];
      continue;
    }
    inv += w.p[n] * (d * d + q * std::cos(std::sqrt(w2) * t)) / w2;
  }
  return inv;
}

double jc_inversion(const JCParams& jc, double t, double eps_tail) {
  return jc_inversion(jc, poisson_weights(jc.nbar, eps_tail), t);
}

double finite_n_deviation(const ModelParams& p, double theta,
                          const std::vector<double>& grid, double eps_tail) {
  const JCParams jc = correspondence(p, theta);
  const PoissonWeights w = poisson_weights(jc.nbar, eps_tail);
  double worst = 0.0;
  for (double t : grid) {
    const double dev =
        std::abs(2.0 * central_polarization(p, theta, t) - jc_inversion(jc, w, t));
    worst = std::max(worst, dev);
  }
  return worst;
}

}  // namespace cspin
