#include "cspin/jc.hpp"

#include <doctest.h>

#include <cmath>

using namespace cspin;

namespace {
const double kPi = std::acos(-1.0);
}

TEST_CASE("correspondence table") {
  // sin^2(theta/2) = 0.04
  const double theta = 2.0 * std::asin(0.2);
  const JCParams jc = correspondence({100, 2.0, 0.1, 0.0}, theta);
  CHECK(jc.detuning == doctest::Approx(2.0));
  CHECK(jc.g == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(jc.nbar == doctest::Approx(4.0).epsilon(1e-12));

  CHECK(correspondence({7, 0.0, 1.0, 0.0}, 0.0).nbar == 0.0);

  const JCParams small = correspondence({10000, 0.0, 1e-2, 0.0}, 0.02);
  CHECK(small.g == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(small.nbar == doctest::Approx(10000.0 * std::pow(std::sin(0.01), 2)).epsilon(1e-12));
  CHECK(small.nbar == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("poisson weights: pmf anchors and tail-driven truncation") {
  const PoissonWeights w0 = poisson_weights(0.0);
  CHECK(w0.n_max == 0);
  CHECK(w0.p[0] == doctest::Approx(1.0));

  const PoissonWeights w1 = poisson_weights(1.0);
  CHECK(w1.p[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(w1.p[1] == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(w1.p[2] == doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-14));

  // n_max equals the smallest n with cumulative mass >= 1 - eps (cumulative oracle).
  const double lambda = 25.0, eps = 1e-12;
  const PoissonWeights w = poisson_weights(lambda, eps);
  double cum = 0.0;
  int expected = -1;
  double logp = -lambda;
  for (int n = 0; n < 500; ++n) {
    if (n > 0) logp += std::log(lambda) - std::log(static_cast<double>(n));
    cum += std::exp(logp);
    if (cum >= 1.0 - eps) {
      expected = n;
      break;
    }
  }
  CHECK(w.n_max == expected);
  double mass = 0.0;
  for (double p : w.p) {
    CHECK(p >= 0.0);
    mass += p;
  }
  CHECK(mass >= 1.0 - eps);

  CHECK_THROWS_AS(poisson_weights(-1.0), std::domain_error);
  CHECK_THROWS_AS(poisson_weights(1.0, 0.0), std::domain_error);
}

TEST_CASE("jc inversion: t=0 and the textbook JC limit") {
  JCParams jc;
  jc.detuning = 0.0;
  jc.g = 1.0;
  jc.nbar = 9.0;
  jc.longitudinal = 0.0;
  jc.bath_size = 1000;
  CHECK(jc_inversion(jc, 0.0) == doctest::Approx(1.0).epsilon(1e-11));

  // Delta = B = 0: W = sum p_n cos(2 g sqrt(n+1) t), brute-force n_max = 200.
  for (double t = 0.0; t <= 60.0; t += 0.71) {
    double ref = 0.0, logp = -jc.nbar;
    for (int n = 0; n <= 200; ++n) {
      if (n > 0) logp += std::log(jc.nbar) - std::log(static_cast<double>(n));
      ref += std::exp(logp) * std::cos(2.0 * jc.g * std::sqrt(n + 1.0) * t);
    }
    CHECK(jc_inversion(jc, t) == doctest::Approx(ref).epsilon(1e-9));
    CHECK(std::abs(jc_inversion(jc, t)) <= 1.0 + 1e-12);
  }
}

TEST_CASE("jc summand equals the closed-form n=0 structure at theta=0, Delta=0") {
  // Single-mode case: both sides are pure cosines at sqrt(B^2 + 4 N A^2).
  const ModelParams p{400, 0.8, 0.05, 0.0};
  std::vector<double> grid;
  for (double t = 0.0; t <= 20.0; t += 0.25) grid.push_back(t);
  CHECK(finite_n_deviation(p, 0.0, grid) < 1e-12);
}

TEST_CASE("truncation stability: doubling n_max moves W by < 10 eps_tail") {
  JCParams jc;
  jc.detuning = 0.5;
  jc.g = 1.0;
  jc.nbar = 9.0;
  jc.longitudinal = 0.001;
  jc.bath_size = 100;
  const double eps = 1e-12;
  const PoissonWeights base = poisson_weights(jc.nbar, eps);
  PoissonWeights doubled = base;
  double logp = -jc.nbar + base.n_max * std::log(jc.nbar) - std::lgamma(base.n_max + 1.0);
  for (int n = base.n_max + 1; n <= 2 * base.n_max; ++n) {
    logp += std::log(jc.nbar) - std::log(static_cast<double>(n));
    doubled.p.push_back(std::exp(logp));
    doubled.n_max = n;
  }
  for (double t = 0.0; t <= 40.0; t += 0.5)
    CHECK(std::abs(jc_inversion(jc, base, t) - jc_inversion(jc, doubled, t)) < 10 * eps);
}

TEST_CASE("poisson approaches the binomial as N grows at fixed nbar") {
  // Total-variation distance between Binomial(N, nbar/N) and Poisson(nbar).
  auto tv_distance = [](int N, double nbar) {
    const double theta = 2.0 * std::asin(std::sqrt(nbar / N));
    const CoherentWeights cw = coherent_weights(N, theta);
    const PoissonWeights pw = poisson_weights(nbar, 1e-15);
    double tv = 0.0;
    const int top = std::max(N, pw.n_max);
    for (int n = 0; n <= top; ++n) {
      const double b = n <= N ? cw.w[n] : 0.0;
      const double q = n <= pw.n_max ? pw.p[n] : 0.0;
      tv += std::abs(b - q);
    }
    return 0.5 * tv;
  };
  const double d2 = tv_distance(100, 1.0);
  const double d3 = tv_distance(1000, 1.0);
  const double d4 = tv_distance(10000, 1.0);
  CHECK(d2 > d3);
  CHECK(d3 > d4);
}

TEST_CASE("finite-N deviation shrinks with N at fixed nbar") {
  std::vector<double> grid;
  for (double t = 0.0; t <= 30.0; t += 0.2) grid.push_back(t);
  auto dev = [&](int N) {
    const double theta = 2.0 * std::asin(std::sqrt(1.0 / N));
    return finite_n_deviation({N, 0.0, 1.0 / std::sqrt(static_cast<double>(N)), 0.0},
                              theta, grid);
  };
  const double d1 = dev(100);
  const double d2 = dev(10000);
  CHECK(d2 < d1);
}
