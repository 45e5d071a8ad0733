#pragma once

#include "cspin/closed_form.hpp"

#include <vector>

namespace cspin {

// Generalized Jaynes-Cummings parameters obtained from the central-spin
// model in the large-N, small-theta limit:
//   detuning = B,  g = sqrt(N) A,  nbar = N sin^2(theta/2).
// longitudinal and bath_size are kept for the generalized (Delta != 0) model.
struct JCParams {
  double detuning = 0.0;
  double g = 0.0;
  double nbar = 0.0;
  double longitudinal = 0.0;
  double bath_size = 0.0;
};

JCParams correspondence(const ModelParams& p, double theta);

// Truncated Poisson distribution p[n] = e^{-lambda} lambda^n / n!,
// cut at the smallest n_max whose cumulative mass is >= 1 - eps_tail.
struct PoissonWeights {
  double lambda = 0.0;
  std::vector<double> p;
  int n_max = 0;
};

PoissonWeights poisson_weights(double lambda, double eps_tail = 1e-12);

/// Inversion W(t) of the generalized JC model:
///   W = sum_n p[n] [ D^2/W_n^2 + (4(n+1) g^2 / W_n^2) cos(W_n t) ]
/// with D = detuning - N * longitudinal and W_n = sqrt(D^2 + 4(n+1) g^2).
double jc_inversion(const JCParams& jc, const PoissonWeights& w, double t);
double jc_inversion(const JCParams& jc, double t, double eps_tail = 1e-12);

/// max over the grid of |2 S0z(t) - W(t)| with both sides tied through the
/// correspondence; shrinks as N grows at fixed nbar.
double finite_n_deviation(const ModelParams& p, double theta,
                          const std::vector<double>& grid,
                          double eps_tail = 1e-12);

}  // namespace cspin
