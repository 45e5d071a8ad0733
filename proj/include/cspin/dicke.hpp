#pragma once

#include <vector>

namespace cspin {

// Largest bath size accepted by the full-Hilbert-space (2^(N+1)) paths.
inline constexpr int kDefaultEdCap = 14;

/// ln C(N,n) via log-gamma; exact (through an integer path) while C(N,n)
/// fits in 64 bits. Throws std::domain_error for n outside [0, N].
double log_binomial(int N, int n);

/// Dicke ladder coefficient b_n = n(N-n+1); zero at both ends of the ladder.
double ladder_coefficient(int n, int N);

// Binomial weights of a spin coherent state over the Dicke ladder,
// w[n] = C(N,n) sin^(2n)(theta/2) cos^(2(N-n))(theta/2).
struct CoherentWeights {
  int bath_size = 0;
  double theta = 0.0;
  std::vector<double> w;      // n = 0..N, sums to 1
  std::vector<double> log_w;  // -inf where w[n] == 0
  std::vector<double> c;      // sqrt(w[n])
};

/// Weights evaluated in log space; theta must lie in [0, pi].
CoherentWeights coherent_weights(int N, double theta);

/// Full 2^N bath-space Dicke state |n>: amplitude 1/sqrt(C(N,n)) on every
/// bit string with exactly n set bits (bath spin j = bit j-1, up = 1).
std::vector<double> dicke_vector(int N, int n, int ed_cap = kDefaultEdCap);

}  // namespace cspin
