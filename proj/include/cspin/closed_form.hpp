#pragma once

#include "cspin/dicke.hpp"

#include <complex>
#include <vector>

namespace cspin {

// Homogeneous central-spin Hamiltonian
//   H = B s0z + A (s0+ J- + s0- J+) + 2 Delta s0z Jz.
struct ModelParams {
  int N = 1;           // bath spins
  double B = 0.0;      // effective field on the central spin
  double A = 0.0;      // transverse (flip-flop) coupling
  double Delta = 0.0;  // longitudinal coupling
};

// Per-mode detunings and Rabi frequencies, index n = 0..N+1:
//   detuning[n] = B + (2n - 1 - N) Delta
//   rabi[n]     = sqrt(detuning[n]^2 + 4 b_n A^2)
struct ModeFrequencies {
  std::vector<double> detuning;
  std::vector<double> rabi;
};

ModeFrequencies mode_frequencies(const ModelParams& p);

// Wavefunction amplitudes in the product basis {|up,n>, |down,n+1>}:
//   up[n]   = cos(W t/2) - i (detuning[n+1]) s
//   down[n] = -2 i sqrt(b_{n+1}) A s
// with W = rabi[n+1] and s = sin(W t/2)/W evaluated as (t/2) sinc(W t/2).
struct AmplitudeTable {
  double t = 0.0;
  std::vector<std::complex<double>> up;    // n = 0..N
  std::vector<std::complex<double>> down;  // n = 0..N
  CoherentWeights weights;
};

AmplitudeTable amplitudes(const ModelParams& p, double theta, double t);

// Reduced 2x2 state of the central spin: [[a, b], [conj(b), 1-a]].
struct QubitState {
  double a = 1.0;
  std::complex<double> b{0.0, 0.0};
};

/// Central spin polarization S0z(t) in [-1/2, 1/2].
double central_polarization(const ModelParams& p, double theta, double t);

/// S0z over a strictly increasing time grid; one value per point.
std::vector<double> polarization_series(const ModelParams& p, double theta,
                                        const std::vector<double>& grid);

QubitState reduced_density_matrix(const ModelParams& p, double theta, double t);

/// Tr[rho^2] = a^2 + (1-a)^2 + 2|b|^2, in [1/2, 1].
double purity(const QubitState& rho);

/// -Tr[rho ln rho] from the closed-form eigenvalues, in [0, ln 2].
double von_neumann_entropy(const QubitState& rho);

/// F = sqrt((1 + 2 Re(b e^{-i phi})) / 2) against (|up> + e^{-i phi}|down>)/sqrt(2).
double fidelity(const QubitState& rho, double phi);

/// Predicted m-th revival time from the frequency gap at the dominant
/// coherent-weight mode n*: t = 2 pi m / (rabi[n*+1] - rabi[n*]).
/// Throws std::domain_error when A = 0 (no flip-flop, no revival).
double revival_time(const ModelParams& p, double theta, int m);

}  // namespace cspin
