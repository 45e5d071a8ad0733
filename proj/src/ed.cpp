#include "cspin/ed.hpp"

#include "cspin/errors.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace cspin {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

double sz_of_bit(std::uint32_t config, int bit) {
  return (config >> bit) & 1u ? 0.5 : -0.5;
}

void check_profile(const CouplingProfile& p) {
  if (p.A.empty() || p.A.size() != p.Delta.size())
    throw std::invalid_argument("CouplingProfile: A and Delta must be non-empty, equal length");
}

}  // namespace

CouplingProfile uniform_profile(int N, double A, double Delta) {
  if (N < 1) throw std::invalid_argument("uniform_profile: N must be >= 1");
  return {ProfileKind::Uniform, std::vector<double>(N, A), std::vector<double>(N, Delta)};
}

CouplingProfile exponential_profile(int N, double A, double Delta, double alpha) {
  if (N < 1) throw std::invalid_argument("exponential_profile: N must be >= 1");
  CouplingProfile p;
  p.kind = ProfileKind::Exponential;
  p.A.resize(N);
  p.Delta.resize(N);
  for (int j = 1; j <= N; ++j) {
    const double grade = std::exp(-alpha * (j - 1) / static_cast<double>(N));
    p.A[j - 1] = A * grade;
    p.Delta[j - 1] = Delta * grade;
  }
  return p;
}

CouplingProfile integrable_profile(std::vector<double> A, double constant) {
  if (A.empty()) throw std::invalid_argument("integrable_profile: empty A");
  CouplingProfile p;
  p.kind = ProfileKind::Integrable;
  p.Delta.resize(A.size());
  for (std::size_t j = 0; j < A.size(); ++j) {
    const double d2 = A[j] * A[j] + constant;
    if (d2 < 0.0)
      throw std::invalid_argument("integrable_profile: A_j^2 + const negative");
    p.Delta[j] = std::sqrt(d2);
  }
  p.A = std::move(A);
  return p;
}

CouplingProfile explicit_profile(std::vector<double> A, std::vector<double> Delta) {
  CouplingProfile p{ProfileKind::Explicit, std::move(A), std::move(Delta)};
  check_profile(p);
  return p;
}

SectorBasis build_sector_basis(int N, int M, int ed_cap) {
  if (N < 1 || M < 0 || M > N + 1)
    throw std::invalid_argument("build_sector_basis: require 0 <= M <= N+1");
  if (N > ed_cap)
    throw CapacityError("build_sector_basis: N=" + std::to_string(N) +
                        " exceeds ED cap " + std::to_string(ed_cap));
  const int spins = N + 1;
  const std::uint32_t dim = 1u << spins;
  SectorBasis basis;
  basis.N = N;
  basis.M = M;
  basis.index.assign(dim, -1);
  const int ups = spins - M;  // set bits = up spins
  for (std::uint32_t cfg = 0; cfg < dim; ++cfg) {
    if (std::popcount(cfg) != ups) continue;
    basis.index[cfg] = static_cast<std::int32_t>(basis.states.size());
    basis.states.push_back(cfg);
  }
  return basis;
}

Eigen::MatrixXd build_hamiltonian(const CouplingProfile& profile, double B,
                                  const SectorBasis& basis) {
  check_profile(profile);
  if (static_cast<int>(profile.A.size()) != basis.N)
    throw std::invalid_argument("build_hamiltonian: profile length != basis N");
  const int dim = static_cast<int>(basis.states.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const std::uint32_t cfg = basis.states[i];
    const double sz0 = sz_of_bit(cfg, 0);
    double diag = B * sz0;
    for (int j = 1; j <= basis.N; ++j)
      diag += 2.0 * profile.Delta[j - 1] * sz0 * sz_of_bit(cfg, j);
    h(i, i) = diag;
    // 2 A_j (s0x sjx + s0y sjy) = A_j (s0+ sj- + s0- sj+): central <-> bath-j
    // flip-flop when the two bits differ; stays inside the sector.
    for (int j = 1; j <= basis.N; ++j) {
      if (((cfg >> 0) & 1u) == ((cfg >> j) & 1u)) continue;
      const std::uint32_t flipped = cfg ^ 1u ^ (1u << j);
      h(basis.index[flipped], i) += profile.A[j - 1];
    }
  }
  return h;
}

SectorSpectrum diagonalize(const Eigen::MatrixXd& h) {
  if (h.rows() != h.cols()) throw std::invalid_argument("diagonalize: non-square input");
  const double asym = (h - h.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12)
    throw std::invalid_argument("diagonalize: input asymmetry " + std::to_string(asym));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("diagonalize: eigensolver failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

FullState initial_state(int N, double theta, int ed_cap) {
  if (N < 1) throw std::invalid_argument("initial_state: N must be >= 1");
  if (N > ed_cap)
    throw CapacityError("initial_state: N exceeds ED cap " + std::to_string(ed_cap));
  const double up = std::sin(theta / 2);
  const double down = std::cos(theta / 2);
  FullState state;
  state.N = N;
  state.sector.resize(N + 2);
  for (int M = 0; M <= N + 1; ++M) {
    const SectorBasis basis = build_sector_basis(N, M, ed_cap);
    Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(basis.states.size());
    bool any = false;
    for (std::size_t i = 0; i < basis.states.size(); ++i) {
      const std::uint32_t cfg = basis.states[i];
      if (!(cfg & 1u)) continue;  // central spin fixed up
      double a = 1.0;
      for (int j = 1; j <= N; ++j) a *= ((cfg >> j) & 1u) ? up : down;
      if (a != 0.0) {
        amp[static_cast<Eigen::Index>(i)] = a;
        any = true;
      }
    }
    if (any) state.sector[M] = std::move(amp);
  }
  return state;
}

double state_norm(const FullState& s) {
  double n2 = 0.0;
  for (const auto& v : s.sector)
    if (v.size() > 0) n2 += v.squaredNorm();
  return std::sqrt(n2);
}

// ---- SpectrumCache ---------------------------------------------------------

bool SpectrumCache::Key::operator<(const Key& o) const {
  if (N != o.N) return N < o.N;
  if (M != o.M) return M < o.M;
  if (B != o.B) return B < o.B;
  if (A != o.A) return A < o.A;
  return Delta < o.Delta;
}

std::shared_ptr<const SectorSpectrum> SpectrumCache::find(const Key& key) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : it->second;
}

void SpectrumCache::insert(const Key& key, std::shared_ptr<const SectorSpectrum> spectrum) {
  std::lock_guard lock(mutex_);
  entries_.emplace(key, std::move(spectrum));
}

std::size_t SpectrumCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

// ---- EdEngine --------------------------------------------------------------

EdEngine::EdEngine(CouplingProfile profile, double B, int ed_cap, SpectrumCache* cache)
    : profile_(std::move(profile)), field_(B), ed_cap_(ed_cap), shared_cache_(cache) {
  check_profile(profile_);
  n_ = static_cast<int>(profile_.A.size());
  if (n_ > ed_cap_)
    throw CapacityError("EdEngine: N=" + std::to_string(n_) + " exceeds ED cap " +
                        std::to_string(ed_cap_));
  local_.resize(n_ + 2);
  bases_.resize(n_ + 2);
}

const SectorBasis& EdEngine::basis(int M) const {
  if (M < 0 || M > n_ + 1) throw std::invalid_argument("EdEngine::basis: bad sector");
  std::lock_guard lock(mutex_);
  if (bases_[M].states.empty()) bases_[M] = build_sector_basis(n_, M, ed_cap_);
  return bases_[M];
}

std::shared_ptr<const SectorSpectrum> EdEngine::spectrum(int M) const {
  {
    std::lock_guard lock(mutex_);
    if (local_[M]) return local_[M];
  }
  SpectrumCache::Key key{n_, M, field_, profile_.A, profile_.Delta};
  std::shared_ptr<const SectorSpectrum> spec;
  if (shared_cache_) spec = shared_cache_->find(key);
  if (!spec) {
    spec = std::make_shared<SectorSpectrum>(
        diagonalize(build_hamiltonian(profile_, field_, basis(M))));
    if (shared_cache_) shared_cache_->insert(key, spec);
  }
  std::lock_guard lock(mutex_);
  local_[M] = spec;
  return spec;
}

FullState EdEngine::initial_state(double theta) const {
  return cspin::initial_state(n_, theta, ed_cap_);
}

EdEngine::Evolver EdEngine::evolver(const FullState& state) const {
  if (state.N != n_) throw std::invalid_argument("EdEngine: state has wrong bath size");
  Evolver ev;
  ev.engine_ = this;
  ev.coeffs.resize(n_ + 2);
  for (int M = 0; M <= n_ + 1; ++M) {
    if (state.sector[M].size() == 0) continue;
    ev.coeffs[M] = spectrum(M)->vectors.adjoint() * state.sector[M];
  }
  return ev;
}

FullState EdEngine::Evolver::at(double t) const {
  FullState out;
  out.N = engine_->n_;
  out.sector.resize(engine_->n_ + 2);
  for (int M = 0; M <= engine_->n_ + 1; ++M) {
    if (coeffs[M].size() == 0) continue;
    const auto spec = engine_->spectrum(M);
    const Eigen::ArrayXcd phases =
        (-kI * t * spec->values.array().cast<std::complex<double>>()).exp();
    out.sector[M] = spec->vectors * (phases * coeffs[M].array()).matrix();
  }
  return out;
}

FullState EdEngine::evolve(const FullState& state, double t) const {
  return evolver(state).at(t);
}

double EdEngine::measure_sz0(const FullState& state) const {
  double acc = 0.0;
  for (int M = 0; M <= n_ + 1; ++M) {
    const auto& amp = state.sector[M];
    if (amp.size() == 0) continue;
    const SectorBasis& b = basis(M);
    for (Eigen::Index i = 0; i < amp.size(); ++i)
      acc += sz_of_bit(b.states[static_cast<std::size_t>(i)], 0) * std::norm(amp[i]);
  }
  return acc;
}

double EdEngine::measure_pbath(const FullState& state) const {
  // <s0, n | psi> accumulated per central-spin value and Dicke index n;
  // each (s0, n) pair lives entirely inside one sector.
  double p = 0.0;
  for (int M = 0; M <= n_ + 1; ++M) {
    const auto& amp = state.sector[M];
    if (amp.size() == 0) continue;
    const SectorBasis& b = basis(M);
    std::complex<double> overlap[2] = {0.0, 0.0};
    int nup[2] = {-1, -1};
    for (Eigen::Index i = 0; i < amp.size(); ++i) {
      const std::uint32_t cfg = b.states[static_cast<std::size_t>(i)];
      const int s = static_cast<int>(cfg & 1u);
      const int n = std::popcount(cfg >> 1);
      nup[s] = n;  // fixed within the sector for given s
      overlap[s] += amp[i];
    }
    for (int s = 0; s < 2; ++s) {
      if (nup[s] < 0) continue;
      const double norm2 = std::exp(-log_binomial(n_, nup[s]));
      p += std::norm(overlap[s]) * norm2;
    }
  }
  return p;
}

QubitState EdEngine::measure_partial_trace(const FullState& state) const {
  // rho_{s s'} = sum_bath psi(s, bath) conj(psi(s', bath)). Flatten into the
  // full 2^(N+1) vector once; the cap keeps this small.
  const std::size_t dim = std::size_t{1} << (n_ + 1);
  std::vector<std::complex<double>> full(dim, 0.0);
  for (int M = 0; M <= n_ + 1; ++M) {
    const auto& amp = state.sector[M];
    if (amp.size() == 0) continue;
    const SectorBasis& b = basis(M);
    for (Eigen::Index i = 0; i < amp.size(); ++i)
      full[b.states[static_cast<std::size_t>(i)]] = amp[i];
  }
  QubitState rho;
  rho.a = 0.0;
  rho.b = 0.0;
  for (std::size_t bath = 0; bath < dim / 2; ++bath) {
    const std::complex<double> up = full[(bath << 1) | 1u];
    const std::complex<double> down = full[bath << 1];
    rho.a += std::norm(up);
    rho.b += up * std::conj(down);
  }
  return rho;
}

double EdEngine::measure_sz_total(const FullState& state) const {
  double acc = 0.0;
  for (int M = 0; M <= n_ + 1; ++M) {
    const auto& amp = state.sector[M];
    if (amp.size() == 0) continue;
    acc += amp.squaredNorm() * (0.5 * (n_ + 1) - M);
  }
  return acc;
}

double EdEngine::measure_energy(const FullState& state) const {
  double acc = 0.0;
  for (int M = 0; M <= n_ + 1; ++M) {
    const auto& amp = state.sector[M];
    if (amp.size() == 0) continue;
    const auto spec = spectrum(M);
    const Eigen::VectorXcd c = spec->vectors.adjoint() * amp;
    for (Eigen::Index k = 0; k < c.size(); ++k)
      acc += spec->values[k] * std::norm(c[k]);
  }
  return acc;
}

ConservationReport EdEngine::conserved_checks(
    const std::vector<FullState>& trajectory) const {
  if (trajectory.empty()) throw std::invalid_argument("conserved_checks: empty trajectory");
  ConservationReport report;
  const double sz0 = measure_sz_total(trajectory.front());
  const double e0 = measure_energy(trajectory.front());
  for (const FullState& s : trajectory) {
    report.max_sz_drift = std::max(report.max_sz_drift, std::abs(measure_sz_total(s) - sz0));
    report.max_energy_drift = std::max(report.max_energy_drift, std::abs(measure_energy(s) - e0));
    const double nerr = std::abs(state_norm(s) - 1.0);
    report.max_norm_error = std::max(report.max_norm_error, nerr);
    if (nerr > 1e-6) report.norm_violation = true;
  }
  return report;
}

}  // namespace cspin
