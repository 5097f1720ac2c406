#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "lrtherm/lattice.hpp"
#include "lrtherm/models.hpp"

namespace lrtherm::ed {

// Dense-solver caps. Everything here is exact and dense by design; these caps
// keep the oracles honest and the memory bounded.
inline constexpr int kMaxSpinSites = 14;
inline constexpr int kMaxTfdSites = 10;
inline constexpr int kMaxFockModes = 8;
inline constexpr int kMaxReversalModes = 6;

// ---------------------------------------------------------------------------
// Spin-1/2 chains. Basis: site j <-> bit j, bit set = spin up.
// ---------------------------------------------------------------------------

// Full 2^N matrix of H = sum_{i<j} J_ij S_i . S_j (real symmetric).
Eigen::MatrixXd heisenberg_dense(const models::CouplingTable& j);

struct Sector {
  std::vector<int> states;  // basis indices with fixed magnetization
  Eigen::VectorXd evals;
  Eigen::MatrixXd evecs;    // columns are eigenvectors within the sector
};

struct SpinSpectrum {
  int n_sites = 0;
  std::vector<Sector> sectors;
  double e_min = 0.0;
};

// Eigendecomposition blocked by total S^z (the Heisenberg Hamiltonian
// conserves magnetization, which tests verify explicitly).
SpinSpectrum heisenberg_spectrum(const models::CouplingTable& j);

// Unblocked spectrum of an arbitrary real symmetric many-body matrix.
SpinSpectrum spectrum_dense(const Eigen::MatrixXd& h, int n_sites);

// Gibbs weights exp(-beta(E - E_min)) / Z over the whole spectrum.
std::vector<Eigen::VectorXd> gibbs_weights(const SpinSpectrum& sp, double beta);

// Dense density matrix assembled sector by sector.
Eigen::MatrixXd gibbs_dense(const SpinSpectrum& sp, double beta);

// Generic route: eigendecompose h and exponentiate.
Eigen::MatrixXd gibbs_state(const Eigen::MatrixXd& h, double beta);

// Thermal entropy -sum w log w straight from the weights.
double thermal_entropy(const SpinSpectrum& sp, double beta);

// Largest |eigenvalue| across sectors: the operator norm.
double spectral_norm(const SpinSpectrum& sp);

// Partial trace over the complement of `keep` (qubit tensor structure).
Eigen::MatrixXd partial_trace(const Eigen::MatrixXd& rho, int n_sites,
                              const std::vector<int>& keep);

// Von Neumann entropy (nats) of a density matrix.
double vn_entropy(const Eigen::MatrixXd& rho);

// I(A:B) from dense partial traces of rho.
double mutual_information_ed(const Eigen::MatrixXd& rho, int n_sites,
                             const lattice::Bipartition& bip);

// Same quantity for a Gibbs state, using the spectrum for S_AB.
double mutual_information_gibbs(const SpinSpectrum& sp, double beta,
                                const lattice::Bipartition& bip);

// Entanglement entropy of the thermofield double across (A_L A_R | B_L B_R).
double tfd_entanglement_entropy(const SpinSpectrum& sp, double beta,
                                const lattice::Bipartition& bip);

// ---------------------------------------------------------------------------
// Local operators and correlation functions
// ---------------------------------------------------------------------------

struct LocalOperator {
  std::vector<int> support;  // sorted site list
  Eigen::MatrixXd mat;       // 2^{|support|} square block
};

LocalOperator spin_x(int site);
LocalOperator spin_z(int site);
LocalOperator spin_dot(int i, int j);                 // S_i . S_j
LocalOperator pair_yy(int i, int j);                  // S^y_i S^y_j (real)

double expectation(const Eigen::MatrixXd& rho, int n_sites, const LocalOperator& op);

// Connected correlator tr(rho O_X O_Y) - tr(rho O_X) tr(rho O_Y); supports
// must be disjoint.
double correlation_function_ed(const Eigen::MatrixXd& rho, int n_sites, const LocalOperator& ox,
                               const LocalOperator& oy);

// Connected <S_i . S_j> as the sum of the three component correlators.
double spin_dot_connected(const Eigen::MatrixXd& rho, int n_sites, int i, int j);

// ---------------------------------------------------------------------------
// Fermions in the occupation basis. Mode j <-> bit j, with
// |n> = (c_0^dag)^{n_0} (c_1^dag)^{n_1} ... |0>.
// ---------------------------------------------------------------------------

// Many-body matrix of sum_ij h_ij c_i^dag c_j (real symmetric h).
Eigen::MatrixXd quadratic_fock_hamiltonian(const Eigen::MatrixXd& h);

// Exact thermal reference for the Gaussian machinery, N <= 8 modes.
class FockOracle {
 public:
  FockOracle(const Eigen::MatrixXd& h, double beta);

  int n_modes() const { return n_; }
  const Eigen::MatrixXd& rho() const { return rho_; }
  double occupation(int i) const;
  double correlation(int i, int j) const;  // <c_i^dag c_j> (real here)
  double subsystem_entropy(const std::vector<int>& subset) const;
  double mutual_information(const lattice::Bipartition& bip) const;

 private:
  int n_;
  Eigen::MatrixXd rho_;
};

// Reduced density matrix on `keep` modes, with the fermionic reordering signs
// applied before tracing out the tail.
Eigen::MatrixXd fermion_partial_trace(const Eigen::MatrixXd& rho, int n_modes,
                                      const std::vector<int>& keep);

// Dense partial time reversal on subsystem A, built by expanding the
// coherent-state kernel with the Grassmann engine. The (n, m) -> phase table
// is rho-independent, so one instance can transform many states.
class PartialTimeReversal {
 public:
  PartialTimeReversal(int n_modes, std::vector<int> subset_a);

  Eigen::MatrixXcd apply(const Eigen::MatrixXcd& rho) const;
  double log_trace_norm(const Eigen::MatrixXcd& rho) const;

 private:
  int n_;
  std::uint32_t mask_a_;
  std::vector<std::complex<double>> phase_;  // indexed by (n << n_) | m
};

double trace_norm(const Eigen::MatrixXcd& m);

}  // namespace lrtherm::ed
