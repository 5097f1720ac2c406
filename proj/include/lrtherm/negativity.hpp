#pragma once

#include <Eigen/Dense>
#include <complex>

#include "lrtherm/gaussian.hpp"
#include "lrtherm/lattice.hpp"

namespace lrtherm::negativity {

// Validated antisymmetric complex matrix. Construction symmetrizes away
// round-off, Y <- (Y - Y^T)/2, and rejects anything beyond the tolerance.
class SkewMatrix {
 public:
  static SkewMatrix from(Eigen::MatrixXcd y, double rel_tol = 1e-12);
  const Eigen::MatrixXcd& matrix() const { return m_; }
  Eigen::Index size() const { return m_.rows(); }

 private:
  explicit SkewMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {}
  Eigen::MatrixXcd m_;
};

// Pfaffian by skew-symmetric tridiagonalization with partial pivoting
// (Parlett-Reid). Sign-exact: row/column swaps flip the sign, pivots multiply.
std::complex<double> pfaffian(const SkewMatrix& y);

// Same elimination, accumulated as log|Pf| plus a unit phase so that ratios of
// large Pfaffians never overflow. Pf == 0 is encoded as log_abs == -inf.
struct LogPfaffian {
  double log_abs = 0.0;
  std::complex<double> phase = 1.0;
};
LogPfaffian pfaffian_log(const SkewMatrix& y);

// Skew-symmetric Gaussian kernel of a fermionic density operator.
struct GammaMatrix {
  Eigen::MatrixXcd g;  // 2n x 2n
  Eigen::Index modes() const { return g.rows() / 2; }
};

// Inverts the block matrix assembled from <c^dag c> and the pairing <cc>
// correlators. Number-conserving states pass an empty pairing block.
GammaMatrix gamma_from_correlations(const Eigen::MatrixXcd& c_dag_c,
                                    const Eigen::MatrixXcd& pairing = Eigen::MatrixXcd());

// The ordered-variable rearrangement matrix of the partial time reversal,
// with A as the first n_a modes.
Eigen::MatrixXcd partial_tr_rearrangement(int n_a, int n_b);

struct SsrIntermediates {
  Eigen::MatrixXcd s_prime;        // T (Gamma + J) T
  Eigen::MatrixXcd s_double;       // block-conjugate of s_prime
  Eigen::MatrixXcd b;              // pairing of rho^R_A with its adjoint
  Eigen::MatrixXcd gamma_product;  // kernel of (rho^R_A)^dag rho^R_A
};

SsrIntermediates ssr_transform(const GammaMatrix& gamma, int n_a);

struct SsrDiagnostics {
  double value = 0.0;           // clamped at 0
  double raw = 0.0;             // before the clamp
  double prefactor_log = 0.0;   // log of the Pfaffian-ratio magnitude
  double phase_angle = 0.0;     // residual phase of the log argument
  Eigen::VectorXd occupations;  // eigenvalues of the rho'' covariance matrix
};

// Logarithmic negativity of the Gaussian thermal state across the bipartition,
// computed from the Pfaffian ratio and the occupations of rho''.
double ssr_negativity(const gaussian::CorrelationMatrix& cm, const lattice::Bipartition& bip);
SsrDiagnostics ssr_negativity_detailed(const gaussian::CorrelationMatrix& cm,
                                       const lattice::Bipartition& bip);

}  // namespace lrtherm::negativity
