#include "lrtherm/negativity.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "lrtherm/errors.hpp"

namespace lrtherm::negativity {

namespace {

using Eigen::MatrixXcd;
using std::complex;

constexpr double kPhaseTol = 1e-6;
constexpr double kRhoOccupationTol = 1e-6;

MatrixXcd block_j(Eigen::Index n) {
  MatrixXcd j = MatrixXcd::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = -MatrixXcd::Identity(n, n);
  j.bottomLeftCorner(n, n) = MatrixXcd::Identity(n, n);
  return j;
}

MatrixXcd antisymmetrize(const MatrixXcd& m) { return 0.5 * (m - m.transpose().eval()); }

}  // namespace

GammaMatrix gamma_from_correlations(const Eigen::MatrixXcd& c_dag_c,
                                    const Eigen::MatrixXcd& pairing) {
  const Eigen::Index n = c_dag_c.rows();
  if (c_dag_c.cols() != n) throw validation_error("correlation block must be square");
  MatrixXcd f = pairing;
  if (f.size() == 0) f = MatrixXcd::Zero(n, n);
  if (f.rows() != n || f.cols() != n)
    throw validation_error("pairing block size does not match the correlation block");
  const double fscale = f.cwiseAbs().maxCoeff();
  if (fscale > 0.0 && (f + f.transpose()).cwiseAbs().maxCoeff() > 1e-10 * fscale)
    throw validation_error("pairing block <c c> must be antisymmetric");

  // Inverse kernel blocks: [[<c_j c_i>, -<c_j^dag c_i>], [<c_i^dag c_j>, <c_j^dag c_i^dag>]]
  MatrixXcd m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = -f;
  m.topRightCorner(n, n) = -c_dag_c.transpose();
  m.bottomLeftCorner(n, n) = c_dag_c;
  m.bottomRightCorner(n, n) = f.conjugate();

  Eigen::PartialPivLU<MatrixXcd> lu(m);
  {
    const auto& u_diag = lu.matrixLU().diagonal();
    double dmin = std::numeric_limits<double>::infinity(), dmax = 0.0;
    for (Eigen::Index k = 0; k < u_diag.size(); ++k) {
      const double v = std::abs(u_diag[k]);
      dmin = std::min(dmin, v);
      dmax = std::max(dmax, v);
    }
    if (!(dmin > 0.0) || dmax / dmin > 1e14)
      throw numerical_error(
          "assembled correlation kernel is singular (a mode occupation sits at exactly 0 or 1); "
          "use a finite inverse temperature");
  }
  GammaMatrix gamma;
  gamma.g = antisymmetrize(lu.inverse());
  return gamma;
}

Eigen::MatrixXcd partial_tr_rearrangement(int n_a, int n_b) {
  if (n_a < 0 || n_b < 0 || n_a + n_b == 0)
    throw validation_error("rearrangement matrix needs n_a, n_b >= 0 with n_a + n_b > 0");
  const int n = n_a + n_b;
  const complex<double> mi(0.0, -1.0);
  MatrixXcd t = MatrixXcd::Zero(2 * n, 2 * n);
  for (int k = 0; k < n_a; ++k) {
    t(k, n + k) = mi;      // xi'_A  <- -i xibar_A
    t(n + k, k) = mi;      // xibar'_A <- -i xi_A
  }
  for (int k = 0; k < n_b; ++k) {
    t(n_a + k, n_a + k) = 1.0;          // xi'_B  <- xi_B
    t(n + n_a + k, n + n_a + k) = 1.0;  // xibar'_B <- xibar_B
  }
  return t;
}

SsrIntermediates ssr_transform(const GammaMatrix& gamma, int n_a) {
  const Eigen::Index n = gamma.modes();
  if (gamma.g.rows() != 2 * n || gamma.g.cols() != 2 * n || n == 0)
    throw validation_error("gamma kernel must be 2n x 2n with n >= 1");
  if (n_a < 0 || n_a > n)
    throw validation_error("subsystem size n_a out of range");

  const MatrixXcd t = partial_tr_rearrangement(n_a, static_cast<int>(n) - n_a);
  SsrIntermediates out;
  out.s_prime = antisymmetrize(t * (gamma.g + block_j(n)) * t);

  const auto blk = [n](const MatrixXcd& m, int r, int c) { return m.block(r * n, c * n, n, n); };
  out.s_double.resize(2 * n, 2 * n);
  out.s_double.topLeftCorner(n, n) = blk(out.s_prime, 1, 1).adjoint();
  out.s_double.topRightCorner(n, n) = blk(out.s_prime, 0, 1).adjoint();
  out.s_double.bottomLeftCorner(n, n) = blk(out.s_prime, 1, 0).adjoint();
  out.s_double.bottomRightCorner(n, n) = blk(out.s_prime, 0, 0).adjoint();

  out.b.resize(2 * n, 2 * n);
  out.b.topLeftCorner(n, n) = blk(out.s_prime, 0, 0);
  out.b.topRightCorner(n, n) = -MatrixXcd::Identity(n, n);
  out.b.bottomLeftCorner(n, n) = MatrixXcd::Identity(n, n);
  out.b.bottomRightCorner(n, n) = blk(out.s_double, 1, 1);
  out.b = antisymmetrize(out.b);

  Eigen::PartialPivLU<MatrixXcd> b_lu(out.b);
  {
    // cheap conditioning probe on the LU diagonal
    const auto& u_diag = b_lu.matrixLU().diagonal();
    double dmin = std::numeric_limits<double>::infinity(), dmax = 0.0;
    for (Eigen::Index k = 0; k < u_diag.size(); ++k) {
      const double v = std::abs(u_diag[k]);
      dmin = std::min(dmin, v);
      dmax = std::max(dmax, v);
    }
    if (!(dmin > 0.0) || dmax / dmin > 1e14)
      throw numerical_error("degenerate partial time-reversal transform: matrix B is singular "
                            "(pivot ratio " + std::to_string(dmax / std::max(dmin, 1e-300)) + ")");
  }

  MatrixXcd left(2 * n, 2 * n), right(2 * n, 2 * n);
  left.setZero();
  right.setZero();
  left.topRightCorner(n, n) = blk(out.s_double, 0, 1);
  left.bottomLeftCorner(n, n) = blk(out.s_prime, 1, 0);
  right.topRightCorner(n, n) = blk(out.s_prime, 0, 1);
  right.bottomLeftCorner(n, n) = blk(out.s_double, 1, 0);

  MatrixXcd middle = MatrixXcd::Zero(2 * n, 2 * n);
  middle.topLeftCorner(n, n) = blk(out.s_double, 0, 0);
  middle.bottomRightCorner(n, n) = blk(out.s_prime, 1, 1);

  out.gamma_product = antisymmetrize(-left * b_lu.solve(right) + middle - block_j(n));
  return out;
}

namespace {

// Covariance matrix of rho'' assembled from the inverse of its Gaussian
// kernel, then diagonalized for the occupations <d_i^dag d_i>.
Eigen::VectorXd rho_double_prime_occupations(const MatrixXcd& gamma_product) {
  const Eigen::Index n = gamma_product.rows() / 2;
  Eigen::PartialPivLU<MatrixXcd> lu(gamma_product);
  MatrixXcd inv = lu.inverse();
  if (!inv.allFinite())
    throw numerical_error("kernel of rho'' is singular; cannot extract occupations");
  MatrixXcd cov(2 * n, 2 * n);
  cov.topLeftCorner(n, n) = inv.bottomLeftCorner(n, n);
  cov.topRightCorner(n, n) = inv.bottomRightCorner(n, n).transpose();
  cov.bottomLeftCorner(n, n) = inv.topLeftCorner(n, n).transpose();
  cov.bottomRightCorner(n, n) = MatrixXcd::Identity(n, n) + inv.topRightCorner(n, n);

  const double scale = std::max(1.0, cov.cwiseAbs().maxCoeff());
  const double herm_residual = (cov - cov.adjoint()).cwiseAbs().maxCoeff();
  if (herm_residual > 1e-8 * scale)
    throw numerical_error("rho'' covariance matrix is not Hermitian (residual " +
                          std::to_string(herm_residual) + ")");
  Eigen::SelfAdjointEigenSolver<MatrixXcd> es(0.5 * (cov + cov.adjoint()),
                                              Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw numerical_error("diagonalization of the rho'' covariance matrix failed");
  return es.eigenvalues();
}

SsrDiagnostics ssr_pipeline(const gaussian::CorrelationMatrix& cm,
                            const lattice::Bipartition& bip) {
  const Eigen::Index n = cm.c.rows();
  if (bip.a.empty() || bip.b.empty())
    throw validation_error("negativity requires nonempty A and B");
  if (bip.a.size() + bip.b.size() != static_cast<std::size_t>(n))
    throw validation_error("bipartition must cover all modes of the correlation matrix");

  // Reorder modes so subsystem A occupies the first n_a slots.
  std::vector<int> perm(bip.a);
  perm.insert(perm.end(), bip.b.begin(), bip.b.end());
  MatrixXcd cp(n, n);
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = 0; q < n; ++q) cp(p, q) = cm.c(perm[p], perm[q]);

  const GammaMatrix gamma = gamma_from_correlations(cp);
  const SsrIntermediates inter = ssr_transform(gamma, static_cast<int>(bip.a.size()));

  SsrDiagnostics diag;
  diag.occupations = rho_double_prime_occupations(inter.gamma_product);

  double occ_term = 0.0;
  for (Eigen::Index k = 0; k < diag.occupations.size(); ++k) {
    double nu = diag.occupations[k];
    if (nu < -kRhoOccupationTol || nu > 1.0 + kRhoOccupationTol)
      throw numerical_error("rho'' occupation " + std::to_string(nu) +
                            " outside [0,1] guard band");
    nu = std::clamp(nu, 0.0, 1.0);
    occ_term += std::log(std::sqrt(nu) + std::sqrt(1.0 - nu));
  }
  // The 2n eigenvalues pair up as (nu, 1-nu) and contribute symmetrically,
  // so summing all of them double-counts the n-mode sum exactly once.
  occ_term *= 0.5;

  const LogPfaffian pf_gamma = pfaffian_log(SkewMatrix::from(gamma.g, 1e-8));
  const LogPfaffian pf_b = pfaffian_log(SkewMatrix::from(inter.b, 1e-8));
  const LogPfaffian pf_gp = pfaffian_log(SkewMatrix::from(inter.gamma_product, 1e-8));
  if (!std::isfinite(pf_gamma.log_abs) || !std::isfinite(pf_b.log_abs) ||
      !std::isfinite(pf_gp.log_abs))
    throw numerical_error("vanishing Pfaffian in the negativity prefactor");

  diag.prefactor_log = pf_b.log_abs + pf_gp.log_abs - 2.0 * pf_gamma.log_abs;
  std::complex<double> phase =
      pf_b.phase * pf_gp.phase / (pf_gamma.phase * pf_gamma.phase);
  if (n % 2 != 0) phase = -phase;  // (-1)^{n^2}
  diag.phase_angle = std::arg(phase);
  if (std::abs(diag.phase_angle) > kPhaseTol)
    throw numerical_error(
        "negativity prefactor has a branch-cut residue: phase angle " +
        std::to_string(diag.phase_angle) + ", log magnitude " +
        std::to_string(diag.prefactor_log) + ", Pf phases (" +
        std::to_string(std::arg(pf_b.phase)) + ", " + std::to_string(std::arg(pf_gp.phase)) +
        ", " + std::to_string(std::arg(pf_gamma.phase)) + ")");

  diag.raw = 0.5 * diag.prefactor_log + occ_term;
  diag.value = std::max(diag.raw, 0.0);
  return diag;
}

}  // namespace

double ssr_negativity(const gaussian::CorrelationMatrix& cm, const lattice::Bipartition& bip) {
  return ssr_pipeline(cm, bip).value;
}

SsrDiagnostics ssr_negativity_detailed(const gaussian::CorrelationMatrix& cm,
                                       const lattice::Bipartition& bip) {
  return ssr_pipeline(cm, bip);
}

}  // namespace lrtherm::negativity
