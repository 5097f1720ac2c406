#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lrtherm/lattice.hpp"

namespace lrtherm::gaussian {

// Thermal two-point function <c_i^dag c_j> of a quadratic fermion system.
// Real symmetric for the real hopping matrices built here; eigenvalues are
// mode occupations and lie in (0, 1) at finite beta.
struct CorrelationMatrix {
  Eigen::MatrixXd c;
  double beta = 0.0;
};

// C = U f(eps) U^T from the full eigendecomposition h = U eps U^T with
// f(eps) = 1/(exp(beta*eps)+1).
CorrelationMatrix thermal_correlation_matrix(const Eigen::MatrixXd& h, double beta);

struct SweepPoint {
  int r = 0;            // scalar displacement label
  double distance = 0;  // metric distance used in the rescaling
  double corr_abs = 0;  // |C(origin, origin + r)|
  double scaled = 0;    // corr_abs * distance^alpha
};

// Two-point correlator sweep from `origin` over scalar steps r: site origin+r
// in 1D, the diagonal displacement (r, r) in 2D.
std::vector<SweepPoint> two_point_sweep(const lattice::Lattice& lat, const CorrelationMatrix& cm,
                                        int origin, const std::vector<int>& steps, double alpha,
                                        lattice::Metric metric = lattice::Metric::manhattan);

// Von Neumann entropy (nats) of the reduced state on `subset`, from the
// eigenvalues of the principal submatrix C[subset].
double subsystem_entropy(const CorrelationMatrix& cm, const std::vector<int>& subset);

// I(A:B) = S_A + S_B - S_AB, clamped at zero.
double mutual_information(const CorrelationMatrix& cm, const lattice::Bipartition& bip);

// Entropy contribution of one mode occupation, with the round-off guard band.
double occupation_entropy(double nu);

}  // namespace lrtherm::gaussian
