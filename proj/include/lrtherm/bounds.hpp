#pragma once

#include <Eigen/Dense>
#include <optional>

#include "lrtherm/lattice.hpp"
#include "lrtherm/models.hpp"

namespace lrtherm::bounds {

// User-supplied constants of the rigorous bounds. The O(1) clustering
// constant is an explicit input, never assumed.
struct BoundParams {
  double g = 1.0;        // coupling scale
  int k = 2;             // locality
  int d0 = 2;            // one-site Hilbert dimension
  double c_const = 1.0;  // clustering constant C
  double alpha = 1.0;
  double beta = 1.0;

  void validate() const;
};

enum class UVariant { plain, lemma };

struct UFactor {
  double value = 0.0;
  // alpha > D is needed for the infinite-lattice sum to converge; finite
  // lattices always give a finite value, so divergence is only flagged.
  bool thermo_limit_finite = true;
};

// u = sum_j (1 + d_{ij})^{-alpha} for the given site; the lemma variant
// carries the extra 2^alpha.
UFactor u_factor(const lattice::Lattice& lat, double alpha, int site, UVariant variant);
// Worst case over sites, which is what the bound checks use.
UFactor u_factor_max(const lattice::Lattice& lat, double alpha, UVariant variant);

// Lambert W on x > 0 by Newton iteration, residual |W e^W - x| <= 1e-14 x.
double lambert_w(double x);

struct BetaC {
  double simple = 0.0;   // 1 / (8 u g k)
  double lambert = 0.0;  // W(1/(u e)) / (2 g k)
};

// Threshold inverse temperature of the clustering theorem; requires u >= 1.
BetaC beta_c(double u, double g, int k);

// C |X| |Y| e^{(|X|+|Y|)/k} / d^alpha.
double clustering_rhs(const BoundParams& p, int size_x, int size_y, double distance);

struct AreaLawRhs {
  double value = 0.0;
  bool area_law_regime = true;  // 2 alpha > D + 1
};

// beta d0^{2k} g C * sum_{i in A, j in B} d_{ij}^{-2 alpha}.
AreaLawRhs area_law_rhs(const lattice::Lattice& lat, const lattice::Bipartition& bip,
                         const BoundParams& p);

struct BoundaryNormBound {
  double beta = 0.0;
  double norm_triangle = 0.0;             // sum of cross-term norms
  std::optional<double> norm_exact;       // exact boundary operator norm
  double bound() const { return 2.0 * beta * (norm_exact ? *norm_exact : norm_triangle); }
  double bound_triangle() const { return 2.0 * beta * norm_triangle; }
};

// 2 beta ||H_boundary|| for the bilinear fermion model: the exact norm is the
// sum of singular values of the cross-hopping block.
BoundaryNormBound boundary_norm_bound_fermion(const Eigen::MatrixXd& h, const lattice::Bipartition& bip, double beta);

// Same for the Heisenberg chain; exact dense norm up to the ED cap, triangle
// estimate sum (3/4) J_ij always.
BoundaryNormBound boundary_norm_bound_heisenberg(const models::CouplingTable& j, const lattice::Bipartition& bip,
                            double beta);

struct ProductLemmaReport {
  double max_ratio = 0.0;
  bool holds = false;
};

// Checks sum_j J_ij J_jk <= g^2 u / (1+d_ik)^alpha with envelope-saturating
// couplings and the lemma-variant u, over every pair (i, k). The parallel
// scan and the serial reference must agree exactly.
ProductLemmaReport product_lemma_check(const lattice::Lattice& lat, double alpha, double g);
ProductLemmaReport product_lemma_check_serial(const lattice::Lattice& lat, double alpha, double g);

}  // namespace lrtherm::bounds
