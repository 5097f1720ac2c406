#include "lrtherm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "lrtherm/ed.hpp"
#include "lrtherm/errors.hpp"

namespace lrtherm::bounds {

void BoundParams::validate() const {
  if (!(g > 0.0)) throw validation_error("bound parameter g must be positive");
  if (k < 2) throw validation_error("locality k must be an integer >= 2");
  if (d0 < 2) throw validation_error("local dimension d0 must be >= 2");
  if (!(c_const >= 0.0)) throw validation_error("clustering constant C must be nonnegative");
  if (!(alpha > 0.0)) throw validation_error("alpha must be positive");
  if (!(beta >= 0.0)) throw validation_error("beta must be nonnegative");
}

UFactor u_factor(const lattice::Lattice& lat, double alpha, int site, UVariant variant) {
  if (!(alpha > 0.0)) throw validation_error("u factor requires alpha > 0");
  double sum = 0.0;
  for (int j = 0; j < lat.total_sites(); ++j)
    sum += std::pow(1.0 + lat.manhattan_distance(site, j), -alpha);
  if (variant == UVariant::lemma) sum *= std::pow(2.0, alpha);
  return {sum, alpha > lat.dimension()};
}

UFactor u_factor_max(const lattice::Lattice& lat, double alpha, UVariant variant) {
  UFactor best{0.0, alpha > lat.dimension()};
  for (int i = 0; i < lat.total_sites(); ++i)
    best.value = std::max(best.value, u_factor(lat, alpha, i, variant).value);
  return best;
}

double lambert_w(double x) {
  if (!(x > 0.0)) throw validation_error("lambert_w implemented for x > 0 only");
  double w = std::log1p(x);
  for (int iter = 0; iter < 100; ++iter) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (std::abs(f) <= 1e-14 * std::max(x, 1.0)) return w;
    w -= f / (ew * (1.0 + w));
  }
  throw numerical_error("lambert_w did not converge for x = " + std::to_string(x));
}

BetaC beta_c(double u, double g, int k) {
  if (!(u >= 1.0))
    throw validation_error("u must be >= 1 (it contains the d = 0 term), got " +
                           std::to_string(u));
  if (!(g > 0.0) || k < 1) throw validation_error("beta_c requires g > 0 and k >= 1");
  BetaC out;
  out.simple = 1.0 / (8.0 * u * g * k);
  out.lambert = lambert_w(1.0 / (u * std::exp(1.0))) / (2.0 * g * k);
  if (out.lambert < out.simple)
    throw numerical_error("beta_c ordering violated: lambert " + std::to_string(out.lambert) +
                          " < simple " + std::to_string(out.simple));
  return out;
}

double clustering_rhs(const BoundParams& p, int size_x, int size_y, double distance) {
  p.validate();
  if (size_x < 1 || size_y < 1) throw validation_error("operator supports must be nonempty");
  if (!(distance >= 1.0))
    throw validation_error("clustering bound requires distance >= 1, got " +
                           std::to_string(distance));
  return p.c_const * size_x * size_y * std::exp(static_cast<double>(size_x + size_y) / p.k) /
         std::pow(distance, p.alpha);
}

AreaLawRhs area_law_rhs(const lattice::Lattice& lat, const lattice::Bipartition& bip,
                         const BoundParams& p) {
  p.validate();
  AreaLawRhs out;
  out.area_law_regime = 2.0 * p.alpha > lat.dimension() + 1;
  const double pair_sum = lattice::boundary_double_sum(lat, bip, 2.0 * p.alpha);
  out.value = p.beta * std::pow(static_cast<double>(p.d0), 2.0 * p.k) * p.g * p.c_const * pair_sum;
  return out;
}

BoundaryNormBound boundary_norm_bound_fermion(const Eigen::MatrixXd& h, const lattice::Bipartition& bip, double beta) {
  if (bip.a.size() + bip.b.size() != static_cast<std::size_t>(h.rows()))
    throw validation_error("bipartition must cover all sites of the hopping matrix");
  BoundaryNormBound out;
  out.beta = beta;
  Eigen::MatrixXd cross(bip.a.size(), bip.b.size());
  for (std::size_t p = 0; p < bip.a.size(); ++p)
    for (std::size_t q = 0; q < bip.b.size(); ++q) cross(p, q) = h(bip.a[p], bip.b[q]);
  out.norm_triangle = cross.cwiseAbs().sum();
  if (cross.cwiseAbs().maxCoeff() == 0.0) {
    out.norm_exact = 0.0;
    return out;
  }
  // Many-body spectrum of the cross bilinear is +-(singular values), so the
  // operator norm is their sum.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cross);
  out.norm_exact = svd.singularValues().sum();
  return out;
}

BoundaryNormBound boundary_norm_bound_heisenberg(const models::CouplingTable& j, const lattice::Bipartition& bip,
                            double beta) {
  const int n = j.n_sites();
  if (bip.a.size() + bip.b.size() != static_cast<std::size_t>(n))
    throw validation_error("bipartition must cover all sites of the coupling table");
  BoundaryNormBound out;
  out.beta = beta;
  models::CouplingTable cross(n);
  bool any = false;
  std::vector<char> in_a(n, 0);
  for (int s : bip.a) in_a[s] = 1;
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      if (in_a[p] == in_a[q]) continue;
      const double v = j.at(p, q);
      if (v == 0.0) continue;
      cross.set(p, q, v);
      out.norm_triangle += 0.75 * std::abs(v);  // || J S.S || = (3/4) |J|
      any = true;
    }
  if (!any) {
    out.norm_exact = 0.0;
    return out;
  }
  if (n <= ed::kMaxSpinSites) out.norm_exact = ed::spectral_norm(ed::heisenberg_spectrum(cross));
  return out;
}

namespace {

template <typename RowMax>
ProductLemmaReport product_lemma_scan(const lattice::Lattice& lat, double alpha, double g,
                                      RowMax row_max) {
  if (!(alpha > lat.dimension()))
    throw validation_error("product lemma requires alpha > D for a finite u");
  if (!(g > 0.0)) throw validation_error("product lemma requires g > 0");
  const int n = lat.total_sites();
  const double u = u_factor_max(lat, alpha, UVariant::lemma).value;
  ProductLemmaReport report;
  report.max_ratio = row_max(n, u);
  report.holds = report.max_ratio <= 1.0 + 1e-12;
  return report;
}

double lemma_row_ratio(const lattice::Lattice& lat, double alpha, double g, double u, int i) {
  const int n = lat.total_sites();
  std::vector<double> envelope(n);
  for (int j = 0; j < n; ++j)
    envelope[j] = g / std::pow(1.0 + lat.manhattan_distance(i, j), alpha);
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    double lhs = 0.0;
    for (int j = 0; j < n; ++j)
      lhs += envelope[j] * g / std::pow(1.0 + lat.manhattan_distance(j, k), alpha);
    const double rhs_scale = g * g * u / std::pow(1.0 + lat.manhattan_distance(i, k), alpha);
    worst = std::max(worst, lhs / rhs_scale);
  }
  return worst;
}

}  // namespace

ProductLemmaReport product_lemma_check_serial(const lattice::Lattice& lat, double alpha,
                                              double g) {
  return product_lemma_scan(lat, alpha, g, [&](int n, double u) {
    double worst = 0.0;
    for (int i = 0; i < n; ++i) worst = std::max(worst, lemma_row_ratio(lat, alpha, g, u, i));
    return worst;
  });
}

ProductLemmaReport product_lemma_check(const lattice::Lattice& lat, double alpha, double g) {
  return product_lemma_scan(lat, alpha, g, [&](int n, double u) {
    std::vector<double> row(n, 0.0);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) row[i] = lemma_row_ratio(lat, alpha, g, u, i);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) worst = std::max(worst, row[i]);
    return worst;
  });
}

}  // namespace lrtherm::bounds
