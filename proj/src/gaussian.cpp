#include "lrtherm/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lrtherm/errors.hpp"

namespace lrtherm::gaussian {

namespace {

constexpr double kOccupationTol = 1e-10;

double fermi_factor(double eps, double beta) {
  const double x = beta * eps;
  // Evaluate on the side that cannot overflow.
  if (x >= 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

void check_symmetric(const Eigen::MatrixXd& h) {
  if (h.rows() != h.cols()) throw validation_error("hamiltonian matrix must be square");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  const double asym = (h - h.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale)
    throw validation_error("hamiltonian matrix is not symmetric (residual " +
                           std::to_string(asym) + ")");
}

}  // namespace

double occupation_entropy(double nu) {
  if (nu < -kOccupationTol || nu > 1.0 + kOccupationTol)
    throw numerical_error("mode occupation " + std::to_string(nu) +
                          " outside [0,1] guard band");
  nu = std::clamp(nu, 0.0, 1.0);
  double s = 0.0;
  if (nu > 0.0) s -= nu * std::log(nu);
  if (nu < 1.0) s -= (1.0 - nu) * std::log(1.0 - nu);
  return s;
}

CorrelationMatrix thermal_correlation_matrix(const Eigen::MatrixXd& h, double beta) {
  check_symmetric(h);
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw validation_error("thermal state requires finite beta > 0");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success)
    throw numerical_error("eigendecomposition of the " + std::to_string(h.rows()) + "x" +
                          std::to_string(h.cols()) + " hopping matrix did not converge");
  Eigen::VectorXd f(es.eigenvalues().size());
  for (Eigen::Index k = 0; k < f.size(); ++k) f[k] = fermi_factor(es.eigenvalues()[k], beta);
  Eigen::MatrixXd c = es.eigenvectors() * f.asDiagonal() * es.eigenvectors().transpose();
  c = 0.5 * (c + c.transpose()).eval();
  return {std::move(c), beta};
}

std::vector<SweepPoint> two_point_sweep(const lattice::Lattice& lat, const CorrelationMatrix& cm,
                                        int origin, const std::vector<int>& steps, double alpha,
                                        lattice::Metric metric) {
  if (cm.c.rows() != lat.total_sites())
    throw validation_error("correlation matrix does not match the lattice size");
  const lattice::Coord oc = lat.coord(origin);
  std::vector<SweepPoint> out;
  out.reserve(steps.size());
  for (int r : steps) {
    lattice::Coord tc = oc;
    if (lat.dimension() == 1) {
      tc.x += r;
    } else {
      tc.x += r;
      tc.y += r;
    }
    if (!lat.contains(tc))
      throw validation_error("sweep displacement r=" + std::to_string(r) +
                             " leaves the lattice");
    const int target = lat.site(tc);
    const double dist = lat.distance(origin, target, metric);
    SweepPoint p;
    p.r = r;
    p.distance = dist;
    p.corr_abs = std::abs(cm.c(origin, target));
    p.scaled = p.corr_abs * std::pow(dist, alpha);
    out.push_back(p);
  }
  return out;
}

double subsystem_entropy(const CorrelationMatrix& cm, const std::vector<int>& subset) {
  if (subset.empty()) throw validation_error("subsystem entropy requires a nonempty subset");
  for (int i : subset)
    if (i < 0 || i >= cm.c.rows())
      throw validation_error("subsystem site " + std::to_string(i) + " out of range");
  Eigen::MatrixXd sub(subset.size(), subset.size());
  for (std::size_t p = 0; p < subset.size(); ++p)
    for (std::size_t q = 0; q < subset.size(); ++q) sub(p, q) = cm.c(subset[p], subset[q]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sub);
  if (es.info() != Eigen::Success)
    throw numerical_error("eigendecomposition of the restricted correlation matrix failed");
  double s = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
    s += occupation_entropy(es.eigenvalues()[k]);
  return s;
}

double mutual_information(const CorrelationMatrix& cm, const lattice::Bipartition& bip) {
  if (bip.a.empty() || bip.b.empty())
    throw validation_error("mutual information requires nonempty A and B");
  if (bip.a.size() + bip.b.size() != static_cast<std::size_t>(cm.c.rows()))
    throw validation_error("bipartition must cover all modes of the correlation matrix");
  std::vector<int> all(bip.a);
  all.insert(all.end(), bip.b.begin(), bip.b.end());
  const double s_a = subsystem_entropy(cm, bip.a);
  const double s_b = subsystem_entropy(cm, bip.b);
  const double s_ab = subsystem_entropy(cm, all);
  return std::max(s_a + s_b - s_ab, 0.0);
}

}  // namespace lrtherm::gaussian
