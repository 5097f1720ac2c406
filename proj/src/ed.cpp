#include "lrtherm/ed.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "lrtherm/errors.hpp"
#include "lrtherm/grassmann.hpp"

namespace lrtherm::ed {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kProbTol = 1e-9;

void check_spin_count(int n, int cap, const char* what) {
  if (n < 2) throw validation_error(std::string(what) + " requires at least 2 sites");
  if (n > cap)
    throw capacity_error(std::string(what) + " capped at " + std::to_string(cap) +
                         " sites, got " + std::to_string(n));
}

// Scatter the low bits of `packed` into the positions listed in `sites`.
std::uint32_t deposit_bits(std::uint32_t packed, const std::vector<int>& sites) {
  std::uint32_t out = 0;
  for (std::size_t k = 0; k < sites.size(); ++k)
    if (packed & (1u << k)) out |= 1u << sites[k];
  return out;
}

std::uint32_t gather_bits(std::uint32_t value, const std::vector<int>& sites) {
  std::uint32_t out = 0;
  for (std::size_t k = 0; k < sites.size(); ++k)
    if (value & (1u << sites[k])) out |= 1u << k;
  return out;
}

std::vector<int> complement_sites(int n_sites, const std::vector<int>& keep) {
  std::vector<char> used(n_sites, 0);
  for (int s : keep) {
    if (s < 0 || s >= n_sites)
      throw validation_error("site " + std::to_string(s) + " out of range");
    if (used[s]) throw validation_error("duplicate site " + std::to_string(s));
    used[s] = 1;
  }
  std::vector<int> rest;
  for (int s = 0; s < n_sites; ++s)
    if (!used[s]) rest.push_back(s);
  return rest;
}

// Applies sum_{i<j} J_ij S_i.S_j to basis state s, invoking emit(s', amp).
template <typename Emit>
void heisenberg_apply(const models::CouplingTable& j, std::uint32_t s, Emit emit) {
  const int n = j.n_sites();
  double diag = 0.0;
  for (int a = 0; a < n; ++a) {
    const bool ba = s & (1u << a);
    for (int b = a + 1; b < n; ++b) {
      const double jab = j.at(a, b);
      if (jab == 0.0) continue;
      const bool bb = s & (1u << b);
      diag += jab * (ba == bb ? 0.25 : -0.25);
      if (ba != bb) emit(s ^ (1u << a) ^ (1u << b), 0.5 * jab);
    }
  }
  if (diag != 0.0) emit(s, diag);
}

}  // namespace

MatrixXd heisenberg_dense(const models::CouplingTable& j) {
  check_spin_count(j.n_sites(), kMaxSpinSites, "dense Heisenberg matrix");
  const int dim = 1 << j.n_sites();
  MatrixXd h = MatrixXd::Zero(dim, dim);
  for (int s = 0; s < dim; ++s)
    heisenberg_apply(j, static_cast<std::uint32_t>(s),
                     [&](std::uint32_t t, double amp) { h(t, s) += amp; });
  return h;
}

SpinSpectrum heisenberg_spectrum(const models::CouplingTable& j) {
  check_spin_count(j.n_sites(), kMaxSpinSites, "Heisenberg spectrum");
  const int n = j.n_sites();
  const int dim = 1 << n;

  // Group basis states by magnetization; H never leaves a sector.
  std::vector<std::vector<int>> groups(n + 1);
  for (int s = 0; s < dim; ++s) groups[__builtin_popcount(static_cast<unsigned>(s))].push_back(s);
  std::vector<int> pos_in_sector(dim, -1);
  for (auto& g : groups)
    for (std::size_t p = 0; p < g.size(); ++p) pos_in_sector[g[p]] = static_cast<int>(p);

  SpinSpectrum sp;
  sp.n_sites = n;
  sp.e_min = std::numeric_limits<double>::infinity();
  for (auto& g : groups) {
    Sector sec;
    sec.states = g;
    const int d = static_cast<int>(g.size());
    MatrixXd block = MatrixXd::Zero(d, d);
    for (int q = 0; q < d; ++q)
      heisenberg_apply(j, static_cast<std::uint32_t>(g[q]), [&](std::uint32_t t, double amp) {
        block(pos_in_sector[t], q) += amp;
      });
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(block);
    if (es.info() != Eigen::Success)
      throw numerical_error("sector eigendecomposition failed at dimension " + std::to_string(d));
    sec.evals = es.eigenvalues();
    sec.evecs = es.eigenvectors();
    if (d > 0) sp.e_min = std::min(sp.e_min, sec.evals.minCoeff());
    sp.sectors.push_back(std::move(sec));
  }
  return sp;
}

SpinSpectrum spectrum_dense(const MatrixXd& h, int n_sites) {
  if (h.rows() != h.cols() || h.rows() != (1 << n_sites))
    throw validation_error("matrix dimension does not match the site count");
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(h);
  if (es.info() != Eigen::Success) throw numerical_error("dense eigendecomposition failed");
  SpinSpectrum sp;
  sp.n_sites = n_sites;
  Sector sec;
  sec.states.resize(h.rows());
  for (int s = 0; s < h.rows(); ++s) sec.states[s] = s;
  sec.evals = es.eigenvalues();
  sec.evecs = es.eigenvectors();
  sp.e_min = sec.evals.minCoeff();
  sp.sectors.push_back(std::move(sec));
  return sp;
}

std::vector<VectorXd> gibbs_weights(const SpinSpectrum& sp, double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta))
    throw validation_error("Gibbs weights require finite beta >= 0");
  std::vector<VectorXd> w;
  double z = 0.0;
  for (const auto& sec : sp.sectors) {
    VectorXd v(sec.evals.size());
    for (Eigen::Index k = 0; k < v.size(); ++k) {
      v[k] = std::exp(-beta * (sec.evals[k] - sp.e_min));
      z += v[k];
    }
    w.push_back(std::move(v));
  }
  for (auto& v : w) v /= z;
  return w;
}

MatrixXd gibbs_dense(const SpinSpectrum& sp, double beta) {
  const int dim = 1 << sp.n_sites;
  const auto w = gibbs_weights(sp, beta);
  MatrixXd rho = MatrixXd::Zero(dim, dim);
  for (std::size_t s = 0; s < sp.sectors.size(); ++s) {
    const auto& sec = sp.sectors[s];
    if (sec.states.empty()) continue;
    const MatrixXd block = sec.evecs * w[s].asDiagonal() * sec.evecs.transpose();
    for (std::size_t p = 0; p < sec.states.size(); ++p)
      for (std::size_t q = 0; q < sec.states.size(); ++q)
        rho(sec.states[p], sec.states[q]) = block(p, q);
  }
  return rho;
}

MatrixXd gibbs_state(const MatrixXd& h, double beta) {
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw validation_error("Gibbs state requires a symmetric Hamiltonian matrix");
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(h);
  if (es.info() != Eigen::Success) throw numerical_error("dense eigendecomposition failed");
  VectorXd w(es.eigenvalues().size());
  const double e0 = es.eigenvalues().minCoeff();
  for (Eigen::Index k = 0; k < w.size(); ++k) w[k] = std::exp(-beta * (es.eigenvalues()[k] - e0));
  w /= w.sum();
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().transpose();
}

double thermal_entropy(const SpinSpectrum& sp, double beta) {
  double s = 0.0;
  for (const auto& v : gibbs_weights(sp, beta))
    for (Eigen::Index k = 0; k < v.size(); ++k)
      if (v[k] > 0.0) s -= v[k] * std::log(v[k]);
  return s;
}

double spectral_norm(const SpinSpectrum& sp) {
  double norm = 0.0;
  for (const auto& sec : sp.sectors)
    for (Eigen::Index k = 0; k < sec.evals.size(); ++k)
      norm = std::max(norm, std::abs(sec.evals[k]));
  return norm;
}

MatrixXd partial_trace(const MatrixXd& rho, int n_sites, const std::vector<int>& keep) {
  if (rho.rows() != (1 << n_sites))
    throw validation_error("density matrix dimension does not match the site count");
  std::vector<int> keep_sorted = keep;
  std::sort(keep_sorted.begin(), keep_sorted.end());
  const std::vector<int> rest = complement_sites(n_sites, keep_sorted);
  const int dk = 1 << keep_sorted.size();
  const int dr = 1 << rest.size();
  std::vector<std::uint32_t> dep_keep(dk), dep_rest(dr);
  for (int a = 0; a < dk; ++a) dep_keep[a] = deposit_bits(a, keep_sorted);
  for (int b = 0; b < dr; ++b) dep_rest[b] = deposit_bits(b, rest);
  MatrixXd out = MatrixXd::Zero(dk, dk);
  for (int a = 0; a < dk; ++a)
    for (int a2 = 0; a2 < dk; ++a2) {
      double acc = 0.0;
      for (int b = 0; b < dr; ++b)
        acc += rho(dep_keep[a] | dep_rest[b], dep_keep[a2] | dep_rest[b]);
      out(a, a2) = acc;
    }
  return out;
}

double vn_entropy(const MatrixXd& rho) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(rho);
  if (es.info() != Eigen::Success) throw numerical_error("density matrix eigensolve failed");
  double s = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    double p = es.eigenvalues()[k];
    if (p < -kProbTol)
      throw numerical_error("density matrix eigenvalue " + std::to_string(p) + " below zero");
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

double mutual_information_ed(const MatrixXd& rho, int n_sites, const lattice::Bipartition& bip) {
  if (bip.a.empty() || bip.b.empty())
    throw validation_error("mutual information requires nonempty A and B");
  if (bip.a.size() + bip.b.size() != static_cast<std::size_t>(n_sites))
    throw validation_error("bipartition must cover all sites");
  const double s_a = vn_entropy(partial_trace(rho, n_sites, bip.a));
  const double s_b = vn_entropy(partial_trace(rho, n_sites, bip.b));
  const double s_ab = vn_entropy(rho);
  return std::max(s_a + s_b - s_ab, 0.0);
}

double mutual_information_gibbs(const SpinSpectrum& sp, double beta,
                                const lattice::Bipartition& bip) {
  if (bip.a.size() + bip.b.size() != static_cast<std::size_t>(sp.n_sites))
    throw validation_error("bipartition must cover all sites");
  const MatrixXd rho = gibbs_dense(sp, beta);
  const double s_a = vn_entropy(partial_trace(rho, sp.n_sites, bip.a));
  const double s_b = vn_entropy(partial_trace(rho, sp.n_sites, bip.b));
  return std::max(s_a + s_b - thermal_entropy(sp, beta), 0.0);
}

double tfd_entanglement_entropy(const SpinSpectrum& sp, double beta,
                                const lattice::Bipartition& bip) {
  check_spin_count(sp.n_sites, kMaxTfdSites, "thermofield double");
  if (bip.a.size() + bip.b.size() != static_cast<std::size_t>(sp.n_sites))
    throw validation_error("bipartition must cover all sites");
  // The doubled state is pure, so both sides of the cut carry the same
  // entropy; reduce on the smaller one.
  const std::vector<int>& small = bip.a.size() <= bip.b.size() ? bip.a : bip.b;

  const int dim = 1 << sp.n_sites;
  const auto w = gibbs_weights(sp, beta);
  MatrixXd amp = MatrixXd::Zero(dim, dim);  // <a|_L <b|_R TFD amplitudes
  for (std::size_t s = 0; s < sp.sectors.size(); ++s) {
    const auto& sec = sp.sectors[s];
    if (sec.states.empty()) continue;
    VectorXd c = w[s].cwiseSqrt();
    const MatrixXd block = sec.evecs * c.asDiagonal() * sec.evecs.transpose();
    for (std::size_t p = 0; p < sec.states.size(); ++p)
      for (std::size_t q = 0; q < sec.states.size(); ++q)
        amp(sec.states[p], sec.states[q]) = block(p, q);
  }

  const int k = static_cast<int>(small.size());
  const std::vector<int> rest = complement_sites(sp.n_sites, small);
  std::vector<std::uint32_t> comp_small(dim), comp_rest(dim);
  for (int x = 0; x < dim; ++x) {
    comp_small[x] = gather_bits(x, small);
    comp_rest[x] = gather_bits(x, rest);
  }
  const int da = 1 << k;
  const int db = 1 << rest.size();
  MatrixXd psi(da * da, db * db);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b) {
      const int row = static_cast<int>(comp_small[a]) * da + static_cast<int>(comp_small[b]);
      const int col = static_cast<int>(comp_rest[a]) * db + static_cast<int>(comp_rest[b]);
      psi(row, col) = amp(a, b);
    }
  const MatrixXd sigma = psi * psi.transpose();
  return vn_entropy(sigma);
}

// ---------------------------------------------------------------------------
// Local operators
// ---------------------------------------------------------------------------

LocalOperator spin_x(int site) {
  LocalOperator op;
  op.support = {site};
  op.mat = MatrixXd::Zero(2, 2);
  op.mat(0, 1) = 0.5;
  op.mat(1, 0) = 0.5;
  return op;
}

LocalOperator spin_z(int site) {
  LocalOperator op;
  op.support = {site};
  op.mat = MatrixXd::Zero(2, 2);
  op.mat(0, 0) = -0.5;
  op.mat(1, 1) = 0.5;
  return op;
}

LocalOperator spin_dot(int i, int j) {
  if (i == j) throw validation_error("spin_dot requires distinct sites");
  LocalOperator op;
  op.support = {std::min(i, j), std::max(i, j)};
  op.mat = MatrixXd::Zero(4, 4);
  op.mat(0, 0) = 0.25;
  op.mat(3, 3) = 0.25;
  op.mat(1, 1) = -0.25;
  op.mat(2, 2) = -0.25;
  op.mat(1, 2) = 0.5;
  op.mat(2, 1) = 0.5;
  return op;
}

LocalOperator pair_yy(int i, int j) {
  if (i == j) throw validation_error("pair_yy requires distinct sites");
  LocalOperator op;
  op.support = {std::min(i, j), std::max(i, j)};
  op.mat = MatrixXd::Zero(4, 4);
  op.mat(0, 3) = -0.25;
  op.mat(3, 0) = -0.25;
  op.mat(1, 2) = 0.25;
  op.mat(2, 1) = 0.25;
  return op;
}

namespace {

void check_support(int n_sites, const LocalOperator& op) {
  if (op.support.empty()) throw validation_error("operator support must be nonempty");
  if (!std::is_sorted(op.support.begin(), op.support.end()))
    throw validation_error("operator support must be sorted");
  for (int s : op.support)
    if (s < 0 || s >= n_sites)
      throw validation_error("operator support site " + std::to_string(s) + " out of range");
  if (op.mat.rows() != (1 << op.support.size()) || op.mat.cols() != op.mat.rows())
    throw validation_error("operator block size does not match its support");
}

// Embeds `op` into the local space of `combined` (a superset of its support).
MatrixXd embed_in(const LocalOperator& op, const std::vector<int>& combined) {
  std::vector<int> where;  // position of each support site inside `combined`
  for (int s : op.support) {
    const auto it = std::lower_bound(combined.begin(), combined.end(), s);
    where.push_back(static_cast<int>(it - combined.begin()));
  }
  const int dim = 1 << combined.size();
  MatrixXd out = MatrixXd::Zero(dim, dim);
  for (int c = 0; c < dim; ++c) {
    std::uint32_t s_in = 0;
    for (std::size_t k = 0; k < where.size(); ++k)
      if (c & (1 << where[k])) s_in |= 1u << k;
    std::uint32_t base = c;
    for (int w : where) base &= ~(1u << w);
    for (std::uint32_t s_out = 0; s_out < (1u << where.size()); ++s_out) {
      const double v = op.mat(s_out, s_in);
      if (v == 0.0) continue;
      std::uint32_t c_out = base;
      for (std::size_t k = 0; k < where.size(); ++k)
        if (s_out & (1u << k)) c_out |= 1u << where[k];
      out(c_out, c) = v;
    }
  }
  return out;
}

}  // namespace

double expectation(const MatrixXd& rho, int n_sites, const LocalOperator& op) {
  check_support(n_sites, op);
  if (rho.rows() != (1 << n_sites))
    throw validation_error("density matrix dimension does not match the site count");
  const int k = static_cast<int>(op.support.size());
  const int dloc = 1 << k;
  double acc = 0.0;
  const std::uint32_t suppmask = deposit_bits((1u << k) - 1u, op.support);
  for (int b = 0; b < rho.rows(); ++b) {
    const std::uint32_t s_b = gather_bits(b, op.support);
    const std::uint32_t base = b & ~suppmask;
    for (int s2 = 0; s2 < dloc; ++s2) {
      const double v = op.mat(s_b, s2);
      if (v == 0.0) continue;
      const std::uint32_t a = base | deposit_bits(s2, op.support);
      acc += rho(a, b) * v;
    }
  }
  return acc;
}

double correlation_function_ed(const MatrixXd& rho, int n_sites, const LocalOperator& ox,
                               const LocalOperator& oy) {
  check_support(n_sites, ox);
  check_support(n_sites, oy);
  std::vector<int> combined = ox.support;
  combined.insert(combined.end(), oy.support.begin(), oy.support.end());
  std::sort(combined.begin(), combined.end());
  if (std::adjacent_find(combined.begin(), combined.end()) != combined.end())
    throw validation_error("correlation function requires disjoint operator supports");
  LocalOperator prod;
  prod.support = combined;
  prod.mat = embed_in(ox, combined) * embed_in(oy, combined);
  const double joint = expectation(rho, n_sites, prod);
  return joint - expectation(rho, n_sites, ox) * expectation(rho, n_sites, oy);
}

double spin_dot_connected(const MatrixXd& rho, int n_sites, int i, int j) {
  double acc = correlation_function_ed(rho, n_sites, spin_x(i), spin_x(j));
  acc += correlation_function_ed(rho, n_sites, spin_z(i), spin_z(j));
  // The y term, with zero single-site expectation for real symmetric rho.
  LocalOperator yy = pair_yy(i, j);
  acc += expectation(rho, n_sites, yy);
  return acc;
}

// ---------------------------------------------------------------------------
// Fermions
// ---------------------------------------------------------------------------

MatrixXd quadratic_fock_hamiltonian(const MatrixXd& h) {
  const int n = static_cast<int>(h.rows());
  if (h.cols() != n) throw validation_error("single-particle matrix must be square");
  if (n > kMaxFockModes)
    throw capacity_error("Fock-space construction capped at " +
                         std::to_string(kMaxFockModes) + " modes, got " + std::to_string(n));
  const int dim = 1 << n;
  MatrixXd out = MatrixXd::Zero(dim, dim);
  for (int s = 0; s < dim; ++s) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) {
      if (!(s & (1 << j))) continue;
      diag += h(j, j);
      const int sj = grassmann::jw_sign(static_cast<std::uint32_t>(s), j);
      const std::uint32_t mid = static_cast<std::uint32_t>(s) & ~(1u << j);
      for (int i = 0; i < n; ++i) {
        if (i == j || (mid & (1u << i))) continue;
        if (h(i, j) == 0.0) continue;
        const int si = grassmann::jw_sign(mid, i);
        out(mid | (1u << i), s) += h(i, j) * sj * si;
      }
    }
    out(s, s) += diag;
  }
  return out;
}

FockOracle::FockOracle(const Eigen::MatrixXd& h, double beta) : n_(static_cast<int>(h.rows())) {
  if (n_ > kMaxFockModes)
    throw capacity_error("Fock oracle capped at " + std::to_string(kMaxFockModes) +
                         " modes, got " + std::to_string(n_));
  rho_ = gibbs_state(quadratic_fock_hamiltonian(h), beta);
}

double FockOracle::correlation(int i, int j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_) throw validation_error("mode index out of range");
  double acc = 0.0;
  for (int s = 0; s < rho_.rows(); ++s) {
    if (!(s & (1 << j))) continue;
    const int sj = grassmann::jw_sign(static_cast<std::uint32_t>(s), j);
    const std::uint32_t mid = static_cast<std::uint32_t>(s) & ~(1u << j);
    if (i != j && (mid & (1u << i))) continue;
    const int si = grassmann::jw_sign(mid, i);
    const std::uint32_t t = mid | (1u << i);
    acc += rho_(s, t) * sj * si;
  }
  return acc;
}

double FockOracle::occupation(int i) const { return correlation(i, i); }

double FockOracle::subsystem_entropy(const std::vector<int>& subset) const {
  return vn_entropy(fermion_partial_trace(rho_, n_, subset));
}

double FockOracle::mutual_information(const lattice::Bipartition& bip) const {
  if (bip.a.size() + bip.b.size() != static_cast<std::size_t>(n_))
    throw validation_error("bipartition must cover all modes");
  const double s_a = subsystem_entropy(bip.a);
  const double s_b = subsystem_entropy(bip.b);
  const double s_ab = vn_entropy(rho_);
  return std::max(s_a + s_b - s_ab, 0.0);
}

MatrixXd fermion_partial_trace(const MatrixXd& rho, int n_modes, const std::vector<int>& keep) {
  if (rho.rows() != (1 << n_modes))
    throw validation_error("density matrix dimension does not match the mode count");
  std::vector<int> keep_sorted = keep;
  std::sort(keep_sorted.begin(), keep_sorted.end());
  const std::vector<int> rest = complement_sites(n_modes, keep_sorted);

  // Relabel modes so the kept ones come first. A fermionic relabeling maps
  // |n> to sign(n) |n_permuted>, the sign counting the crossings among the
  // occupied modes.
  std::vector<int> newpos(n_modes);
  for (std::size_t l = 0; l < keep_sorted.size(); ++l) newpos[keep_sorted[l]] = static_cast<int>(l);
  for (std::size_t t = 0; t < rest.size(); ++t)
    newpos[rest[t]] = static_cast<int>(keep_sorted.size() + t);

  const int dim = 1 << n_modes;
  std::vector<std::uint32_t> relabeled(dim);
  std::vector<double> sign(dim);
  std::vector<int> q;  // new labels of the occupied modes, in old ascending order
  for (int s = 0; s < dim; ++s) {
    q.clear();
    std::uint32_t out = 0;
    for (int p = 0; p < n_modes; ++p) {
      if (s & (1 << p)) {
        q.push_back(newpos[p]);
        out |= 1u << newpos[p];
      }
    }
    int inversions = 0;
    for (std::size_t a = 0; a < q.size(); ++a)
      for (std::size_t b = a + 1; b < q.size(); ++b)
        if (q[a] > q[b]) ++inversions;
    relabeled[s] = out;
    sign[s] = (inversions % 2 == 0) ? 1.0 : -1.0;
  }

  const int dk = 1 << keep_sorted.size();
  MatrixXd traced = MatrixXd::Zero(dk, dk);
  for (int s = 0; s < dim; ++s)
    for (int t = 0; t < dim; ++t) {
      const std::uint32_t sr = relabeled[s];
      const std::uint32_t tr = relabeled[t];
      if ((sr >> keep_sorted.size()) != (tr >> keep_sorted.size())) continue;
      traced(sr & (dk - 1u), tr & (dk - 1u)) += sign[s] * sign[t] * rho(s, t);
    }
  return traced;
}

PartialTimeReversal::PartialTimeReversal(int n_modes, std::vector<int> subset_a) : n_(n_modes) {
  if (n_ < 1 || n_ > kMaxReversalModes)
    throw capacity_error("dense partial time reversal capped at " +
                         std::to_string(kMaxReversalModes) + " modes, got " + std::to_string(n_));
  mask_a_ = 0;
  std::sort(subset_a.begin(), subset_a.end());
  for (int s : subset_a) {
    if (s < 0 || s >= n_) throw validation_error("subsystem mode out of range");
    if (mask_a_ & (1u << s)) throw validation_error("duplicate subsystem mode");
    mask_a_ |= 1u << s;
  }

  using namespace grassmann;
  const Complex imag_unit(0.0, 1.0);
  // Generator ids per mode j: xi = j, xibar = n + j.
  //
  // Any operator has a unique kernel representation
  //   rho = int dxibar dxi |xi><xibar| w(xi, xibar),
  // because the coherent unit maps Grassmann monomials to signed basis units
  // bijectively (every component of |xi><xibar| is even in the combined
  // grading, so the kernel's position is immaterial). The reversal replaces
  // the unit by |i xibar_A, xi_B><i xi_A, xibar_B| while the kernel stays,
  // and the measure and reordering signs cancel between analysis and
  // synthesis. What survives per matrix unit is the coefficient ratio of the
  // transformed and the original coherent components.
  std::vector<CoherentParam> p_ket(n_), p_bra(n_), p_ket_new(n_), p_bra_new(n_);
  for (int j = 0; j < n_; ++j) {
    p_ket[j] = {j, 1.0};        // xi_j
    p_bra[j] = {n_ + j, 1.0};   // xibar_j
    if (mask_a_ & (1u << j)) {
      p_ket_new[j] = {n_ + j, imag_unit};  // i xibar_A
      p_bra_new[j] = {j, imag_unit};       // i xi_A
    } else {
      p_ket_new[j] = {j, 1.0};
      p_bra_new[j] = {n_ + j, 1.0};
    }
  }
  const KetPoly ket_orig = coherent_ket(n_, p_ket);
  const BraPoly bra_orig = coherent_bra(n_, p_bra);
  const KetPoly ket_new = coherent_ket(n_, p_ket_new);
  const BraPoly bra_new = coherent_bra(n_, p_bra_new);

  const auto single_term = [](const Poly& p) -> std::pair<std::uint64_t, Complex> {
    if (p.terms.size() != 1)
      throw numerical_error("coherent component is not a single monomial");
    return {p.terms.begin()->first, p.terms.begin()->second};
  };
  // Coefficient of |ket_n><bra_m| in the outer product.
  const auto entry_coeff = [&](const KetPoly& ket, const BraPoly& bra, std::uint32_t kn,
                               std::uint32_t bm) -> std::pair<std::uint64_t, Complex> {
    const auto [km, kc] = single_term(ket.comp.at(kn));
    const auto [bm_mask, bc] = single_term(bra.comp.at(bm));
    const bool cross = (__builtin_popcount(kn) % 2) && (__builtin_popcountll(bm_mask) % 2);
    Complex c = kc * (cross ? -bc : bc);
    if (km & bm_mask) throw numerical_error("overlapping coherent monomials");
    c *= static_cast<double>(reorder_sign(km, bm_mask));
    return {km | bm_mask, c};
  };

  const std::uint32_t mask_b = ((1u << n_) - 1u) & ~mask_a_;
  const int dim = 1 << n_;
  phase_.assign(static_cast<std::size_t>(dim) * dim, Complex(0.0));
  for (int n = 0; n < dim; ++n) {
    for (int m = 0; m < dim; ++m) {
      const std::uint32_t np = (static_cast<std::uint32_t>(m) & mask_a_) |
                               (static_cast<std::uint32_t>(n) & mask_b);
      const std::uint32_t mp = (static_cast<std::uint32_t>(n) & mask_a_) |
                               (static_cast<std::uint32_t>(m) & mask_b);
      const auto [orig_mask, orig_c] = entry_coeff(ket_orig, bra_orig, n, m);
      const auto [new_mask, new_c] = entry_coeff(ket_new, bra_new, np, mp);
      if (orig_mask != new_mask)
        throw numerical_error("partial time reversal: kernel monomials do not match");
      phase_[(static_cast<std::size_t>(n) << n_) | m] = new_c / orig_c;
    }
  }
}

Eigen::MatrixXcd PartialTimeReversal::apply(const Eigen::MatrixXcd& rho) const {
  const int dim = 1 << n_;
  if (rho.rows() != dim || rho.cols() != dim)
    throw validation_error("density matrix dimension does not match the mode count");
  const std::uint32_t mask_b = ((1u << n_) - 1u) & ~mask_a_;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 0; n < dim; ++n)
    for (int m = 0; m < dim; ++m) {
      const std::complex<double> ph = phase_[(static_cast<std::size_t>(n) << n_) | m];
      if (ph == std::complex<double>(0.0)) continue;
      const std::uint32_t np = (static_cast<std::uint32_t>(m) & mask_a_) |
                               (static_cast<std::uint32_t>(n) & mask_b);
      const std::uint32_t mp = (static_cast<std::uint32_t>(n) & mask_a_) |
                               (static_cast<std::uint32_t>(m) & mask_b);
      out(np, mp) += ph * rho(n, m);
    }
  return out;
}

double PartialTimeReversal::log_trace_norm(const Eigen::MatrixXcd& rho) const {
  return std::log(trace_norm(apply(rho)));
}

double trace_norm(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues().sum();
}

}  // namespace lrtherm::ed
