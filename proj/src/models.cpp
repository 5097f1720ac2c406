#include "lrtherm/models.hpp"

#include <cmath>
#include <string>

#include "lrtherm/rng.hpp"

namespace lrtherm::models {

AmplitudeLaw AmplitudeLaw::uniform(double lo, double hi) {
  if (!(lo <= hi)) throw validation_error("amplitude interval requires lo <= hi");
  return {lo, hi};
}

double AmplitudeLaw::draw(std::uint64_t seed, int i, int j) const {
  if (is_fixed()) return lo;
  return lo + (hi - lo) * rng::pair_uniform(seed, i, j);
}

void CouplingSpec::validate() const {
  if (!(alpha > 0.0)) throw validation_error("coupling exponent alpha must be positive");
  if (!(amplitude.lo <= amplitude.hi))
    throw validation_error("amplitude interval requires lo <= hi");
}

Eigen::MatrixXd hopping_matrix(const lattice::Lattice& lat, const CouplingSpec& spec) {
  spec.validate();
  const int n = lat.total_sites();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double t = spec.amplitude.draw(spec.seed, i, j);
      const double d = lat.manhattan_distance(i, j);
      const double v = -t / std::pow(d, spec.alpha);
      h(i, j) = v;
      h(j, i) = v;
    }
  }
  return h;
}

CouplingTable::CouplingTable(int n_sites) : n_(n_sites) {
  if (n_sites < 2) throw validation_error("coupling table requires at least 2 sites");
  upper_.assign(static_cast<std::size_t>(n_) * (n_ - 1) / 2, 0.0);
}

std::size_t CouplingTable::index(int i, int j) const {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= n_ || i == j)
    throw validation_error("coupling index (" + std::to_string(i) + ", " + std::to_string(j) +
                           ") out of range");
  // offset of row i in the packed strict upper triangle
  const std::size_t row = static_cast<std::size_t>(i) * (2 * n_ - i - 1) / 2;
  return row + static_cast<std::size_t>(j - i - 1);
}

double CouplingTable::at(int i, int j) const { return upper_[index(i, j)]; }
void CouplingTable::set(int i, int j, double v) { upper_[index(i, j)] = v; }

CouplingTable heisenberg_couplings(const lattice::Lattice& lat, const CouplingSpec& spec) {
  spec.validate();
  if (lat.dimension() != 1)
    throw validation_error("Heisenberg couplings are defined for 1D chains only");
  const int n = lat.total_sites();
  CouplingTable table(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double a = spec.amplitude.draw(spec.seed, i, j);
      table.set(i, j, a / std::pow(static_cast<double>(j - i), spec.alpha));
    }
  }
  return table;
}

CouplingTable envelope_couplings(const lattice::Lattice& lat, double g, double alpha) {
  if (!(g > 0.0) || !(alpha > 0.0))
    throw validation_error("envelope couplings require positive g and alpha");
  const int n = lat.total_sites();
  CouplingTable table(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      table.set(i, j, g / std::pow(1.0 + lat.manhattan_distance(i, j), alpha));
  return table;
}

namespace {

template <typename PairValue>
EnvelopeReport envelope_scan(const lattice::Lattice& lat, int n, double g, double alpha,
                             PairValue value) {
  if (!(g > 0.0)) throw validation_error("envelope check requires g > 0");
  EnvelopeReport report;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double jij = value(i, j);
      if (jij == 0.0) continue;
      const double d = lat.manhattan_distance(i, j);
      const double ratio = jij * std::pow(1.0 + d, alpha) / g;
      if (ratio > report.worst_ratio) {
        report.worst_ratio = ratio;
        report.worst_i = i;
        report.worst_j = j;
      }
    }
  }
  report.holds = report.worst_ratio <= 1.0 + 1e-12;
  return report;
}

}  // namespace

EnvelopeReport envelope_check(const lattice::Lattice& lat, const CouplingTable& table, double g,
                              double alpha) {
  return envelope_scan(lat, table.n_sites(), g, alpha,
                       [&](int i, int j) { return table.at(i, j); });
}

EnvelopeReport envelope_check(const lattice::Lattice& lat, const Eigen::MatrixXd& h, double g,
                              double alpha) {
  return envelope_scan(lat, static_cast<int>(h.rows()), g, alpha,
                       [&](int i, int j) { return std::abs(h(i, j)); });
}

}  // namespace lrtherm::models
