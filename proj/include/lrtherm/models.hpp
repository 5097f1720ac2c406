#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "lrtherm/lattice.hpp"

namespace lrtherm::models {

// Pair-amplitude law: a fixed value, or a uniform draw from [lo, hi] attached
// to the unordered pair via the counter-based scheme in rng.hpp.
struct AmplitudeLaw {
  double lo = 0.0;
  double hi = 1.0;

  static AmplitudeLaw fixed(double v) { return {v, v}; }
  static AmplitudeLaw uniform(double lo, double hi);

  bool is_fixed() const { return lo == hi; }
  double draw(std::uint64_t seed, int i, int j) const;
};

struct CouplingSpec {
  double alpha = 1.0;           // power-law decay exponent
  AmplitudeLaw amplitude;       // t_{ij} or a_{ij} law
  std::uint64_t seed = 0;

  void validate() const;
};

// Real symmetric single-particle matrix of the long-range bilinear fermion
// chain/lattice: entry (i,j) = -t_{ij} / d_{ij}^alpha, zero diagonal.
// Distances are always Manhattan here; the metric choice elsewhere only
// affects how sweep results are rescaled.
Eigen::MatrixXd hopping_matrix(const lattice::Lattice& lat, const CouplingSpec& spec);

// Symmetric pair couplings J_{ij} = a_{ij} / d_{ij}^alpha for the long-range
// Heisenberg chain (1D only).
class CouplingTable {
 public:
  explicit CouplingTable(int n_sites);
  int n_sites() const { return n_; }
  double at(int i, int j) const;
  void set(int i, int j, double v);

 private:
  int n_;
  std::vector<double> upper_;  // packed strict upper triangle
  std::size_t index(int i, int j) const;
};

CouplingTable heisenberg_couplings(const lattice::Lattice& lat, const CouplingSpec& spec);

// Envelope saturating the long-range condition, J = g/(1+d)^alpha. Used by the
// bound checks as the worst admissible coupling set.
CouplingTable envelope_couplings(const lattice::Lattice& lat, double g, double alpha);

struct EnvelopeReport {
  bool holds = true;
  int worst_i = -1;
  int worst_j = -1;
  double worst_ratio = 0.0;  // max over pairs of J_{ij} (1+d)^alpha / g
};

// Checks J_{ij} <= g/(1+d_{ij})^alpha for every pair.
EnvelopeReport envelope_check(const lattice::Lattice& lat, const CouplingTable& table, double g,
                              double alpha);
// Same check with J_{ij} = |h_{ij}|, the norm of one hopping term.
EnvelopeReport envelope_check(const lattice::Lattice& lat, const Eigen::MatrixXd& h, double g,
                              double alpha);

}  // namespace lrtherm::models
