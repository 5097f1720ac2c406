#pragma once

#include <vector>

#include "lrtherm/errors.hpp"

namespace lrtherm::lattice {

enum class Metric { manhattan, euclidean };

struct Coord {
  int x = 0;
  int y = 0;  // unused in 1D
};

// Open-boundary chain (dimension 1) or square lattice (dimension 2).
// Sites are indexed row-major with the first axis slowest, so the first
// extent*extent/2 sites of a square lattice form a half plane.
class Lattice {
 public:
  Lattice(int dimension, int extent);

  int dimension() const { return dim_; }
  int extent() const { return extent_; }
  int total_sites() const { return n_; }

  Coord coord(int site) const;
  int site(Coord c) const;
  bool contains(Coord c) const;

  int manhattan_distance(int i, int j) const;
  double distance(int i, int j, Metric metric = Metric::manhattan) const;

 private:
  int dim_;
  int extent_;
  int n_;
  void check_site(int i) const;
};

struct Bipartition {
  std::vector<int> a;  // sorted
  std::vector<int> b;  // sorted complement
};

// A = first half along the first axis, B = the rest. Requires even extent.
Bipartition half_bipartition(const Lattice& lat);

// General bipartition from an explicit A; validates coverage and disjointness.
Bipartition make_bipartition(const Lattice& lat, std::vector<int> subset_a);

// Sites of A at distance exactly 1 from B.
std::vector<int> boundary_set(const Lattice& lat, const Bipartition& bip);
int boundary_size(const Lattice& lat, const Bipartition& bip);

// Exact sum over all cross pairs of d(i,j)^-exponent. The parallel kernel is
// deterministic for any worker count (per-row sums combined in row order);
// the _serial variant is the reference implementation used by tests and the
// benchmark.
double boundary_double_sum(const Lattice& lat, const Bipartition& bip, double exponent);
double boundary_double_sum_serial(const Lattice& lat, const Bipartition& bip, double exponent);

}  // namespace lrtherm::lattice
