#include "lrtherm/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace lrtherm::lattice {

Lattice::Lattice(int dimension, int extent) : dim_(dimension), extent_(extent) {
  if (dimension != 1 && dimension != 2)
    throw validation_error("lattice dimension must be 1 or 2, got " + std::to_string(dimension));
  if (extent < 2)
    throw validation_error("lattice extent must be >= 2, got " + std::to_string(extent));
  n_ = (dim_ == 1) ? extent_ : extent_ * extent_;
}

void Lattice::check_site(int i) const {
  if (i < 0 || i >= n_)
    throw validation_error("site index " + std::to_string(i) + " out of range [0, " +
                           std::to_string(n_) + ")");
}

Coord Lattice::coord(int site) const {
  check_site(site);
  if (dim_ == 1) return {site, 0};
  return {site / extent_, site % extent_};
}

int Lattice::site(Coord c) const {
  if (!contains(c))
    throw validation_error("coordinate (" + std::to_string(c.x) + ", " + std::to_string(c.y) +
                           ") outside lattice");
  return dim_ == 1 ? c.x : c.x * extent_ + c.y;
}

bool Lattice::contains(Coord c) const {
  if (c.x < 0 || c.x >= extent_) return false;
  if (dim_ == 1) return c.y == 0;
  return c.y >= 0 && c.y < extent_;
}

int Lattice::manhattan_distance(int i, int j) const {
  check_site(i);
  check_site(j);
  if (dim_ == 1) return std::abs(i - j);
  const int dx = std::abs(i / extent_ - j / extent_);
  const int dy = std::abs(i % extent_ - j % extent_);
  return dx + dy;
}

double Lattice::distance(int i, int j, Metric metric) const {
  if (metric == Metric::manhattan) return static_cast<double>(manhattan_distance(i, j));
  check_site(i);
  check_site(j);
  if (dim_ == 1) return static_cast<double>(std::abs(i - j));
  const double dx = i / extent_ - j / extent_;
  const double dy = i % extent_ - j % extent_;
  return std::sqrt(dx * dx + dy * dy);
}

Bipartition half_bipartition(const Lattice& lat) {
  if (lat.extent() % 2 != 0)
    throw validation_error("half bipartition requires even extent, got " +
                           std::to_string(lat.extent()));
  const int n = lat.total_sites();
  Bipartition bip;
  bip.a.reserve(n / 2);
  bip.b.reserve(n - n / 2);
  for (int i = 0; i < n / 2; ++i) bip.a.push_back(i);
  for (int i = n / 2; i < n; ++i) bip.b.push_back(i);
  return bip;
}

Bipartition make_bipartition(const Lattice& lat, std::vector<int> subset_a) {
  const int n = lat.total_sites();
  std::sort(subset_a.begin(), subset_a.end());
  if (std::adjacent_find(subset_a.begin(), subset_a.end()) != subset_a.end())
    throw validation_error("bipartition subset contains duplicate sites");
  if (!subset_a.empty() && (subset_a.front() < 0 || subset_a.back() >= n))
    throw validation_error("bipartition subset contains out-of-range sites");
  Bipartition bip;
  bip.a = std::move(subset_a);
  bip.b.reserve(n - bip.a.size());
  std::size_t pos = 0;
  for (int i = 0; i < n; ++i) {
    if (pos < bip.a.size() && bip.a[pos] == i) {
      ++pos;
    } else {
      bip.b.push_back(i);
    }
  }
  return bip;
}

namespace {

void check_partition(const Lattice& lat, const Bipartition& bip) {
  if (bip.a.empty() || bip.b.empty())
    throw validation_error("bipartition must have nonempty A and B");
  if (bip.a.size() + bip.b.size() != static_cast<std::size_t>(lat.total_sites()))
    throw validation_error("bipartition does not cover the lattice");
  // Disjointness: both sides sorted, so a single merge pass suffices.
  std::size_t ia = 0, ib = 0;
  int prev = -1;
  while (ia < bip.a.size() || ib < bip.b.size()) {
    int next;
    if (ib == bip.b.size() || (ia < bip.a.size() && bip.a[ia] < bip.b[ib])) {
      next = bip.a[ia++];
    } else {
      next = bip.b[ib++];
    }
    if (next == prev) throw validation_error("bipartition subsets overlap at site " +
                                             std::to_string(next));
    prev = next;
  }
}

}  // namespace

std::vector<int> boundary_set(const Lattice& lat, const Bipartition& bip) {
  check_partition(lat, bip);
  std::vector<char> in_b(lat.total_sites(), 0);
  for (int j : bip.b) in_b[j] = 1;
  std::vector<int> boundary;
  for (int i : bip.a) {
    // d(i, B) == 1 iff a nearest neighbour of i lies in B.
    const Coord c = lat.coord(i);
    const Coord nbrs[4] = {{c.x - 1, c.y}, {c.x + 1, c.y}, {c.x, c.y - 1}, {c.x, c.y + 1}};
    for (const Coord& nb : nbrs) {
      if (lat.contains(nb) && in_b[lat.site(nb)]) {
        boundary.push_back(i);
        break;
      }
    }
  }
  return boundary;
}

int boundary_size(const Lattice& lat, const Bipartition& bip) {
  return static_cast<int>(boundary_set(lat, bip).size());
}

double boundary_double_sum_serial(const Lattice& lat, const Bipartition& bip, double exponent) {
  check_partition(lat, bip);
  if (!(exponent > 0.0)) throw validation_error("boundary double sum requires exponent > 0");
  double total = 0.0;
  for (int i : bip.a) {
    for (int j : bip.b) {
      const int d = lat.manhattan_distance(i, j);
      if (d == 0)
        throw validation_error("bipartition subsets overlap at site " + std::to_string(i));
      total += std::pow(static_cast<double>(d), -exponent);
    }
  }
  return total;
}

double boundary_double_sum(const Lattice& lat, const Bipartition& bip, double exponent) {
  check_partition(lat, bip);
  if (!(exponent > 0.0)) throw validation_error("boundary double sum requires exponent > 0");
  const std::ptrdiff_t na = static_cast<std::ptrdiff_t>(bip.a.size());
  std::vector<double> row_sum(na, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < na; ++r) {
    const int i = bip.a[r];
    double s = 0.0;
    for (int j : bip.b) {
      const int d = lat.manhattan_distance(i, j);
      if (d == 0) {
        s = -1.0;  // flag; cannot throw inside the parallel region
        break;
      }
      s += std::pow(static_cast<double>(d), -exponent);
    }
    row_sum[r] = s;
  }
  // Rows are combined in a fixed order, so the value does not depend on the
  // worker count or schedule.
  double total = 0.0;
  for (std::ptrdiff_t r = 0; r < na; ++r) {
    if (row_sum[r] < 0.0)
      throw validation_error("bipartition subsets overlap at site " + std::to_string(bip.a[r]));
    total += row_sum[r];
  }
  return total;
}

}  // namespace lrtherm::lattice
