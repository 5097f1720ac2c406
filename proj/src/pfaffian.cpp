#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "lrtherm/errors.hpp"
#include "lrtherm/negativity.hpp"

namespace lrtherm::negativity {

SkewMatrix SkewMatrix::from(Eigen::MatrixXcd y, double rel_tol) {
  if (y.rows() != y.cols()) throw validation_error("skew matrix must be square");
  const double scale = y.size() == 0 ? 0.0 : y.cwiseAbs().maxCoeff();
  if (scale > 0.0) {
    const double asym = (y + y.transpose()).cwiseAbs().maxCoeff();
    if (asym > rel_tol * scale)
      throw validation_error("matrix is not antisymmetric: |Y + Y^T| = " + std::to_string(asym) +
                             " relative to scale " + std::to_string(scale));
  }
  Eigen::MatrixXcd sym = 0.5 * (y - y.transpose().eval());
  return SkewMatrix(std::move(sym));
}

namespace {

// Parlett-Reid elimination: for each even column, pivot the largest entry of
// the working column into the subdiagonal, record it, and apply the rank-2
// skew update to the trailing block. visit(pivot) is called once per step;
// a structurally zero column short-circuits with on_zero().
template <typename Visit, typename OnZero>
void parlett_reid(Eigen::MatrixXcd a, Visit visit, OnZero on_zero) {
  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    Eigen::Index pivot_row = k + 1;
    double pivot_mag = std::abs(a(pivot_row, k));
    for (Eigen::Index i = k + 2; i < n; ++i) {
      const double mag = std::abs(a(i, k));
      if (mag > pivot_mag) {
        pivot_mag = mag;
        pivot_row = i;
      }
    }
    if (pivot_mag == 0.0) {
      on_zero();
      return;
    }
    if (pivot_row != k + 1) {
      a.row(k + 1).swap(a.row(pivot_row));
      a.col(k + 1).swap(a.col(pivot_row));
      visit(std::complex<double>(-1.0, 0.0), true);
    }
    const std::complex<double> pivot = a(k, k + 1);
    visit(pivot, false);
    if (k + 2 < n) {
      const Eigen::Index m = n - (k + 2);
      // tau = row k beyond the pivot, scaled; w = column k+1 below the pivot
      Eigen::VectorXcd tau = a.row(k).segment(k + 2, m).transpose() / pivot;
      Eigen::VectorXcd w = a.col(k + 1).segment(k + 2, m);
      a.block(k + 2, k + 2, m, m).noalias() += tau * w.transpose();
      a.block(k + 2, k + 2, m, m).noalias() -= w * tau.transpose();
    }
  }
}

}  // namespace

std::complex<double> pfaffian(const SkewMatrix& y) {
  const Eigen::Index n = y.size();
  if (n % 2 != 0)
    throw validation_error("pfaffian requires even dimension, got " + std::to_string(n));
  if (n == 0) return {1.0, 0.0};
  std::complex<double> result = 1.0;
  bool zero = false;
  parlett_reid(
      y.matrix(),
      [&](std::complex<double> factor, bool) { result *= factor; },
      [&] { zero = true; });
  return zero ? std::complex<double>(0.0, 0.0) : result;
}

LogPfaffian pfaffian_log(const SkewMatrix& y) {
  const Eigen::Index n = y.size();
  if (n % 2 != 0)
    throw validation_error("pfaffian requires even dimension, got " + std::to_string(n));
  LogPfaffian out;
  if (n == 0) return out;
  bool zero = false;
  parlett_reid(
      y.matrix(),
      [&](std::complex<double> factor, bool is_swap) {
        if (is_swap) {
          out.phase = -out.phase;
        } else {
          const double mag = std::abs(factor);
          out.log_abs += std::log(mag);
          out.phase *= factor / mag;
        }
      },
      [&] { zero = true; });
  if (zero) {
    out.log_abs = -std::numeric_limits<double>::infinity();
    out.phase = 1.0;
  }
  return out;
}

}  // namespace lrtherm::negativity
