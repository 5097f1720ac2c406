#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "lrtherm/ed.hpp"
#include "lrtherm/errors.hpp"
#include "lrtherm/gaussian.hpp"
#include "lrtherm/lattice.hpp"
#include "lrtherm/models.hpp"
#include "lrtherm/negativity.hpp"
#include "lrtherm/rng.hpp"

using namespace lrtherm;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using lattice::Lattice;

namespace {

models::CouplingTable random_couplings(int n, double alpha, std::uint64_t seed) {
  const Lattice lat(1, n);
  models::CouplingSpec spec{alpha, models::AmplitudeLaw::uniform(0.0, 1.0), seed};
  return models::heisenberg_couplings(lat, spec);
}

MatrixXd random_hopping(int n, double alpha, std::uint64_t seed) {
  const Lattice lat(1, n);
  models::CouplingSpec spec{alpha, models::AmplitudeLaw::uniform(0.0, 1.0), seed};
  return models::hopping_matrix(lat, spec);
}

std::vector<double> sorted_eigenvalues(const ed::SpinSpectrum& sp) {
  std::vector<double> evals;
  for (const auto& sec : sp.sectors)
    for (Eigen::Index k = 0; k < sec.evals.size(); ++k) evals.push_back(sec.evals[k]);
  std::sort(evals.begin(), evals.end());
  return evals;
}

}  // namespace

TEST_CASE("two-site Heisenberg spectrum is singlet plus triplet") {
  models::CouplingTable j(2);
  j.set(0, 1, 1.0);
  const auto evals = sorted_eigenvalues(ed::heisenberg_spectrum(j));
  REQUIRE(evals.size() == 4);
  CHECK(evals[0] == doctest::Approx(-0.75));
  for (int k = 1; k < 4; ++k) CHECK(evals[k] == doctest::Approx(0.25));
}

TEST_CASE("three-site uniform chain splits into total-spin multiplets") {
  models::CouplingTable j(3);
  j.set(0, 1, 1.0);
  j.set(1, 2, 1.0);
  j.set(0, 2, 1.0);
  // H = (S_tot^2 - 3 * 3/4) / 2: eigenvalues +3/4 (S=3/2, x4), -3/4 (S=1/2, x4)
  const auto evals = sorted_eigenvalues(ed::heisenberg_spectrum(j));
  REQUIRE(evals.size() == 8);
  for (int k = 0; k < 4; ++k) CHECK(evals[k] == doctest::Approx(-0.75));
  for (int k = 4; k < 8; ++k) CHECK(evals[k] == doctest::Approx(0.75));
}

TEST_CASE("sector-blocked spectrum agrees with the dense path") {
  const auto j = random_couplings(6, 1.3, 17);
  const MatrixXd h = ed::heisenberg_dense(j);
  const auto blocked = sorted_eigenvalues(ed::heisenberg_spectrum(j));
  const auto dense = sorted_eigenvalues(ed::spectrum_dense(h, 6));
  REQUIRE(blocked.size() == dense.size());
  for (std::size_t k = 0; k < blocked.size(); ++k)
    CHECK(blocked[k] == doctest::Approx(dense[k]).epsilon(1e-10));

  const MatrixXd rho_blocked = ed::gibbs_dense(ed::heisenberg_spectrum(j), 2.0);
  const MatrixXd rho_dense = ed::gibbs_state(h, 2.0);
  CHECK((rho_blocked - rho_dense).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("gibbs state basics") {
  const auto j = random_couplings(4, 1.0, 3);
  const MatrixXd h = ed::heisenberg_dense(j);
  const MatrixXd hot = ed::gibbs_state(h, 0.0);
  CHECK((hot - MatrixXd::Identity(16, 16) / 16.0).cwiseAbs().maxCoeff() < 1e-14);

  const MatrixXd rho = ed::gibbs_state(h, 2.0);
  CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
  CHECK((rho * h - h * rho).cwiseAbs().maxCoeff() < 1e-10);

  // magnetization conservation shows up as block diagonality
  for (int s = 0; s < 16; ++s)
    for (int t = 0; t < 16; ++t)
      if (__builtin_popcount(s) != __builtin_popcount(t)) CHECK(std::abs(rho(s, t)) <= 1e-12);
}

TEST_CASE("two-site singlet weight follows the closed form") {
  models::CouplingTable j(2);
  j.set(0, 1, 1.0);
  const double beta = 2.0;
  const MatrixXd rho = ed::gibbs_dense(ed::heisenberg_spectrum(j), beta);
  Eigen::Vector4d singlet(0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0);
  const double weight = singlet.transpose() * rho * singlet;
  const double expected =
      std::exp(0.75 * beta) / (std::exp(0.75 * beta) + 3.0 * std::exp(-0.25 * beta));
  CHECK(weight == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("partial trace") {
  // product state: tracing B returns rho_A exactly
  MatrixXd rho_a(2, 2), rho_b(4, 4);
  rho_a << 0.7, 0.1, 0.1, 0.3;
  rho_b.setZero();
  rho_b.diagonal() << 0.4, 0.3, 0.2, 0.1;
  MatrixXd prod = MatrixXd::Zero(8, 8);
  for (int a = 0; a < 2; ++a)
    for (int a2 = 0; a2 < 2; ++a2)
      for (int b = 0; b < 4; ++b)
        for (int b2 = 0; b2 < 4; ++b2)
          prod(a + (b << 1), a2 + (b2 << 1)) = rho_a(a, a2) * rho_b(b, b2);
  CHECK((ed::partial_trace(prod, 3, {0}) - rho_a).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((ed::partial_trace(prod, 3, {0, 1, 2}) - prod).cwiseAbs().maxCoeff() < 1e-14);

  // Bell pair: reduced state is maximally mixed
  Eigen::Vector4d bell(1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0));
  const MatrixXd bell_rho = bell * bell.transpose();
  CHECK((ed::partial_trace(bell_rho, 2, {0}) - 0.5 * MatrixXd::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() < 1e-14);
}

TEST_CASE("mutual information limits and bounds") {
  const auto j = random_couplings(6, 1.2, 5);
  const auto sp = ed::heisenberg_spectrum(j);
  const auto bip = lattice::half_bipartition(Lattice(1, 6));

  CHECK(ed::mutual_information_gibbs(sp, 0.0, bip) <= 1e-12);

  models::CouplingTable dimer(2);
  dimer.set(0, 1, 1.0);
  const auto dimer_sp = ed::heisenberg_spectrum(dimer);
  const auto dimer_bip = lattice::half_bipartition(Lattice(1, 2));
  CHECK(ed::mutual_information_gibbs(dimer_sp, 40.0, dimer_bip) ==
        doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-9));

  for (double beta : {0.5, 2.0}) {
    const MatrixXd rho = ed::gibbs_dense(sp, beta);
    const double i_fast = ed::mutual_information_gibbs(sp, beta, bip);
    const double i_dense = ed::mutual_information_ed(rho, 6, bip);
    CHECK(i_fast == doctest::Approx(i_dense).epsilon(1e-9));
    const double s_a = ed::vn_entropy(ed::partial_trace(rho, 6, bip.a));
    const double s_b = ed::vn_entropy(ed::partial_trace(rho, 6, bip.b));
    CHECK(i_fast >= 0.0);
    CHECK(i_fast <= 2.0 * std::min(s_a, s_b) + 1e-10);
  }
}

TEST_CASE("gibbs variational inequality holds sample-wise") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const int n = 6;
    const auto j = random_couplings(n, 0.9, seed);
    const double beta = 2.0;
    const auto bip = lattice::half_bipartition(Lattice(1, n));
    const auto sp = ed::heisenberg_spectrum(j);
    const MatrixXd rho = ed::gibbs_dense(sp, beta);
    const MatrixXd rho_a = ed::partial_trace(rho, n, bip.a);
    const MatrixXd rho_b = ed::partial_trace(rho, n, bip.b);

    models::CouplingTable cross(n);
    for (int a : bip.a)
      for (int b : bip.b) cross.set(a, b, j.at(a, b));
    const MatrixXd h_boundary = ed::heisenberg_dense(cross);

    const int da = 1 << bip.a.size();
    const int db = 1 << bip.b.size();
    MatrixXd prod = MatrixXd::Zero(da * db, da * db);
    for (int a = 0; a < da; ++a)
      for (int a2 = 0; a2 < da; ++a2)
        for (int b = 0; b < db; ++b)
          for (int b2 = 0; b2 < db; ++b2)
            prod(a + (b << bip.a.size()), a2 + (b2 << bip.a.size())) =
                rho_a(a, a2) * rho_b(b, b2);

    const double lhs = ed::mutual_information_gibbs(sp, beta, bip);
    const double rhs = beta * ((prod - rho).cwiseProduct(h_boundary)).sum();
    CHECK(rhs - lhs >= -1e-9);
  }
}

TEST_CASE("thermofield double entanglement entropy") {
  const auto j = random_couplings(4, 1.0, 9);
  const auto sp = ed::heisenberg_spectrum(j);
  const auto bip = lattice::half_bipartition(Lattice(1, 4));

  // At infinite temperature the doubled state factorizes into on-site pairs
  // that never cross the cut.
  CHECK(ed::tfd_entanglement_entropy(sp, 1e-12, bip) == doctest::Approx(0.0).epsilon(1e-9));

  // single-site subsystem: dimension bound on the 4-dimensional reduced space
  const auto single = lattice::make_bipartition(Lattice(1, 4), {0});
  CHECK(ed::tfd_entanglement_entropy(sp, 2.0, single) <= 2.0 * std::log(2.0) + 1e-12);

  // 2E upper-bounds the mutual information
  for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
    const auto sample = random_couplings(6, 0.8, seed);
    const auto ssp = ed::heisenberg_spectrum(sample);
    const auto sbip = lattice::half_bipartition(Lattice(1, 6));
    const double e = ed::tfd_entanglement_entropy(ssp, 2.0, sbip);
    const double mi = ed::mutual_information_gibbs(ssp, 2.0, sbip);
    CHECK(2.0 * e >= mi - 1e-9);
  }

  // beta -> infinity: twice the ground-state entanglement entropy
  const double e_cold = ed::tfd_entanglement_entropy(sp, 60.0, bip);
  const MatrixXd h = ed::heisenberg_dense(j);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(h);
  const Eigen::VectorXd gs = es.eigenvectors().col(0);
  const MatrixXd rho_gs = gs * gs.transpose();
  const double s_gs = ed::vn_entropy(ed::partial_trace(rho_gs, 4, bip.a));
  CHECK(e_cold == doctest::Approx(2.0 * s_gs).epsilon(1e-6));
}

TEST_CASE("correlation functions") {
  const auto j = random_couplings(6, 1.1, 21);
  const auto sp = ed::heisenberg_spectrum(j);

  // infinite temperature, traceless operators
  const MatrixXd hot = ed::gibbs_dense(sp, 0.0);
  CHECK(ed::correlation_function_ed(hot, 6, ed::spin_z(0), ed::spin_z(4)) ==
        doctest::Approx(0.0).epsilon(1e-14));

  // product Gibbs state across the cut
  models::CouplingTable decoupled(6);
  decoupled.set(0, 1, 0.8);
  decoupled.set(1, 2, 0.5);
  decoupled.set(3, 4, 0.9);
  decoupled.set(4, 5, 0.4);
  const MatrixXd rho_prod = ed::gibbs_dense(ed::heisenberg_spectrum(decoupled), 2.0);
  CHECK(ed::correlation_function_ed(rho_prod, 6, ed::spin_z(1), ed::spin_z(4)) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ed::spin_dot_connected(rho_prod, 6, 0, 5) == doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS_AS(
      ed::correlation_function_ed(hot, 6, ed::spin_dot(0, 2), ed::spin_dot(2, 4)),
      validation_error);

  // decomposition consistency: the component sum equals <S_i.S_j> minus the
  // single-operator products
  const MatrixXd rho = ed::gibbs_dense(sp, 2.0);
  const double direct =
      ed::expectation(rho, 6, ed::spin_dot(1, 4)) -
      ed::expectation(rho, 6, ed::spin_x(1)) * ed::expectation(rho, 6, ed::spin_x(4)) -
      ed::expectation(rho, 6, ed::spin_z(1)) * ed::expectation(rho, 6, ed::spin_z(4));
  CHECK(ed::spin_dot_connected(rho, 6, 1, 4) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("rescaled connected correlators plateau at accessible sizes") {
  // ensemble mean of |<S_i . S_{i+r}>_c| * r^alpha flattens beyond r = 2
  const int n = 10, samples = 20;
  const double alpha = 0.75, beta = 2.0;
  const Lattice lat(1, n);
  std::vector<double> mean(n, 0.0);
  for (int s = 0; s < samples; ++s) {
    models::CouplingSpec spec{alpha, models::AmplitudeLaw::uniform(0.0, 1.0),
                              rng::sample_seed(333, s)};
    const auto j = models::heisenberg_couplings(lat, spec);
    const auto rho = ed::gibbs_dense(ed::heisenberg_spectrum(j), beta);
    for (int r = 1; r <= 6; ++r)
      mean[r] += std::abs(ed::spin_dot_connected(rho, n, 1, 1 + r)) / samples;
  }
  std::vector<double> scaled;
  for (int r = 3; r <= 6; ++r) scaled.push_back(mean[r] * std::pow(r, alpha));
  double plateau = 0.0;
  for (double v : scaled) plateau += v / scaled.size();
  for (double v : scaled) {
    CHECK(v < 2.0 * plateau);
    CHECK(v > 0.5 * plateau);
  }
  // no growth relative to the short-distance value
  CHECK(scaled.back() <= mean[1] * std::pow(1.0, alpha));
}

TEST_CASE("fock oracle fundamentals") {
  MatrixXd h1(1, 1);
  h1 << 0.6;
  const ed::FockOracle one(h1, 2.0);
  CHECK(one.occupation(0) == doctest::Approx(1.0 / (std::exp(2.0 * 0.6) + 1.0)).epsilon(1e-13));

  CHECK_THROWS_AS(ed::FockOracle(MatrixXd::Zero(9, 9), 1.0), capacity_error);
}

TEST_CASE("fermionic partial trace handles interleaved subsets") {
  const auto h = random_hopping(6, 1.0, 31);
  const ed::FockOracle oracle(h, 2.0);
  // contiguous tail: signs are trivial, must match the qubit trace
  const MatrixXd direct = ed::partial_trace(oracle.rho(), 6, {0, 1, 2});
  const MatrixXd fermionic = ed::fermion_partial_trace(oracle.rho(), 6, {0, 1, 2});
  CHECK((direct - fermionic).cwiseAbs().maxCoeff() < 1e-13);
  // trace preserved on any subset
  const MatrixXd odd = ed::fermion_partial_trace(oracle.rho(), 6, {1, 3, 4});
  CHECK(std::abs(odd.trace() - 1.0) < 1e-12);
}

TEST_CASE("partial time reversal: structural checks") {
  const auto h = random_hopping(4, 1.0, 41);
  const ed::FockOracle oracle(h, 2.0);
  const MatrixXcd rho = oracle.rho().cast<std::complex<double>>();

  // empty subsystem: identity transform
  const ed::PartialTimeReversal none(4, {});
  CHECK((none.apply(rho) - rho).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(ed::trace_norm(none.apply(rho)) == doctest::Approx(1.0).epsilon(1e-10));

  // single mode, full reversal: frozen phases from the coherent-state rule
  MatrixXcd r1(2, 2);
  r1 << 0.6, std::complex<double>(0.1, 0.05), std::complex<double>(0.1, -0.05), 0.4;
  const ed::PartialTimeReversal full(1, {0});
  const MatrixXcd r1t = full.apply(r1);
  CHECK(std::abs(r1t(0, 0) - r1(0, 0)) < 1e-14);
  CHECK(std::abs(r1t(1, 1) - r1(1, 1)) < 1e-14);
  CHECK(std::abs(r1t(1, 0) - std::complex<double>(0, 1) * r1(0, 1)) < 1e-14);
  CHECK(std::abs(r1t(0, 1) - std::complex<double>(0, 1) * r1(1, 0)) < 1e-14);

  // trace preservation
  const ed::PartialTimeReversal half(4, {0, 1});
  CHECK(std::abs(half.apply(rho).trace() - 1.0) < 1e-12);

  CHECK_THROWS_AS(ed::PartialTimeReversal(7, {0}), capacity_error);
}

TEST_CASE("partial time reversal: decoupled state has no negativity") {
  MatrixXd h = MatrixXd::Zero(4, 4);
  h.topLeftCorner(2, 2) = random_hopping(2, 1.0, 43);
  h.bottomRightCorner(2, 2) = random_hopping(2, 1.0, 44);
  const ed::FockOracle oracle(h, 2.0);
  const ed::PartialTimeReversal reversal(4, {0, 1});
  const double log_norm =
      reversal.log_trace_norm(oracle.rho().cast<std::complex<double>>());
  CHECK(std::abs(log_norm) < 1e-9);
}

TEST_CASE("partial time reversal matches the Gaussian pipeline") {
  const auto bip4 = lattice::half_bipartition(Lattice(1, 4));
  for (std::uint64_t seed : {51ull, 52ull, 53ull}) {
    const auto h = random_hopping(4, seed % 2 ? 0.8 : 1.5, seed);
    const auto cm = gaussian::thermal_correlation_matrix(h, 2.0);
    const auto detail = negativity::ssr_negativity_detailed(cm, bip4);
    const ed::FockOracle oracle(h, 2.0);
    const ed::PartialTimeReversal reversal(4, bip4.a);
    const double dense = reversal.log_trace_norm(oracle.rho().cast<std::complex<double>>());
    CHECK(detail.raw == doctest::Approx(dense).epsilon(1e-8));
  }
  const auto bip6 = lattice::half_bipartition(Lattice(1, 6));
  const auto h6 = random_hopping(6, 1.0, 61);
  const auto cm6 = gaussian::thermal_correlation_matrix(h6, 2.0);
  const auto detail6 = negativity::ssr_negativity_detailed(cm6, bip6);
  const ed::FockOracle oracle6(h6, 2.0);
  const ed::PartialTimeReversal reversal6(6, bip6.a);
  const double dense6 = reversal6.log_trace_norm(oracle6.rho().cast<std::complex<double>>());
  CHECK(detail6.raw == doctest::Approx(dense6).epsilon(1e-8));
}

TEST_CASE("capacity caps") {
  models::CouplingTable big(15);
  CHECK_THROWS_AS(ed::heisenberg_spectrum(big), capacity_error);
  CHECK_THROWS_AS(ed::heisenberg_dense(big), capacity_error);
}
