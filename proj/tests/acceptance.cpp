// Acceptance suite: one line per criterion, [PASS]/[FAIL] with the measured
// numbers and elapsed seconds. Exit code is the number of failures.

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "lrtherm/bounds.hpp"
#include "lrtherm/ed.hpp"
#include "lrtherm/errors.hpp"
#include "lrtherm/gaussian.hpp"
#include "lrtherm/lattice.hpp"
#include "lrtherm/models.hpp"
#include "lrtherm/negativity.hpp"
#include "lrtherm/parallel.hpp"
#include "lrtherm/rng.hpp"

using namespace lrtherm;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using lattice::Lattice;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

MatrixXd random_hopping(const Lattice& lat, double alpha, std::uint64_t seed) {
  models::CouplingSpec spec{alpha, models::AmplitudeLaw::uniform(0.0, 1.0), seed};
  return models::hopping_matrix(lat, spec);
}

models::CouplingTable random_couplings(const Lattice& lat, double alpha, std::uint64_t seed) {
  models::CouplingSpec spec{alpha, models::AmplitudeLaw::uniform(0.0, 1.0), seed};
  return models::heisenberg_couplings(lat, spec);
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& xs) {
  MeanSe out;
  for (double x : xs) out.mean += x;
  out.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.se = std::sqrt(ss / static_cast<double>(xs.size() - 1) /
                       static_cast<double>(xs.size()));
  }
  return out;
}

// --------------------------------------------------------------------------
// 1. mutual-information oracle equivalence
Outcome criterion_mi_oracle() {
  const int n = 6;
  const double beta = 2.0;
  const Lattice lat(1, n);
  const auto bip = lattice::half_bipartition(lat);
  double worst = 0.0;
  int idx = 0;
  for (double alpha : {0.8, 1.5}) {
    for (int rep = 0; rep < 10; ++rep, ++idx) {
      const auto h = random_hopping(lat, alpha, rng::sample_seed(1001, idx));
      const auto cm = gaussian::thermal_correlation_matrix(h, beta);
      const ed::FockOracle oracle(h, beta);
      worst = std::max(worst, std::abs(gaussian::mutual_information(cm, bip) -
                                       oracle.mutual_information(bip)));
    }
  }
  return {worst <= 1e-8, "max |I_gaussian - I_fock| = " + fmt(worst) + " (limit 1e-08)"};
}

// 2. SSR negativity oracle equivalence
Outcome criterion_ssr_oracle() {
  const double beta = 2.0;
  double worst = 0.0;
  int idx = 0;
  const auto run = [&](int n, int reps) {
    const Lattice lat(1, n);
    const auto bip = lattice::half_bipartition(lat);
    const ed::PartialTimeReversal reversal(n, bip.a);
    for (int rep = 0; rep < reps; ++rep, ++idx) {
      const double alpha = (rep % 2 == 0) ? 0.8 : 1.5;
      const auto h = random_hopping(lat, alpha, rng::sample_seed(2002, idx));
      const auto cm = gaussian::thermal_correlation_matrix(h, beta);
      const auto detail = negativity::ssr_negativity_detailed(cm, bip);
      const ed::FockOracle oracle(h, beta);
      const double dense = reversal.log_trace_norm(oracle.rho().cast<std::complex<double>>());
      worst = std::max(worst, std::abs(detail.raw - dense));
    }
  };
  run(4, 10);
  run(6, 5);
  return {worst <= 1e-6, "max |E_pipeline - E_dense| = " + fmt(worst) + " (limit 1e-06)"};
}

// 3. Pfaffian identities
Outcome criterion_pfaffian() {
  std::mt19937_64 rng_engine(3003);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto random_skew = [&](int n) {
    MatrixXcd y = MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        y(i, j) = std::complex<double>(u(rng_engine), u(rng_engine));
        y(j, i) = -y(i, j);
      }
    return y;
  };

  double worst = 0.0;
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 2 * (1 + rep % 8);  // sizes 2..16
    const MatrixXcd y = random_skew(n);
    const std::complex<double> pf = negativity::pfaffian(negativity::SkewMatrix::from(y));
    const std::complex<double> det = y.determinant();
    worst = std::max(worst, std::abs(pf * pf - det) / std::abs(det));
  }

  bool perm_ok = true;
  for (int rep = 0; rep < 40 && perm_ok; ++rep) {
    const int n = 8;
    const MatrixXcd y = random_skew(n);
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng_engine);
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    MatrixXcd py(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) py(i, j) = y(perm[i], perm[j]);
    const std::complex<double> lhs = negativity::pfaffian(negativity::SkewMatrix::from(py));
    const std::complex<double> rhs = negativity::pfaffian(negativity::SkewMatrix::from(y)) *
                                     (inversions % 2 == 0 ? 1.0 : -1.0);
    perm_ok = std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, std::abs(rhs));
  }

  bool odd_rejected = false;
  try {
    negativity::pfaffian(negativity::SkewMatrix::from(MatrixXcd::Zero(5, 5)));
  } catch (const validation_error&) {
    odd_rejected = true;
  }

  const bool pass = worst <= 1e-8 && perm_ok && odd_rejected;
  return {pass, "max |Pf^2 - det|/|det| = " + fmt(worst) + ", permutation sign " +
                    (perm_ok ? "ok" : "BROKEN") + ", odd size " +
                    (odd_rejected ? "rejected" : "ACCEPTED")};
}

// 4. trivial zeros
Outcome criterion_trivial_zeros() {
  const int n = 8;
  const Lattice lat(1, n);
  const auto bip = lattice::half_bipartition(lat);
  MatrixXd h = MatrixXd::Zero(n, n);
  h.topLeftCorner(4, 4) = random_hopping(Lattice(1, 4), 1.0, 41);
  h.bottomRightCorner(4, 4) = random_hopping(Lattice(1, 4), 1.0, 42);
  const auto cm = gaussian::thermal_correlation_matrix(h, 2.0);
  const double mi_dec = gaussian::mutual_information(cm, bip);
  const auto essr_dec = negativity::ssr_negativity_detailed(cm, bip);

  const auto coupled = random_hopping(lat, 1.0, 43);
  const double mi_hot =
      gaussian::mutual_information(gaussian::thermal_correlation_matrix(coupled, 1e-8), bip);

  const bool pass =
      mi_dec <= 1e-12 && std::abs(essr_dec.raw) <= 1e-9 && essr_dec.value <= 1e-9 &&
      mi_hot <= 1e-6;
  return {pass, "decoupled I = " + fmt(mi_dec) + " (limit 1e-12), E_SSR = " +
                    fmt(std::abs(essr_dec.raw)) + " (limit 1e-09), beta=1e-8 I = " +
                    fmt(mi_hot) + " (limit 1e-06)"};
}

// 5. boundary-norm inequality on every ED sample
Outcome criterion_boundary_bound_suite() {
  const int n = 10;
  const double beta = 2.0;
  const Lattice lat(1, n);
  const auto bip = lattice::half_bipartition(lat);
  double min_slack = std::numeric_limits<double>::infinity();
  int violations = 0;
  int idx = 0;
  for (double alpha : {0.6, 1.5, 2.5}) {
    const auto values = map_samples<double>(50, [&](std::size_t s) {
      const auto j = random_couplings(lat, alpha, rng::sample_seed(5005 + idx, s));
      const auto sp = ed::heisenberg_spectrum(j);
      const double mi = ed::mutual_information_gibbs(sp, beta, bip);
      const auto bound = bounds::boundary_norm_bound_heisenberg(j, bip, beta);
      return bound.bound() - mi;
    });
    ++idx;
    for (double slack : values) {
      min_slack = std::min(min_slack, slack);
      if (slack < -1e-9) ++violations;
    }
  }
  return {violations == 0,
          "150 samples, min(2 beta ||H_boundary|| - I) = " + fmt(min_slack) + ", violations " +
              std::to_string(violations)};
}

// 6. thermofield-double bound
Outcome criterion_tfd_bound() {
  const int n = 8;
  const double beta = 2.0;
  const Lattice lat(1, n);
  const auto bip = lattice::half_bipartition(lat);
  double min_slack = std::numeric_limits<double>::infinity();
  int violations = 0;
  const auto slacks = map_samples<double>(20, [&](std::size_t s) {
    const auto j = random_couplings(lat, 1.0, rng::sample_seed(6006, s));
    const auto sp = ed::heisenberg_spectrum(j);
    return 2.0 * ed::tfd_entanglement_entropy(sp, beta, bip) -
           ed::mutual_information_gibbs(sp, beta, bip);
  });
  for (double slack : slacks) {
    min_slack = std::min(min_slack, slack);
    if (slack < -1e-9) ++violations;
  }
  return {violations == 0,
          "20 samples, min(2E - I) = " + fmt(min_slack) + ", violations " +
              std::to_string(violations)};
}

// 7. clustering plateau: rescaled correlators flatten at large distance
Outcome criterion_clustering_plateau() {
  const int n = 256;
  const double beta = 2.0;
  const int samples = 200;
  const Lattice lat(1, n);
  const int origin = n / 4;
  std::vector<int> steps;
  for (int r = 1; r <= n / 4; ++r) steps.push_back(r);

  bool pass = true;
  std::string detail;
  int alpha_index = 0;
  for (double alpha : {0.5, 1.0, 2.0}) {
    using Sweep = std::vector<gaussian::SweepPoint>;
    const auto sweeps = map_samples<Sweep>(samples, [&](std::size_t s) {
      const auto h =
          random_hopping(lat, alpha, rng::sample_seed(7007 + alpha_index, s));
      const auto cm = gaussian::thermal_correlation_matrix(h, beta);
      return gaussian::two_point_sweep(lat, cm, origin, steps, alpha);
    });
    ++alpha_index;
    // least-squares slope of log(mean scaled) vs log r over r in [N/8, N/4]
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (std::size_t k = 0; k < steps.size(); ++k) {
      if (steps[k] < n / 8 || steps[k] > n / 4) continue;
      double mean = 0;
      for (const auto& sw : sweeps) mean += sw[k].scaled;
      mean /= samples;
      const double x = std::log(static_cast<double>(steps[k]));
      const double y = std::log(mean);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++count;
    }
    const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    pass = pass && std::abs(slope) <= 0.2;
    detail += "alpha=" + fmt(alpha) + " slope=" + fmt(slope) + "  ";
  }
  return {pass, detail + "(limit |slope| <= 0.2)"};
}

// 8. 1D scaling dichotomy for mutual information and negativity
Outcome criterion_dichotomy_1d() {
  const double beta = 2.0;
  const int samples = 100;
  const std::vector<int> sizes = {64, 128, 256};

  const auto sweep = [&](double alpha, bool use_negativity) {
    std::vector<double> means;
    for (int n : sizes) {
      const Lattice lat(1, n);
      const auto bip = lattice::half_bipartition(lat);
      const auto vals = map_samples<double>(samples, [&](std::size_t s) {
        const auto h = random_hopping(
            lat, alpha, rng::sample_seed(8008 + n, s * 4 + (use_negativity ? 1 : 0)));
        const auto cm = gaussian::thermal_correlation_matrix(h, beta);
        return use_negativity ? negativity::ssr_negativity(cm, bip)
                              : gaussian::mutual_information(cm, bip);
      });
      means.push_back(mean_se(vals).mean);
    }
    return means;
  };

  bool pass = true;
  std::string detail;
  for (bool neg : {false, true}) {
    const auto grow = sweep(0.6, neg);
    const bool growing = grow[1] > grow[0] && grow[2] > grow[1];
    const auto sat = sweep(1.5, neg);
    const bool saturating = std::abs(sat[2] - sat[1]) < std::abs(sat[1] - sat[0]);
    pass = pass && growing && saturating;
    detail += std::string(neg ? "E_SSR" : "I") + ": a=0.6 " + fmt(grow[0]) + "<" + fmt(grow[1]) +
              "<" + fmt(grow[2]) + (growing ? " ok" : " BROKEN") + "; a=1.5 increments " +
              fmt(sat[1] - sat[0]) + " -> " + fmt(sat[2] - sat[1]) +
              (saturating ? " ok  " : " BROKEN  ");
  }
  return {pass, detail};
}

// 9. 2D dichotomy of I per boundary site around alpha = 1.5
Outcome criterion_dichotomy_2d() {
  const double beta = 2.0;
  const int samples = 30;
  const std::vector<int> sides = {8, 12, 16};

  const auto sweep = [&](double alpha) {
    std::vector<double> means;
    for (int side : sides) {
      const Lattice lat(2, side);
      const auto bip = lattice::half_bipartition(lat);
      const auto vals = map_samples<double>(samples, [&](std::size_t s) {
        const auto h = random_hopping(lat, alpha, rng::sample_seed(9009 + side, s));
        const auto cm = gaussian::thermal_correlation_matrix(h, beta);
        return gaussian::mutual_information(cm, bip) / side;
      });
      means.push_back(mean_se(vals).mean);
    }
    return means;
  };

  const auto grow = sweep(1.0);
  const bool growing = grow[1] > grow[0] && grow[2] > grow[1];
  const auto sat = sweep(2.0);
  const bool saturating = (sat[2] - sat[1]) <= (sat[1] - sat[0]) + 1e-12;
  return {growing && saturating,
          "I/side a=1.0: " + fmt(grow[0]) + " < " + fmt(grow[1]) + " < " + fmt(grow[2]) +
              (growing ? " ok" : " BROKEN") + "; a=2.0 increments " + fmt(sat[1] - sat[0]) +
              " -> " + fmt(sat[2] - sat[1]) + (saturating ? " ok" : " BROKEN")};
}

// 10. exact-diagonalization trend for the Heisenberg chain
Outcome criterion_ed_trend() {
  const double beta = 2.0;
  const int samples = 200;
  const std::vector<int> sizes = {6, 8, 10};

  const auto sweep = [&](double alpha) {
    std::vector<MeanSe> stats;
    for (int n : sizes) {
      const Lattice lat(1, n);
      const auto bip = lattice::half_bipartition(lat);
      const auto vals = map_samples<double>(samples, [&](std::size_t s) {
        const auto j = random_couplings(lat, alpha, rng::sample_seed(10010 + n, s));
        return ed::mutual_information_gibbs(ed::heisenberg_spectrum(j), beta, bip);
      });
      stats.push_back(mean_se(vals));
    }
    return stats;
  };

  const auto grow = sweep(0.5);
  const bool growing = grow[1].mean > grow[0].mean && grow[2].mean > grow[1].mean;
  const auto flat = sweep(1.5);
  bool is_flat = true;
  for (int k = 0; k + 1 < 3; ++k) {
    const double diff = std::abs(flat[k + 1].mean - flat[k].mean);
    const double band =
        2.0 * std::sqrt(flat[k].se * flat[k].se + flat[k + 1].se * flat[k + 1].se);
    is_flat = is_flat && diff <= band;
  }
  return {growing && is_flat,
          "a=0.5 I: " + fmt(grow[0].mean) + " < " + fmt(grow[1].mean) + " < " +
              fmt(grow[2].mean) + (growing ? " ok" : " BROKEN") + "; a=1.5 I: " +
              fmt(flat[0].mean) + ", " + fmt(flat[1].mean) + ", " + fmt(flat[2].mean) +
              (is_flat ? " flat within 2 se" : " NOT flat")};
}

// 11. bound battery consistency
Outcome criterion_bounds_consistency() {
  // exact homogeneity of the area-law bound prefactor
  const Lattice lat(1, 16);
  const auto bip = lattice::half_bipartition(lat);
  bounds::BoundParams p;
  p.alpha = 1.7;
  p.beta = 0.9;
  p.g = 1.3;
  p.c_const = 2.1;
  const double base = bounds::area_law_rhs(lat, bip, p).value;
  double homogeneity_err = 0.0;
  const auto check_scaled = [&](const bounds::BoundParams& q, double factor) {
    homogeneity_err =
        std::max(homogeneity_err, std::abs(bounds::area_law_rhs(lat, bip, q).value -
                                           factor * base) /
                                      (factor * base));
  };
  for (double factor : {2.0, 5.0, 11.0}) {
    bounds::BoundParams q = p;
    q.beta *= factor;
    check_scaled(q, factor);
    q = p;
    q.g *= factor;
    check_scaled(q, factor);
    q = p;
    q.c_const *= factor;
    check_scaled(q, factor);
  }

  // Lambert form dominates the simple threshold on a grid
  bool lambert_ok = true;
  for (int iu = 0; iu < 10; ++iu)
    for (int ig = 0; ig < 5; ++ig)
      for (int ik = 0; ik < 2; ++ik) {
        const double u = 1.0 + iu * 3.3;
        const double g = 0.4 + ig * 0.9;
        const int k = 2 + 3 * ik;
        const auto bc = bounds::beta_c(u, g, k);
        lambert_ok = lambert_ok && bc.lambert >= bc.simple;
      }

  // product lemma with brute-force triple sums; 2D needs alpha > D
  bool lemma_ok = true;
  for (double alpha : {1.1, 2.0, 3.0})
    lemma_ok = lemma_ok && bounds::product_lemma_check(Lattice(1, 16), alpha, 1.0).holds;
  for (double alpha : {2.1, 3.0})
    lemma_ok = lemma_ok && bounds::product_lemma_check(Lattice(2, 6), alpha, 1.0).holds;

  const bool pass = homogeneity_err <= 1e-12 && lambert_ok && lemma_ok;
  return {pass, "homogeneity err = " + fmt(homogeneity_err) +
                    " (limit 1e-12), lambert >= simple on 100-point grid " +
                    (lambert_ok ? "ok" : "BROKEN") + ", product lemma " +
                    (lemma_ok ? "holds" : "BROKEN")};
}

// 12. full-scale feasibility smoke
Outcome criterion_full_scale() {
  auto t0 = Clock::now();
  {
    const Lattice lat(1, 1000);
    const auto h = random_hopping(lat, 1.0, 77);
    const auto cm = gaussian::thermal_correlation_matrix(h, 2.0);
    std::vector<int> steps;
    for (int r = 1; r <= 600; ++r) steps.push_back(r);
    gaussian::two_point_sweep(lat, cm, 250, steps, 1.0);
  }
  const double t_1d = elapsed(t0);

  t0 = Clock::now();
  {
    const Lattice lat(2, 40);
    const auto h = random_hopping(lat, 1.5, 78);
    const auto cm = gaussian::thermal_correlation_matrix(h, 2.0);
    std::vector<int> steps;
    for (int r = 1; r <= 29; ++r) steps.push_back(r);
    gaussian::two_point_sweep(lat, cm, lat.site({10, 10}), steps, 1.5);
  }
  const double t_2d = elapsed(t0);

  return {t_1d < 60.0 && t_2d < 60.0,
          "one sample: 1D N=1000 in " + fmt(t_1d) + " s, 2D side 40 in " + fmt(t_2d) +
              " s (limit 60 s each)"};
}

struct Criterion {
  int number;
  std::string name;
  double runtime_limit;  // seconds; 0 = no stated cap
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "oracle equivalence, mutual information", 10.0, criterion_mi_oracle},
      {2, "oracle equivalence, SSR negativity", 60.0, criterion_ssr_oracle},
      {3, "pfaffian identities", 0.0, criterion_pfaffian},
      {4, "trivial zeros", 0.0, criterion_trivial_zeros},
      {5, "boundary-norm bound on every ED sample", 300.0, criterion_boundary_bound_suite},
      {6, "thermofield-double bound", 0.0, criterion_tfd_bound},
      {7, "clustering plateau", 300.0, criterion_clustering_plateau},
      {8, "1D scaling dichotomy (I and E_SSR)", 600.0, criterion_dichotomy_1d},
      {9, "2D scaling dichotomy at alpha = 1.5", 900.0, criterion_dichotomy_2d},
      {10, "ED mutual-information trend", 0.0, criterion_ed_trend},
      {11, "bound battery consistency", 0.0, criterion_bounds_consistency},
      {12, "full-scale smoke", 120.0, criterion_full_scale},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto t0 = Clock::now();
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double secs = elapsed(t0);
    bool pass = outcome.pass;
    std::string note;
    if (criterion.runtime_limit > 0.0 && secs > criterion.runtime_limit) {
      pass = false;
      note = " [OVER TIME LIMIT " + fmt(criterion.runtime_limit) + " s]";
    }
    std::printf("[%s] %2d. %s: %s (%.1f s)%s\n", pass ? "PASS" : "FAIL", criterion.number,
                criterion.name.c_str(), outcome.detail.c_str(), secs, note.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
  }
  if (failures == 0) {
    std::printf("all %zu acceptance criteria passed\n", criteria.size());
  } else {
    std::printf("%d acceptance criteria FAILED\n", failures);
  }
  return failures;
}
