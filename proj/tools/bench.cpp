// Timing comparison of the OpenMP kernels against their serial references.
// Prints one table row per kernel: serial seconds, parallel seconds, speedup,
// and the largest deviation between the two results.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "lrtherm/bounds.hpp"
#include "lrtherm/gaussian.hpp"
#include "lrtherm/lattice.hpp"
#include "lrtherm/models.hpp"
#include "lrtherm/parallel.hpp"
#include "lrtherm/rng.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double time_call(const std::function<double()>& fn, double* value) {
  const auto t0 = Clock::now();
  *value = fn();
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(const char* name, double serial_s, double parallel_s, double deviation) {
  std::printf("%-28s %10.4f s %10.4f s %8.2fx %12.3e\n", name, serial_s, parallel_s,
              serial_s / parallel_s, deviation);
}

}  // namespace

int main() {
  using namespace lrtherm;
  std::printf("workers available: %d\n\n", hardware_workers());
  std::printf("%-28s %12s %12s %9s %12s\n", "kernel", "serial", "parallel", "speedup",
              "max |diff|");

  {
    const lattice::Lattice lat(2, 48);
    const auto bip = lattice::half_bipartition(lat);
    double serial_v = 0.0, parallel_v = 0.0;
    const double ts = time_call([&] { return boundary_double_sum_serial(lat, bip, 3.0); },
                                &serial_v);
    const double tp = time_call([&] { return boundary_double_sum(lat, bip, 3.0); }, &parallel_v);
    report("boundary_double_sum 48x48", ts, tp, std::abs(serial_v - parallel_v));
  }

  {
    const lattice::Lattice lat(1, 192);
    double serial_v = 0.0, parallel_v = 0.0;
    const double ts = time_call(
        [&] { return bounds::product_lemma_check_serial(lat, 1.5, 1.0).max_ratio; }, &serial_v);
    const double tp = time_call(
        [&] { return bounds::product_lemma_check(lat, 1.5, 1.0).max_ratio; }, &parallel_v);
    report("product_lemma N=192", ts, tp, std::abs(serial_v - parallel_v));
  }

  {
    const lattice::Lattice lat(1, 96);
    const auto bip = lattice::half_bipartition(lat);
    const int samples = 16;
    const auto sample_mi = [&](std::size_t s) {
      models::CouplingSpec spec;
      spec.alpha = 1.2;
      spec.amplitude = models::AmplitudeLaw::uniform(0.0, 1.0);
      spec.seed = rng::sample_seed(7, s);
      const auto h = models::hopping_matrix(lat, spec);
      const auto cm = gaussian::thermal_correlation_matrix(h, 2.0);
      return gaussian::mutual_information(cm, bip);
    };
    double serial_v = 0.0, parallel_v = 0.0;
    const double ts = time_call(
        [&] {
          const auto vals = map_samples_serial<double>(samples, sample_mi);
          double acc = 0.0;
          for (double v : vals) acc += v;
          return acc;
        },
        &serial_v);
    const double tp = time_call(
        [&] {
          const auto vals = map_samples<double>(samples, sample_mi);
          double acc = 0.0;
          for (double v : vals) acc += v;
          return acc;
        },
        &parallel_v);
    report("thermal MI ensemble N=96", ts, tp, std::abs(serial_v - parallel_v));
  }

  return 0;
}
