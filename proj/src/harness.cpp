#include "lrtherm/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "lrtherm/ed.hpp"
#include "lrtherm/errors.hpp"
#include "lrtherm/gaussian.hpp"
#include "lrtherm/models.hpp"
#include "lrtherm/negativity.hpp"
#include "lrtherm/parallel.hpp"
#include "lrtherm/rng.hpp"

namespace lrtherm::harness {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_seconds(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_and_se(const std::vector<double>& xs) {
  MeanSe out;
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    const double var = ss / static_cast<double>(xs.size() - 1);
    out.se = std::sqrt(var / static_cast<double>(xs.size()));
  }
  return out;
}

int scaled_size(int size, double scale, bool force_even) {
  int s = static_cast<int>(std::lround(size * scale));
  if (force_even) s -= s % 2;
  return std::max(s, 2);
}

models::CouplingSpec sample_spec(const ExperimentConfig& cfg, double alpha,
                                 std::uint64_t sample) {
  models::CouplingSpec spec;
  spec.alpha = alpha;
  spec.amplitude = cfg.amplitude_lo == cfg.amplitude_hi
                       ? models::AmplitudeLaw::fixed(cfg.amplitude_lo)
                       : models::AmplitudeLaw::uniform(cfg.amplitude_lo, cfg.amplitude_hi);
  spec.seed = rng::sample_seed(cfg.seed, sample);
  return spec;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw validation_error(message);
}

}  // namespace

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::clustering: return "clustering";
    case Experiment::mutual_info: return "mutual-info";
    case Experiment::negativity: return "negativity";
    case Experiment::tfd: return "tfd";
    case Experiment::bounds: return "bounds";
    case Experiment::oracle_check: return "oracle-check";
  }
  return "?";
}

std::string to_string(Model m) { return m == Model::bilinear ? "bilinear" : "heisenberg"; }

std::string to_string(lattice::Metric m) {
  return m == lattice::Metric::manhattan ? "manhattan" : "euclidean";
}

std::string to_string(bounds::UVariant v) {
  return v == bounds::UVariant::plain ? "plain" : "lemma";
}

void ExperimentConfig::resolve() {
  if (!preset.empty()) {
    const auto apply = [&](Experiment k, Model mo, int d, std::vector<int> sz,
                           std::vector<double> al, int smp) {
      kind = k;
      model = mo;
      dim = d;
      sizes = std::move(sz);
      alphas = std::move(al);
      samples = smp;
      beta = 2.0;
      amplitude_lo = 0.0;
      amplitude_hi = 1.0;
    };
    if (preset == "fig2a") {
      apply(Experiment::clustering, Model::bilinear, 1, {1000}, {0.5, 1.0, 1.5, 2.0}, 1000);
    } else if (preset == "fig2b") {
      apply(Experiment::clustering, Model::bilinear, 2, {40}, {0.5, 1.0, 1.5, 2.0}, 1000);
    } else if (preset == "fig2c") {
      apply(Experiment::mutual_info, Model::bilinear, 1, {100, 200, 400, 600, 800, 1000},
            {0.6, 0.8, 1.0, 1.5, 2.0}, 1000);
    } else if (preset == "fig2d") {
      apply(Experiment::mutual_info, Model::bilinear, 2, {8, 16, 24, 32, 40},
            {1.0, 1.25, 1.5, 1.75, 2.0}, 1000);
    } else if (preset == "fig4a") {
      apply(Experiment::negativity, Model::bilinear, 1, {100, 200, 400, 600, 800, 1000},
            {0.6, 0.8, 1.0, 1.5, 2.0}, 1000);
    } else if (preset == "fig4b") {
      apply(Experiment::negativity, Model::bilinear, 2, {8, 16, 24, 32, 40},
            {1.0, 1.25, 1.5, 1.75, 2.0}, 1000);
    } else if (preset == "figS5") {
      apply(Experiment::mutual_info, Model::heisenberg, 1, {6, 8, 10, 12},
            {0.5, 0.8, 1.0, 1.5, 2.0}, 2000);
    } else {
      throw validation_error("unknown preset '" + preset + "'");
    }
  }

  require(scale > 0.0 && scale <= 1.0, "scale must be in (0, 1]");
  if (scale != 1.0) {
    const bool even = kind != Experiment::clustering;
    for (int& s : sizes) s = scaled_size(s, scale, even);
    samples = std::max(1, static_cast<int>(std::lround(samples * scale)));
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
  }
  if (!preset.empty() || scale != 1.0) {
    resolved_from = preset.empty() ? std::string("explicit parameters") : "preset " + preset;
    if (scale != 1.0) resolved_from += " at scale " + std::to_string(scale);
  }
  // consumed; the echoed config reproduces the run without re-scaling
  preset.clear();
  scale = 1.0;

  require(dim == 1 || dim == 2, "dim must be 1 or 2");
  require(!alphas.empty(), "at least one alpha is required");
  for (double a : alphas) require(a > 0.0, "alpha values must be positive");
  require(beta > 0.0 && std::isfinite(beta), "beta must be finite and positive");
  require(samples >= 1, "samples must be >= 1");
  require(amplitude_lo <= amplitude_hi, "amplitude interval requires lo <= hi");
  require(!out.empty(), "output path must not be empty");

  if (kind == Experiment::oracle_check) {
    if (sizes.empty()) sizes = {6};
    for (int n : sizes) {
      require(n >= 2 && n % 2 == 0, "oracle-check sizes must be even and >= 2");
      if (n > ed::kMaxFockModes)
        throw capacity_error("oracle-check needs the dense Fock oracle: n <= " +
                             std::to_string(ed::kMaxFockModes) + ", got " + std::to_string(n) +
                             " (about " + std::to_string((1LL << n)) + "^2 complex entries)");
    }
    return;
  }

  require(!sizes.empty(), "at least one size is required");
  for (int n : sizes) require(n >= 2, "sizes must be >= 2");

  if (model == Model::heisenberg) {
    require(dim == 1, "the Heisenberg model is implemented on chains only");
    for (int n : sizes) {
      const int cap = kind == Experiment::tfd ? ed::kMaxTfdSites : ed::kMaxSpinSites;
      if (n > cap) {
        const double gib = std::pow(2.0, 2.0 * n - 27.0);  // 2^{2n} doubles in GiB
        throw capacity_error(to_string(kind) + " with the dense Heisenberg solver caps at " +
                             std::to_string(cap) + " sites; " + std::to_string(n) +
                             " sites would need about " + std::to_string(gib) +
                             " GiB per density matrix");
      }
    }
  } else {
    require(kind != Experiment::tfd, "the thermofield-double experiment uses the Heisenberg model");
    for (int n : sizes) {
      const long long modes = dim == 1 ? n : static_cast<long long>(n) * n;
      const double gib = static_cast<double>(modes) * modes * 8.0 * 4.0 / (1 << 30);
      if (modes > 4096)
        throw capacity_error("dense free-fermion solve with " + std::to_string(modes) +
                             " modes would need about " + std::to_string(gib) +
                             " GiB of workspace; cap is 4096 modes");
    }
  }

  if (kind != Experiment::clustering) {
    for (int n : sizes)
      require(n % 2 == 0, "half bipartition requires even sizes, got " + std::to_string(n));
  }
}

namespace {

struct GroupTimer {
  Clock::time_point t0 = Clock::now();
  double stop() const { return elapsed_seconds(t0); }
};

std::vector<int> sweep_steps(int dim, int size) {
  // 1D: origin N/4, reach up to r = 3N/5 like the full-scale run; 2D: the
  // diagonal from (side/4, side/4) to the far corner.
  std::vector<int> steps;
  if (dim == 1) {
    const int origin = size / 4;
    const int rmax = std::min(size - origin - 1, 3 * size / 5);
    for (int r = 1; r <= rmax; ++r) steps.push_back(r);
  } else {
    const int origin = size / 4;
    for (int r = 1; r <= size - origin - 1; ++r) steps.push_back(r);
  }
  return steps;
}

void run_clustering(const ExperimentConfig& cfg, std::vector<ExperimentRow>& rows) {
  for (double alpha : cfg.alphas) {
    for (int size : cfg.sizes) {
      GroupTimer timer;
      const lattice::Lattice lat(cfg.dim, size);
      const int origin = cfg.dim == 1
                             ? size / 4
                             : lat.site({size / 4, size / 4});
      const std::vector<int> steps = sweep_steps(cfg.dim, size);
      using Sweep = std::vector<gaussian::SweepPoint>;
      const auto per_sample = [&](std::size_t s) -> Sweep {
        const auto spec = sample_spec(cfg, alpha, s);
        const auto h = models::hopping_matrix(lat, spec);
        const auto cm = gaussian::thermal_correlation_matrix(h, cfg.beta);
        return gaussian::two_point_sweep(lat, cm, origin, steps, alpha, cfg.metric);
      };
      const auto sweeps = map_samples<Sweep>(cfg.samples, per_sample, cfg.workers);
      const double secs = timer.stop();
      for (std::size_t k = 0; k < steps.size(); ++k) {
        std::vector<double> abs_vals, scaled_vals;
        abs_vals.reserve(sweeps.size());
        scaled_vals.reserve(sweeps.size());
        for (const auto& sw : sweeps) {
          abs_vals.push_back(sw[k].corr_abs);
          scaled_vals.push_back(sw[k].scaled);
        }
        const auto ma = mean_and_se(abs_vals);
        const auto ms = mean_and_se(scaled_vals);
        const double x = static_cast<double>(steps[k]);
        rows.push_back({to_string(cfg.kind), alpha, size, cfg.samples, "corr_abs", x, ma.mean,
                        ma.se, secs});
        rows.push_back({to_string(cfg.kind), alpha, size, cfg.samples, "corr_scaled", x, ms.mean,
                        ms.se, secs});
      }
    }
  }
}

void run_mutual_info(const ExperimentConfig& cfg, std::vector<ExperimentRow>& rows) {
  for (double alpha : cfg.alphas) {
    for (int size : cfg.sizes) {
      GroupTimer timer;
      const lattice::Lattice lat(cfg.dim, size);
      const auto bip = lattice::half_bipartition(lat);
      const auto per_sample = [&](std::size_t s) -> double {
        const auto spec = sample_spec(cfg, alpha, s);
        if (cfg.model == Model::bilinear) {
          const auto h = models::hopping_matrix(lat, spec);
          const auto cm = gaussian::thermal_correlation_matrix(h, cfg.beta);
          return gaussian::mutual_information(cm, bip);
        }
        const auto table = models::heisenberg_couplings(lat, spec);
        const auto spectrum = ed::heisenberg_spectrum(table);
        return ed::mutual_information_gibbs(spectrum, cfg.beta, bip);
      };
      const auto vals = map_samples<double>(cfg.samples, per_sample, cfg.workers);
      const double secs = timer.stop();
      const auto m = mean_and_se(vals);
      rows.push_back({to_string(cfg.kind), alpha, size, cfg.samples, "mutual_info",
                      static_cast<double>(size), m.mean, m.se, secs});
      if (cfg.dim == 2) {
        std::vector<double> per_side(vals);
        for (double& v : per_side) v /= size;
        const auto mps = mean_and_se(per_side);
        rows.push_back({to_string(cfg.kind), alpha, size, cfg.samples, "mutual_info_per_side",
                        static_cast<double>(size), mps.mean, mps.se, secs});
      }
    }
  }
}

void run_negativity(const ExperimentConfig& cfg, std::vector<ExperimentRow>& rows) {
  for (double alpha : cfg.alphas) {
    for (int size : cfg.sizes) {
      GroupTimer timer;
      const lattice::Lattice lat(cfg.dim, size);
      const auto bip = lattice::half_bipartition(lat);
      const auto per_sample = [&](std::size_t s) -> double {
        const auto spec = sample_spec(cfg, alpha, s);
        const auto h = models::hopping_matrix(lat, spec);
        const auto cm = gaussian::thermal_correlation_matrix(h, cfg.beta);
        return negativity::ssr_negativity(cm, bip);
      };
      const auto vals = map_samples<double>(cfg.samples, per_sample, cfg.workers);
      const double secs = timer.stop();
      const auto m = mean_and_se(vals);
      rows.push_back({to_string(cfg.kind), alpha, size, cfg.samples, "e_ssr",
                      static_cast<double>(size), m.mean, m.se, secs});
      if (cfg.dim == 2) {
        std::vector<double> per_side(vals);
        for (double& v : per_side) v /= size;
        const auto mps = mean_and_se(per_side);
        rows.push_back({to_string(cfg.kind), alpha, size, cfg.samples, "e_ssr_per_side",
                        static_cast<double>(size), mps.mean, mps.se, secs});
      }
    }
  }
}

void run_tfd(const ExperimentConfig& cfg, std::vector<ExperimentRow>& rows) {
  for (double alpha : cfg.alphas) {
    for (int size : cfg.sizes) {
      GroupTimer timer;
      const lattice::Lattice lat(1, size);
      const auto bip = lattice::half_bipartition(lat);
      struct TfdSample {
        double entropy = 0.0;
        double mi = 0.0;
      };
      const auto per_sample = [&](std::size_t s) -> TfdSample {
        const auto spec = sample_spec(cfg, alpha, s);
        const auto table = models::heisenberg_couplings(lat, spec);
        const auto spectrum = ed::heisenberg_spectrum(table);
        TfdSample out;
        out.entropy = ed::tfd_entanglement_entropy(spectrum, cfg.beta, bip);
        out.mi = ed::mutual_information_gibbs(spectrum, cfg.beta, bip);
        return out;
      };
      const auto vals = map_samples<TfdSample>(cfg.samples, per_sample, cfg.workers);
      const double secs = timer.stop();
      std::vector<double> es, mis, slacks;
      for (const auto& v : vals) {
        es.push_back(v.entropy);
        mis.push_back(v.mi);
        slacks.push_back(2.0 * v.entropy - v.mi);
      }
      const auto me = mean_and_se(es);
      const auto mm = mean_and_se(mis);
      const auto msl = mean_and_se(slacks);
      const double x = static_cast<double>(size);
      rows.push_back({to_string(cfg.kind), alpha, size, cfg.samples, "tfd_entropy", x, me.mean,
                      me.se, secs});
      rows.push_back({to_string(cfg.kind), alpha, size, cfg.samples, "mutual_info", x, mm.mean,
                      mm.se, secs});
      rows.push_back({to_string(cfg.kind), alpha, size, cfg.samples, "tfd_bound_slack", x,
                      msl.mean, msl.se, secs});
    }
  }
}

void run_bounds(const ExperimentConfig& cfg, std::vector<ExperimentRow>& rows) {
  for (double alpha : cfg.alphas) {
    for (int size : cfg.sizes) {
      GroupTimer timer;
      const lattice::Lattice lat(cfg.dim, size);
      const auto bip = lattice::half_bipartition(lat);
      bounds::BoundParams params;
      params.g = cfg.g;
      params.k = cfg.k_local;
      params.d0 = cfg.d0;
      params.c_const = cfg.c_const;
      params.alpha = alpha;
      params.beta = cfg.beta;
      params.validate();

      const auto u_plain = bounds::u_factor_max(lat, alpha, bounds::UVariant::plain);
      const auto u_lemma = bounds::u_factor_max(lat, alpha, bounds::UVariant::lemma);
      const double u_used =
          cfg.u_variant == bounds::UVariant::plain ? u_plain.value : u_lemma.value;
      const auto bc = bounds::beta_c(u_used, params.g, params.k);
      const auto t1 = bounds::area_law_rhs(lat, bip, params);
      const double bsize = lattice::boundary_size(lat, bip);

      const auto spec = sample_spec(cfg, alpha, 0);
      std::optional<double> bound_exact;
      double bound_triangle_v = 0.0, envelope_ratio = 0.0;
      if (cfg.model == Model::bilinear) {
        const auto h = models::hopping_matrix(lat, spec);
        const auto w = bounds::boundary_norm_bound_fermion(h, bip, cfg.beta);
        bound_exact = w.bound();
        bound_triangle_v = w.bound_triangle();
        envelope_ratio = models::envelope_check(lat, h, params.g, alpha).worst_ratio;
      } else {
        const auto table = models::heisenberg_couplings(lat, spec);
        const auto w = bounds::boundary_norm_bound_heisenberg(table, bip, cfg.beta);
        if (w.norm_exact) bound_exact = w.bound();
        bound_triangle_v = w.bound_triangle();
        envelope_ratio = models::envelope_check(lat, table, params.g, alpha).worst_ratio;
      }

      const double secs = timer.stop();
      const double x = static_cast<double>(size);
      const auto put = [&](const std::string& name, double v) {
        rows.push_back({to_string(cfg.kind), alpha, size, 1, name, x, v, 0.0, secs});
      };
      put("u_plain", u_plain.value);
      put("u_lemma", u_lemma.value);
      put("beta_c_simple", bc.simple);
      put("beta_c_lambert", bc.lambert);
      put("area_law_rhs", t1.value);
      put("area_law_regime", t1.area_law_regime ? 1.0 : 0.0);
      put("boundary_size", bsize);
      put("boundary_double_sum",
          lattice::boundary_double_sum(lat, bip, 2.0 * alpha));
      if (bound_exact) put("boundary_norm_bound_exact", *bound_exact);
      put("boundary_norm_bound_triangle", bound_triangle_v);
      put("envelope_worst_ratio", envelope_ratio);
      if (alpha > lat.dimension())
        put("product_lemma_max_ratio",
            bounds::product_lemma_check(lat, alpha, params.g).max_ratio);
    }
  }
}

void run_oracle_check(const ExperimentConfig& cfg, std::vector<ExperimentRow>& rows) {
  for (double alpha : cfg.alphas) {
    for (int n : cfg.sizes) {
      GroupTimer timer;
      const lattice::Lattice lat(1, n);
      const auto bip = lattice::half_bipartition(lat);
      struct Deltas {
        double mi = 0.0;
        double essr = -1.0;
      };
      // The phase table depends only on (n, A); reuse it across samples.
      std::optional<ed::PartialTimeReversal> reversal;
      if (n <= ed::kMaxReversalModes) reversal.emplace(n, bip.a);
      const auto per_sample = [&](std::size_t s) -> Deltas {
        const auto spec = sample_spec(cfg, alpha, s);
        const auto h = models::hopping_matrix(lat, spec);
        const auto cm = gaussian::thermal_correlation_matrix(h, cfg.beta);
        const ed::FockOracle oracle(h, cfg.beta);
        Deltas d;
        d.mi = std::abs(gaussian::mutual_information(cm, bip) - oracle.mutual_information(bip));
        if (reversal) {
          const auto detailed = negativity::ssr_negativity_detailed(cm, bip);
          const double dense =
              reversal->log_trace_norm(oracle.rho().cast<std::complex<double>>());
          d.essr = std::abs(detailed.raw - dense);
        }
        return d;
      };
      const auto vals = map_samples<Deltas>(cfg.samples, per_sample, cfg.workers);
      const double secs = timer.stop();
      std::vector<double> mis, essrs;
      double mi_max = 0.0, essr_max = 0.0;
      for (const auto& v : vals) {
        mis.push_back(v.mi);
        mi_max = std::max(mi_max, v.mi);
        if (v.essr >= 0.0) {
          essrs.push_back(v.essr);
          essr_max = std::max(essr_max, v.essr);
        }
      }
      const double x = static_cast<double>(n);
      const auto mi_stats = mean_and_se(mis);
      rows.push_back({to_string(cfg.kind), alpha, n, cfg.samples, "mi_abs_diff", x,
                      mi_stats.mean, mi_stats.se, secs});
      rows.push_back({to_string(cfg.kind), alpha, n, cfg.samples, "mi_abs_diff_max", x, mi_max,
                      0.0, secs});
      if (!essrs.empty()) {
        const auto essr_stats = mean_and_se(essrs);
        rows.push_back({to_string(cfg.kind), alpha, n, cfg.samples, "essr_abs_diff", x,
                        essr_stats.mean, essr_stats.se, secs});
        rows.push_back({to_string(cfg.kind), alpha, n, cfg.samples, "essr_abs_diff_max", x,
                        essr_max, 0.0, secs});
      }
    }
  }
}

}  // namespace

ExperimentResult run_experiment(ExperimentConfig cfg) {
  cfg.resolve();
  ExperimentResult result;
  result.config = cfg;
  switch (cfg.kind) {
    case Experiment::clustering: run_clustering(cfg, result.rows); break;
    case Experiment::mutual_info: run_mutual_info(cfg, result.rows); break;
    case Experiment::negativity: run_negativity(cfg, result.rows); break;
    case Experiment::tfd: run_tfd(cfg, result.rows); break;
    case Experiment::bounds: run_bounds(cfg, result.rows); break;
    case Experiment::oracle_check: run_oracle_check(cfg, result.rows); break;
  }
  std::stable_sort(result.rows.begin(), result.rows.end(),
                   [](const ExperimentRow& a, const ExperimentRow& b) {
                     if (a.alpha != b.alpha) return a.alpha < b.alpha;
                     if (a.x != b.x) return a.x < b.x;
                     return a.observable < b.observable;
                   });
  return result;
}

std::string csv_header() { return "experiment,alpha,N,samples,observable,x,mean,stderr,seconds"; }

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string format_csv(const std::vector<ExperimentRow>& rows) {
  std::string out = csv_header();
  out += '\n';
  for (const auto& r : rows) {
    out += r.experiment;
    out += ',';
    out += format_double(r.alpha);
    out += ',';
    out += std::to_string(r.n);
    out += ',';
    out += std::to_string(r.samples);
    out += ',';
    out += r.observable;
    out += ',';
    out += format_double(r.x);
    out += ',';
    out += format_double(r.mean);
    out += ',';
    out += format_double(r.stderr_);
    out += ',';
    out += format_double(r.seconds);
    out += '\n';
  }
  return out;
}

void emit_csv(const std::vector<ExperimentRow>& rows, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw validation_error("cannot open output file '" + path + "'");
  f << format_csv(rows);
  if (!f) throw validation_error("failed writing output file '" + path + "'");
}

std::string format_config(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "# resolved experiment configuration\n";
  if (!cfg.resolved_from.empty()) out << "# resolved from " << cfg.resolved_from << "\n";
  out << "experiment = " << to_string(cfg.kind) << "\n";
  out << "model = " << to_string(cfg.model) << "\n";
  out << "dim = " << cfg.dim << "\n";
  out << "metric = " << to_string(cfg.metric) << "\n";
  out << "u_variant = " << to_string(cfg.u_variant) << "\n";
  out << "alpha = ";
  for (std::size_t i = 0; i < cfg.alphas.size(); ++i)
    out << (i ? "," : "") << format_double(cfg.alphas[i]);
  out << "\n";
  out << "sizes = ";
  for (std::size_t i = 0; i < cfg.sizes.size(); ++i) out << (i ? "," : "") << cfg.sizes[i];
  out << "\n";
  out << "beta = " << format_double(cfg.beta) << "\n";
  out << "samples = " << cfg.samples << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "scale = " << format_double(cfg.scale) << "\n";
  out << "workers = " << cfg.workers << "\n";
  out << "amplitude_lo = " << format_double(cfg.amplitude_lo) << "\n";
  out << "amplitude_hi = " << format_double(cfg.amplitude_hi) << "\n";
  out << "preset = " << cfg.preset << "\n";
  out << "out = " << cfg.out << "\n";
  out << "g = " << format_double(cfg.g) << "\n";
  out << "c_const = " << format_double(cfg.c_const) << "\n";
  out << "k_local = " << cfg.k_local << "\n";
  out << "d0 = " << cfg.d0 << "\n";
  return out.str();
}

void write_config_echo(const ExperimentConfig& cfg, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw validation_error("cannot open config echo file '" + path + "'");
  f << format_config(cfg);
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw validation_error("cannot open config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  const auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(f, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!key.empty()) out.emplace_back(key, value);
  }
  return out;
}

std::string strip_seconds_column(const std::string& csv) {
  std::string out;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    const auto comma = line.rfind(',');
    out += comma == std::string::npos ? line : line.substr(0, comma);
    out += '\n';
  }
  return out;
}

ExperimentResult run_and_write(ExperimentConfig cfg) {
  ExperimentResult result = run_experiment(std::move(cfg));
  emit_csv(result.rows, result.config.out);
  write_config_echo(result.config, result.config.out + ".config");
  return result;
}

}  // namespace lrtherm::harness
