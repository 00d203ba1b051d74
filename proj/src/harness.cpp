#include "eqsamp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <stdexcept>
#include <thread>

namespace eqsamp {

Band ExperimentConfig::resolved_band() const {
  const int lo = band_lo > 0 ? band_lo : 1;
  const int hi = band_hi > 0 ? band_hi : n / 2 - 1;
  return make_band(lo, hi);
}

ExperimentContext make_context(const ExperimentConfig& config) {
  ExperimentContext ctx;
  ctx.tmpl = make_monocycle<double>(config.center_frequency, config.sample_rate, config.n);
  ctx.dictionary = build_dictionary(ctx.tmpl);
  ctx.band = config.resolved_band();
  if (ctx.band.upper_bin >= config.n / 2) {
    throw std::invalid_argument("config: band must stay strictly below Nyquist");
  }
  ctx.guard = config.guard > 0 ? config.guard : ctx.tmpl.duration_bins;

  Signal<double> unit_template{ctx.tmpl.waveform, config.sample_rate};
  ctx.template_profile = make_energy_profile(forward(unit_template), ctx.band, 1);
  return ctx;
}

std::uint64_t scene_seed(const ExperimentConfig& config, int dof, int m, int trial) {
  return mix_seed({config.base_seed, static_cast<std::uint64_t>(dof),
                   static_cast<std::uint64_t>(m), static_cast<std::uint64_t>(trial)});
}

namespace {

std::uint64_t plan_seed(const ExperimentConfig& config, Scheme scheme, int dof, int m, int trial) {
  return mix_seed({config.base_seed, static_cast<std::uint64_t>(scheme) + 1,
                   static_cast<std::uint64_t>(dof), static_cast<std::uint64_t>(m),
                   static_cast<std::uint64_t>(trial)});
}

}  // namespace

SamplingPlan trial_plan(const ExperimentConfig& config, const ExperimentContext& ctx, Scheme scheme,
                        int dof, int sample_count, int trial) {
  switch (scheme) {
    case Scheme::Fes:
      return plan_fes(ctx.band, sample_count);
    case Scheme::Random:
      return plan_random(ctx.band, sample_count, plan_seed(config, scheme, dof, sample_count, trial));
    default: {
      EnergyProfile<double> profile = ctx.template_profile;
      if (config.ees_prior == EesPrior::Scene) {
        const auto scene = make_scene<double>(dof, scene_seed(config, dof, sample_count, trial),
                                              config.amplitude_lo, config.amplitude_hi, ctx.guard,
                                              config.n);
        profile = make_energy_profile(forward(synthesize(scene, ctx.tmpl)), ctx.band, sample_count);
      } else {
        profile.per_band_target = profile.total / sample_count;
      }
      return plan_ees(profile, ctx.band, sample_count, config.midpoint);
    }
  }
}

TrialRecord run_trial(const ExperimentConfig& config, const ExperimentContext& ctx, Scheme scheme,
                      int dof, int sample_count, int trial) {
  const auto t0 = std::chrono::steady_clock::now();

  const std::uint64_t sseed = scene_seed(config, dof, sample_count, trial);
  const auto scene = make_scene<double>(dof, sseed, config.amplitude_lo, config.amplitude_hi,
                                        ctx.guard, config.n);
  const Signal<double> truth = synthesize(scene, ctx.tmpl);

  const SamplingPlan plan = trial_plan(config, ctx, scheme, dof, sample_count, trial);
  const Measurement<double> meas = measure(truth, plan);

  L1Problem<double> problem;
  problem.op = make_operator(ctx.dictionary, plan);
  problem.measurement = meas.values;
  problem.weights = VectorX<double>::Ones(config.n);
  problem.feasibility_tolerance = config.feasibility_tolerance;
  problem.max_iterations = config.max_iterations;
  problem.shrink_scale = config.shrink_scale;

  const SolverResult<double> sol = solve_l1(problem);
  const Signal<double> recon = dictionary_synthesize(ctx.dictionary, sol.coefficients);
  const EvalReport<double> report = psnr(truth, recon);

  TrialRecord rec;
  rec.scheme = scheme;
  rec.dof = dof;
  rec.sample_count = sample_count;
  rec.seed = sseed;
  rec.psnr_db = report.psnr_db;
  rec.spectrum_l2_error = report.spectrum_l2_error;
  rec.solver_iterations = sol.iterations;
  rec.converged = sol.converged;
  rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n == 0) return 0;
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

SweepResult run_sweep(const ExperimentConfig& config) {
  const ExperimentContext ctx = make_context(config);

  struct Task {
    Scheme scheme;
    int dof;
    int m;
    int trial;
  };
  std::vector<Task> tasks;
  for (Scheme scheme : config.schemes) {
    for (int dof : config.dof_list) {
      for (int m : config.sample_counts) {
        for (int t = 0; t < config.trials; ++t) {
          tasks.push_back({scheme, dof, m, t});
        }
      }
    }
  }

  SweepResult result;
  result.records.resize(tasks.size());

  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      const Task& t = tasks[i];
      result.records[i] = run_trial(config, ctx, t.scheme, t.dof, t.m, t.trial);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(jobs));
    for (int w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1)) {
          const Task& t = tasks[i];
          result.records[i] = run_trial(config, ctx, t.scheme, t.dof, t.m, t.trial);
        }
      });
    }
    for (auto& w : workers) w.join();
  }

  for (Scheme scheme : config.schemes) {
    for (int dof : config.dof_list) {
      for (int m : config.sample_counts) {
        CellSummary cell;
        cell.scheme = scheme;
        cell.dof = dof;
        cell.sample_count = m;
        std::vector<double> psnrs;
        double spec_sum = 0;
        for (const TrialRecord& r : result.records) {
          if (r.scheme == scheme && r.dof == dof && r.sample_count == m) {
            ++cell.trials;
            psnrs.push_back(r.psnr_db);
            spec_sum += r.spectrum_l2_error;
            cell.converged_count += r.converged ? 1 : 0;
          }
        }
        if (cell.trials > 0) {
          double acc = 0;
          for (double p : psnrs) acc += p;
          cell.mean_psnr_db = acc / cell.trials;
          cell.median_psnr_db = median(psnrs);
          cell.mean_spectrum_l2_error = spec_sum / cell.trials;
        }
        result.summary.push_back(cell);
      }
    }
  }
  return result;
}

}  // namespace eqsamp
