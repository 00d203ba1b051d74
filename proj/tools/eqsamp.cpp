// Benchmark CLI: frequency-domain sampling schemes (FES / random / EES)
// compared through l1 reconstruction of sparse UWB monocycle traces.

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "eqsamp/harness.hpp"
#include "eqsamp/svg.hpp"

namespace {

using namespace eqsamp;

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool plot_trials = false;
  bool timings = false;
  int jobs = 0;
};

ExperimentConfig resolve_config(const CommonFlags& flags) {
  ExperimentConfig config;
  if (!flags.config_path.empty()) config = load_config(flags.config_path);
  if (flags.seed_set) config.base_seed = flags.seed;
  if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
  if (flags.plot_trials) config.plot_trials = true;
  if (flags.timings) config.timings = true;
  if (flags.jobs > 0) config.jobs = flags.jobs;
  return config;
}

// Fail before any computation if the output directory is not writable.
void ensure_writable(const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + out_dir + "'");
  const fs::path probe = fs::path(out_dir) / ".write_probe";
  {
    std::ofstream f(probe);
    if (!f) throw std::runtime_error("output directory '" + out_dir + "' is not writable");
  }
  fs::remove(probe, ec);
}

int cmd_run(const CommonFlags& flags) {
  const ExperimentConfig config = resolve_config(flags);
  ensure_writable(config.out_dir);

  const auto t0 = std::chrono::steady_clock::now();
  const SweepResult result = run_sweep(config);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const auto files = emit_outputs(result, config);
  std::cout << "ran " << result.records.size() << " trials in " << elapsed << " s\n";
  for (const auto& f : files) std::cout << "wrote " << f << "\n";
  return 0;
}

int cmd_plan(const ExperimentConfig& base, const std::string& scheme_name, int samples,
             std::uint64_t seed, const std::string& midpoint, const std::string& out_path) {
  ExperimentConfig config = base;
  if (midpoint == "geometric") config.midpoint = MidpointRule::Geometric;
  else if (midpoint == "energy") config.midpoint = MidpointRule::Energy;
  else throw std::runtime_error("plan: midpoint must be 'energy' or 'geometric'");

  const ExperimentContext ctx = make_context(config);
  SamplingPlan plan;
  if (scheme_name == "fes") {
    plan = plan_fes(ctx.band, samples);
  } else if (scheme_name == "random") {
    plan = plan_random(ctx.band, samples, seed);
  } else if (scheme_name == "ees") {
    EnergyProfile<double> profile = ctx.template_profile;
    profile.per_band_target = profile.total / samples;
    plan = plan_ees(profile, ctx.band, samples, config.midpoint);
  } else {
    throw std::runtime_error("plan: scheme must be fes, random or ees");
  }

  const std::string text = format_plan(plan);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    out << text;
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

// One paired comparison at 14 samples, DoF 1: reconstruction overlays and a
// spectrum overlay, the shape of the paper's demonstration figures.
int cmd_demo(const CommonFlags& flags) {
  ExperimentConfig config = resolve_config(flags);
  config.dof_list = {1};
  config.sample_counts = {14};
  config.trials = 1;
  ensure_writable(config.out_dir);

  const ExperimentContext ctx = make_context(config);
  const std::uint64_t sseed = scene_seed(config, 1, 14, 0);
  const auto scene = make_scene<double>(1, sseed, config.amplitude_lo, config.amplitude_hi,
                                        ctx.guard, config.n);
  const Signal<double> truth = synthesize(scene, ctx.tmpl);

  std::vector<svg::Series> waves;
  {
    svg::Series s;
    s.label = "original";
    s.color = "#444444";
    for (int i = 0; i < config.n; ++i) {
      s.x.push_back(i);
      s.y.push_back(truth.samples(i));
    }
    waves.push_back(std::move(s));
  }
  std::vector<svg::Series> spectra = waves;
  spectra[0].x.clear();
  spectra[0].y.clear();
  const VectorX<double> mag_orig = forward(truth).energy_density;
  for (int k = 0; k < config.n / 2; ++k) {
    spectra[0].x.push_back(k);
    spectra[0].y.push_back(mag_orig(k));
  }

  std::cout << "demo: N=" << config.n << ", 14 samples, DoF 1, seed " << config.base_seed << "\n";
  const char* colors[] = {"#2ca02c", "#1f77b4", "#d62728"};
  const Scheme order[] = {Scheme::Ees, Scheme::Random, Scheme::Fes};
  for (int i = 0; i < 3; ++i) {
    const TrialRecord rec = run_trial(config, ctx, order[i], 1, 14, 0);
    const SamplingPlan plan = trial_plan(config, ctx, order[i], 1, 14, 0);

    L1Problem<double> problem;
    problem.op = make_operator(ctx.dictionary, plan);
    problem.measurement = measure(truth, plan).values;
    problem.weights = VectorX<double>::Ones(config.n);
    problem.feasibility_tolerance = config.feasibility_tolerance;
    problem.max_iterations = config.max_iterations;
    problem.shrink_scale = config.shrink_scale;
    const SolverResult<double> sol = solve_l1(problem);
    const Signal<double> recon = dictionary_synthesize(ctx.dictionary, sol.coefficients);

    svg::Series w;
    w.label = to_string(order[i]);
    w.color = colors[i];
    for (int t = 0; t < config.n; ++t) {
      w.x.push_back(t);
      w.y.push_back(recon.samples(t));
    }
    waves.push_back(w);

    svg::Series sp;
    sp.label = to_string(order[i]);
    sp.color = colors[i];
    const VectorX<double> mag = forward(recon).energy_density;
    for (int k = 0; k < config.n / 2; ++k) {
      sp.x.push_back(k);
      sp.y.push_back(mag(k));
    }
    spectra.push_back(sp);

    std::cout << "  " << to_string(order[i]) << ": PSNR " << rec.psnr_db << " dB, "
              << rec.solver_iterations << " iterations, "
              << (rec.converged ? "converged" : "not converged") << "\n";
  }

  namespace fs = std::filesystem;
  const auto wave_path = fs::path(config.out_dir) / "demo_waveforms.svg";
  const auto spec_path = fs::path(config.out_dir) / "demo_spectra.svg";
  std::ofstream(wave_path) << svg::line_chart("Reconstructions at 14 samples", "sample",
                                              "amplitude", waves, 900, 420);
  std::ofstream(spec_path) << svg::line_chart("Magnitude spectra", "bin", "|S|", spectra, 900, 420);
  std::cout << "wrote " << wave_path.string() << "\n";
  std::cout << "wrote " << spec_path.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-equipartition sampling benchmark for compressive UWB recovery"};
  app.require_subcommand(1);

  CommonFlags flags;

  auto* run = app.add_subcommand("run", "Run the configured benchmark sweep");
  run->add_option("--config", flags.config_path, "Config file (key = value lines)");
  auto* run_seed = run->add_option("--seed", flags.seed, "Override base_seed");
  run->add_option("--out-dir", flags.out_dir, "Override output directory");
  run->add_flag("--plot-trials", flags.plot_trials, "Write per-trial overlay SVGs");
  run->add_flag("--timings", flags.timings, "Record measured wall time in records.csv");
  run->add_option("--jobs", flags.jobs, "Worker threads for trials");

  std::string plan_scheme = "ees";
  int plan_samples = 14;
  std::uint64_t plan_seed_value = 0;
  std::string plan_midpoint = "energy";
  std::string plan_out;
  auto* plan = app.add_subcommand("plan", "Print a sampling plan");
  plan->add_option("--config", flags.config_path, "Config file (key = value lines)");
  plan->add_option("--scheme", plan_scheme, "fes | random | ees")->required();
  plan->add_option("--samples", plan_samples, "Number of selected frequencies")->required();
  plan->add_option("--seed", plan_seed_value, "Seed for the random scheme");
  plan->add_option("--midpoint", plan_midpoint, "energy | geometric (EES only)");
  plan->add_option("--out", plan_out, "Write the plan to a file instead of stdout");

  auto* demo = app.add_subcommand("demo", "Paired 14-sample comparison with overlay figures");
  demo->add_option("--config", flags.config_path, "Config file (key = value lines)");
  auto* demo_seed = demo->add_option("--seed", flags.seed, "Override base_seed");
  demo->add_option("--out-dir", flags.out_dir, "Override output directory");

  CLI11_PARSE(app, argc, argv);
  flags.seed_set = (run_seed->count() > 0) || (demo_seed->count() > 0);

  try {
    if (run->parsed()) return cmd_run(flags);
    if (plan->parsed()) {
      const ExperimentConfig base =
          flags.config_path.empty() ? ExperimentConfig{} : load_config(flags.config_path);
      return cmd_plan(base, plan_scheme, plan_samples, plan_seed_value, plan_midpoint, plan_out);
    }
    if (demo->parsed()) return cmd_demo(flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
