#include "eqsamp/harness.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "eqsamp/svg.hpp"

namespace eqsamp {

namespace {

std::string fixed6(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string sci9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9e", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << contents;
}

const char* scheme_color(Scheme s) {
  switch (s) {
    case Scheme::Fes: return "#d62728";
    case Scheme::Random: return "#1f77b4";
    default: return "#2ca02c";
  }
}

}  // namespace

std::string records_csv(const std::vector<TrialRecord>& records, bool timings) {
  std::ostringstream os;
  os << "scheme,dof,sample_count,seed,psnr_db,spectrum_l2_error,solver_iterations,converged,"
        "wall_time\n";
  for (const TrialRecord& r : records) {
    os << to_string(r.scheme) << ',' << r.dof << ',' << r.sample_count << ',' << r.seed << ','
       << fixed6(r.psnr_db) << ',' << sci9(r.spectrum_l2_error) << ',' << r.solver_iterations
       << ',' << (r.converged ? "true" : "false") << ','
       << fixed6(timings ? r.wall_time : 0.0) << '\n';
  }
  return os.str();
}

std::string summary_csv(const std::vector<CellSummary>& summary) {
  std::ostringstream os;
  os << "scheme,dof,sample_count,trials,mean_psnr_db,median_psnr_db,mean_spectrum_l2_error,"
        "converged_count\n";
  for (const CellSummary& c : summary) {
    os << to_string(c.scheme) << ',' << c.dof << ',' << c.sample_count << ',' << c.trials << ','
       << fixed6(c.mean_psnr_db) << ',' << fixed6(c.median_psnr_db) << ','
       << sci9(c.mean_spectrum_l2_error) << ',' << c.converged_count << '\n';
  }
  return os.str();
}

std::vector<std::string> emit_outputs(const SweepResult& result, const ExperimentConfig& config) {
  if (result.records.empty()) throw std::invalid_argument("emit_outputs: no records");
  const std::filesystem::path dir(config.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir.string() + "'");

  std::vector<std::string> written;
  const auto emit = [&](const std::string& name, const std::string& contents) {
    write_file(dir / name, contents);
    written.push_back((dir / name).string());
  };

  emit("records.csv", records_csv(result.records, config.timings));
  emit("summary.csv", summary_csv(result.summary));

  for (int dof : config.dof_list) {
    std::vector<svg::Series> series;
    for (Scheme scheme : config.schemes) {
      svg::Series s;
      s.label = to_string(scheme);
      s.color = scheme_color(scheme);
      for (const CellSummary& c : result.summary) {
        if (c.scheme == scheme && c.dof == dof) {
          s.x.push_back(c.sample_count);
          s.y.push_back(c.mean_psnr_db);
        }
      }
      series.push_back(std::move(s));
    }
    const std::string title = "Mean PSNR vs sample count (DoF " + std::to_string(dof) + ")";
    emit("psnr_dof" + std::to_string(dof) + ".svg",
         svg::line_chart(title, "samples", "PSNR (dB)", series));
  }

  if (config.plot_trials) {
    const ExperimentContext ctx = make_context(config);
    for (const TrialRecord& r : result.records) {
      // Regenerate the trial deterministically; cheap next to the sweep.
      const auto scene = make_scene<double>(r.dof, r.seed, config.amplitude_lo,
                                            config.amplitude_hi, ctx.guard, config.n);
      const Signal<double> truth = synthesize(scene, ctx.tmpl);
      int trial = 0;
      for (; trial < config.trials; ++trial) {
        if (scene_seed(config, r.dof, r.sample_count, trial) == r.seed) break;
      }
      const SamplingPlan plan = trial_plan(config, ctx, r.scheme, r.dof, r.sample_count, trial);

      L1Problem<double> problem;
      problem.op = make_operator(ctx.dictionary, plan);
      problem.measurement = measure(truth, plan).values;
      problem.weights = VectorX<double>::Ones(config.n);
      problem.feasibility_tolerance = config.feasibility_tolerance;
      problem.max_iterations = config.max_iterations;
      problem.shrink_scale = config.shrink_scale;
      const SolverResult<double> sol = solve_l1(problem);
      const Signal<double> recon = dictionary_synthesize(ctx.dictionary, sol.coefficients);

      std::vector<svg::Series> wave(2);
      wave[0].label = "original";
      wave[0].color = "#444444";
      wave[1].label = "reconstruction";
      wave[1].color = scheme_color(r.scheme);
      for (int i = 0; i < config.n; ++i) {
        wave[0].x.push_back(i);
        wave[0].y.push_back(truth.samples(i));
        wave[1].x.push_back(i);
        wave[1].y.push_back(recon.samples(i));
      }
      std::vector<svg::Series> spec(2);
      spec[0].label = "original";
      spec[0].color = "#444444";
      spec[1].label = "reconstruction";
      spec[1].color = scheme_color(r.scheme);
      const VectorX<double> mo = forward(truth).energy_density;
      const VectorX<double> mr = forward(recon).energy_density;
      for (int k = 0; k < config.n / 2; ++k) {
        spec[0].x.push_back(k);
        spec[0].y.push_back(mo(k));
        spec[1].x.push_back(k);
        spec[1].y.push_back(mr(k));
      }
      std::ostringstream base;
      base << "trial_" << to_string(r.scheme) << "_dof" << r.dof << "_m" << r.sample_count << "_t"
           << trial;
      emit(base.str() + "_wave.svg",
           svg::line_chart(base.str(), "sample", "amplitude", wave, 820, 320));
      emit(base.str() + "_spectrum.svg",
           svg::line_chart(base.str() + " spectrum", "bin", "|S|", spec, 820, 320));
    }
  }
  return written;
}

}  // namespace eqsamp
