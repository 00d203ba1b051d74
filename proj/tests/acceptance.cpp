// Acceptance suite: runs the benchmark's headline claims end to end and
// prints one PASS/FAIL line per criterion. Exits nonzero if any fail.

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "eqsamp/harness.hpp"
#include "oracles.hpp"

using namespace eqsamp;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s — %s\n", pass ? "PASS" : "FAIL", idx, name.c_str(),
              detail.c_str());
  if (!pass) ++failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

using CellKey = std::tuple<int, int, int>;  // scheme index, dof, m

std::map<CellKey, double> cell_means(const SweepResult& sweep) {
  std::map<CellKey, double> means;
  for (const auto& cell : sweep.summary) {
    means[{static_cast<int>(cell.scheme), cell.dof, cell.sample_count}] = cell.mean_psnr_db;
  }
  return means;
}

// Criteria 1 and 2 share the default-configuration sweep.
void criteria_1_2(const ExperimentConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  const SweepResult sweep = run_sweep(config);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto means = cell_means(sweep);

  // Ordering: EES >= RANDOM >= FES at every sample count, per DoF, with
  // slack: each inequality may fail at most once per DoF and by <= 1 dB.
  bool ordering_ok = true;
  std::string worst;
  for (int dof : config.dof_list) {
    int ees_rand_fail = 0, rand_fes_fail = 0;
    for (int m : config.sample_counts) {
      const double ees = means.at({static_cast<int>(Scheme::Ees), dof, m});
      const double rnd = means.at({static_cast<int>(Scheme::Random), dof, m});
      const double fes = means.at({static_cast<int>(Scheme::Fes), dof, m});
      if (ees < rnd) {
        ++ees_rand_fail;
        if (rnd - ees > 1.0) ordering_ok = false;
        worst += " [dof" + std::to_string(dof) + " m" + std::to_string(m) + " EES<RAND by " +
                 fmt(rnd - ees) + "]";
      }
      if (rnd < fes) {
        ++rand_fes_fail;
        if (fes - rnd > 1.0) ordering_ok = false;
        worst += " [dof" + std::to_string(dof) + " m" + std::to_string(m) + " RAND<FES by " +
                 fmt(fes - rnd) + "]";
      }
    }
    if (ees_rand_fail > 1 || rand_fes_fail > 1) ordering_ok = false;
  }
  const bool runtime_ok = elapsed < 300.0;
  report(1, "scheme ordering EES >= RANDOM >= FES",
         ordering_ok && runtime_ok,
         "sweep " + fmt(elapsed) + " s (target < 300)" + (worst.empty() ? "" : ";" + worst));

  const double ees14 = means.at({static_cast<int>(Scheme::Ees), 1, 14});
  const double fes14 = means.at({static_cast<int>(Scheme::Fes), 1, 14});
  report(2, "14-sample anchor (EES >= 15 dB, FES <= 0 dB)", ees14 >= 15.0 && fes14 <= 0.0,
         "EES " + fmt(ees14) + " dB, FES " + fmt(fes14) + " dB");
}

void criterion_3(const ExperimentConfig& config) {
  const ExperimentContext ctx = make_context(config);
  const int m = 14;
  EnergyProfile<double> profile = ctx.template_profile;
  profile.per_band_target = profile.total / m;
  const auto plan = plan_ees(profile, ctx.band, m);

  const double eps = profile.total / m;
  const double max_bin = profile.density.maxCoeff();
  bool ok = true;
  double worst = 0;
  for (int i = 0; i < m; ++i) {
    const Band sub = plan.subband_bounds[static_cast<std::size_t>(i)];
    double sum = 0;
    for (int k = sub.lower_bin; k <= sub.upper_bin; ++k) {
      sum += profile.density(k - ctx.band.lower_bin);
    }
    worst = std::max(worst, std::abs(sum - eps));
    if (std::abs(sum - eps) > max_bin + 1e-12 * profile.total) ok = false;
  }

  bool flat_ok = true;
  for (auto [lo, hi, mm] : {std::tuple{1, 127, 14}, {1, 120, 7}, {3, 60, 11}}) {
    const Band band = make_band(lo, hi);
    EnergyProfile<double> flat;
    flat.band = band;
    flat.density = VectorX<double>::Constant(band.width(), 0.7311);
    flat.total = flat.density.sum();
    flat.per_band_target = flat.total / mm;
    if (plan_ees(flat, band, mm).selected_bins != plan_fes(band, mm).selected_bins) flat_ok = false;
  }
  report(3, "EES equipartition and flat-spectrum reduction to FES", ok && flat_ok,
         "max |subband energy - eps| = " + fmt(worst) + " vs bin weight " + fmt(max_bin) +
             (flat_ok ? "; flat==FES" : "; flat!=FES"));
}

void criterion_4() {
  Rng rng(0xACCE5501ULL);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Signal<double> sig{VectorX<double>(256), 1.0};
    for (int i = 0; i < 256; ++i) sig.samples(i) = rng.uniform01() * 2.0 - 1.0;
    const auto [te, fe] = check_parseval(sig);
    worst = std::max(worst, std::abs(te - fe) / te);
  }
  report(4, "Parseval identity on 100 random signals", worst < 1e-12,
         "worst relative difference " + std::to_string(worst));
}

void criterion_5() {
  const int n = 16;
  const auto tmpl = make_monocycle<double>(2e9, 16e9, n);
  const auto dict = build_dictionary(tmpl);
  const Band band = make_band(1, n / 2 - 1);

  int certified = 0, matched = 0;
  const int total = 200;
  for (int t = 0; t < total; ++t) {
    const std::uint64_t seed = 0xC5ULL * 1000 + static_cast<std::uint64_t>(t);
    const int dof = 1 + (t % 2);
    const int m = 6 + (t % 2);
    const auto scene = make_scene<double>(dof, seed, 0.3, 1.0, 2, n);
    const auto truth = synthesize(scene, tmpl);
    const auto plan = plan_random(band, m, seed ^ 0x9999ULL);

    L1Problem<double> problem;
    problem.op = make_operator(dict, plan);
    problem.measurement = measure(truth, plan).values;
    problem.weights = VectorX<double>::Ones(n);

    const Eigen::MatrixXd dense = oracle::dense_delta(tmpl.waveform, plan);
    const auto best = oracle::brute_force_min_l1(dense, problem.measurement, 2,
                                                 problem.feasibility_tolerance);
    if (!best || !best->unique) continue;
    ++certified;

    const auto r = solve_l1(problem);
    const double scale = std::max(best->coefficients.cwiseAbs().maxCoeff(), 1e-12);
    if ((r.coefficients - best->coefficients).cwiseAbs().maxCoeff() <= 1e-5 * scale) ++matched;
  }
  report(5, "solver equals brute-force minimal-l1 oracle (N=16)",
         certified >= total / 2 && matched == certified,
         std::to_string(certified) + "/" + std::to_string(total) + " certified unique, " +
             std::to_string(matched) + " matched");
}

void criterion_6(const ExperimentConfig& config) {
  const ExperimentContext ctx = make_context(config);
  const auto plan = plan_fes(ctx.band, ctx.band.width());

  bool recovery_ok = true;
  std::string detail;
  for (int dof : {1, 2, 3}) {
    const auto scene = make_scene<double>(dof, 4600 + static_cast<std::uint64_t>(dof),
                                          config.amplitude_lo, config.amplitude_hi, ctx.guard,
                                          config.n);
    const auto truth = synthesize(scene, ctx.tmpl);
    L1Problem<double> problem;
    problem.op = make_operator(ctx.dictionary, plan);
    problem.measurement = measure(truth, plan).values;
    problem.weights = VectorX<double>::Ones(config.n);
    problem.feasibility_tolerance = config.feasibility_tolerance;
    problem.max_iterations = config.max_iterations;
    problem.shrink_scale = config.shrink_scale;
    const auto sol = solve_l1(problem);
    const auto recon = dictionary_synthesize(ctx.dictionary, sol.coefficients);
    const double p = psnr(truth, recon).psnr_db;
    detail += " dof" + std::to_string(dof) + ": " + fmt(p) + " dB";
    if (!(p > 100.0)) recovery_ok = false;
  }

  ExperimentConfig small = config;
  small.dof_list = {1};
  small.sample_counts = {6, 14};
  small.trials = 2;
  const auto run_a = run_sweep(small);
  const auto run_b = run_sweep(small);
  const bool bytes_ok = records_csv(run_a.records, small.timings) ==
                            records_csv(run_b.records, small.timings) &&
                        summary_csv(run_a.summary) == summary_csv(run_b.summary);

  report(6, "full-band recovery > 100 dB and byte-identical reruns", recovery_ok && bytes_ok,
         detail + (bytes_ok ? "; csv identical" : "; csv differs"));
}

void criterion_7(const ExperimentConfig& config) {
  // Adjoint identity on 100 random pairs across assorted operators.
  double worst_adjoint = 0;
  {
    const auto tmpl = make_monocycle<double>(2e9, 32e9, 256);
    const auto dict = build_dictionary(tmpl);
    FftWorkspace<double> ws;
    Rng rng(0x77AD70ULL);
    const Band band = make_band(1, 127);
    std::vector<SamplingPlan> plans = {plan_fes(band, 14), plan_random(band, 24, 5),
                                       plan_fes(band, 127)};
    for (int pair = 0; pair < 100; ++pair) {
      const auto& plan = plans[static_cast<std::size_t>(pair % plans.size())];
      const auto op = make_operator(dict, plan);
      VectorX<double> x(256), y(2 * op.m());
      for (int i = 0; i < 256; ++i) x(i) = rng.uniform01() - 0.5;
      for (int i = 0; i < 2 * op.m(); ++i) y(i) = rng.uniform01() - 0.5;
      const double lhs = apply_delta(op, x, ws).dot(y);
      const double rhs = x.dot(apply_delta_adjoint(op, y, ws));
      worst_adjoint = std::max(worst_adjoint, std::abs(lhs - rhs) / (x.norm() * y.norm()));
    }
  }

  // Dense equivalence for every operator size up to 64.
  double worst_dense = 0;
  for (int n : {8, 16, 32, 64}) {
    const auto tmpl = make_monocycle<double>(2e9, 16e9, n);
    const auto dict = build_dictionary(tmpl);
    const Band band = make_band(1, n / 2 - 1);
    const Signal<double> unit{tmpl.waveform, tmpl.sample_rate};
    const int m = std::min(5, band.width());
    auto profile = make_energy_profile(forward(unit), band, m);
    std::vector<SamplingPlan> plans = {plan_fes(band, m),
                                       plan_random(band, m, static_cast<std::uint64_t>(n)),
                                       plan_ees(profile, band, m), plan_fes(band, band.width())};
    Rng rng(0xDE45EULL + static_cast<std::uint64_t>(n));
    for (const auto& plan : plans) {
      const auto op = make_operator(dict, plan);
      const Eigen::MatrixXd dense = oracle::dense_delta(tmpl.waveform, plan);
      for (int trial = 0; trial < 3; ++trial) {
        VectorX<double> x(n);
        for (int i = 0; i < n; ++i) x(i) = rng.uniform01() - 0.5;
        const VectorX<double> fast = apply_delta(op, x).values;
        const VectorX<double> slow = dense * x;
        worst_dense =
            std::max(worst_dense, (fast - slow).norm() / std::max(1.0, slow.norm()));
      }
    }
  }
  (void)config;
  report(7, "operator adjoint and dense-materialisation equivalence",
         worst_adjoint < 1e-10 && worst_dense < 1e-10,
         "adjoint " + std::to_string(worst_adjoint) + ", dense " + std::to_string(worst_dense));
}

void criterion_8(const ExperimentConfig& config) {
  const ExperimentContext ctx = make_context(config);
  const std::uint64_t seed = 0xC8ULL;
  const int dof = 2;
  const auto scene =
      make_scene<double>(dof, seed, config.amplitude_lo, config.amplitude_hi, ctx.guard, config.n);
  const auto truth = synthesize(scene, ctx.tmpl);
  VectorX<double> true_coeffs = VectorX<double>::Zero(config.n);
  for (const auto& ev : scene.events) {
    true_coeffs(ev.shift_bin) = ev.amplitude * ctx.tmpl.waveform.norm();
  }

  const auto solve_with = [&](int m, bool known_support) {
    const auto plan = plan_random(ctx.band, m, seed ^ 0x1234ULL);
    L1Problem<double> problem;
    problem.op = make_operator(ctx.dictionary, plan);
    problem.measurement = measure(truth, plan).values;
    problem.weights = VectorX<double>::Ones(config.n);
    if (known_support) {
      for (const auto& ev : scene.events) problem.weights(ev.shift_bin) = 0.0;
    }
    problem.feasibility_tolerance = config.feasibility_tolerance;
    problem.max_iterations = config.max_iterations;
    problem.shrink_scale = config.shrink_scale;
    const auto sol = solve_l1(problem);
    return (sol.coefficients - true_coeffs).norm() / true_coeffs.norm();
  };

  const int m_small = 3;
  const int m_large = 14;
  const double known_err = solve_with(m_small, true);
  const double plain_small_err = solve_with(m_small, false);
  const double plain_large_err = solve_with(m_large, false);
  report(8, "known-support mode recovers from fewer measurements",
         known_err < 1e-8 && plain_small_err > 1e-3 && plain_large_err < 1e-6,
         "known@m=3: " + std::to_string(known_err) + ", plain@m=3: " +
             std::to_string(plain_small_err) + ", plain@m=14: " + std::to_string(plain_large_err));
}

}  // namespace

int main() {
  const ExperimentConfig config;  // shipped defaults
  std::printf("acceptance suite: N=%d, fc=%.3g Hz, fs=%.3g Hz, trials=%d, base_seed=%llu\n",
              config.n, config.center_frequency, config.sample_rate, config.trials,
              static_cast<unsigned long long>(config.base_seed));

  criteria_1_2(config);
  criterion_3(config);
  criterion_4();
  criterion_5();
  criterion_6(config);
  criterion_7(config);
  criterion_8(config);

  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
