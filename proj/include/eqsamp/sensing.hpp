#pragma once

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <type_traits>

#include "eqsamp/sampling.hpp"
#include "eqsamp/signal_model.hpp"
#include "eqsamp/spectral.hpp"

namespace eqsamp {

/// All N circular shifts of the unit-normalised monocycle. The circulant
/// structure is kept implicit: atom_spectrum is the unitary DFT of atom 0,
/// so applying the dictionary is a diagonal product in frequency domain.
template <typename Scalar>
struct Dictionary {
  MonocycleTemplate<Scalar> atom_template;
  int size = 0;                      // N atoms
  VectorX<Scalar> column_norms;      // l2 norm of the raw template, per column
  VectorXc<Scalar> atom_spectrum;    // unitary DFT of the normalised atom 0

  Eigen::Index n() const { return atom_spectrum.size(); }
};

template <typename Scalar>
Dictionary<Scalar> build_dictionary(const MonocycleTemplate<Scalar>& tmpl) {
  const Scalar norm = tmpl.waveform.norm();
  if (!(norm > Scalar(0))) throw std::invalid_argument("build_dictionary: zero template");
  const Eigen::Index n = tmpl.waveform.size();

  Dictionary<Scalar> dict;
  dict.atom_template = tmpl;
  dict.size = static_cast<int>(n);
  dict.column_norms = VectorX<Scalar>::Constant(n, norm);

  Eigen::FFT<Scalar> fft;
  VectorXc<Scalar> atom0(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    atom0(i) = std::complex<Scalar>(tmpl.waveform(i) / norm, 0);
  }
  dict.atom_spectrum = detail::unitary_fft(fft, atom0);
  return dict;
}

/// Column j of the dictionary, materialised (mainly for tests and oracles).
template <typename Scalar>
VectorX<Scalar> dictionary_atom(const Dictionary<Scalar>& dict, int j) {
  VectorX<Scalar> a0 = dict.atom_template.waveform / dict.column_norms(0);
  return circular_shift(a0, j);
}

/// Time-domain synthesis Psi * x via the circulant diagonal form.
template <typename Scalar>
Signal<Scalar> dictionary_synthesize(const Dictionary<Scalar>& dict,
                                     const std::type_identity_t<VectorX<Scalar>>& coeffs) {
  const Eigen::Index n = dict.n();
  if (coeffs.size() != n) throw std::invalid_argument("dictionary_synthesize: bad coefficient length");
  Eigen::FFT<Scalar> fft;
  VectorXc<Scalar> x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = std::complex<Scalar>(coeffs(i), 0);
  VectorXc<Scalar> spec = detail::unitary_fft(fft, x);
  spec.array() *= dict.atom_spectrum.array() * std::sqrt(Scalar(n));
  const VectorXc<Scalar> time = detail::unitary_ifft(fft, spec);
  Signal<Scalar> out;
  out.sample_rate = dict.atom_template.sample_rate;
  out.samples = time.real();
  return out;
}

/// Frequency-selected measurement of the dictionary: Delta = Phi * Psi.
/// One selected bin contributes two real rows (real and imaginary part).
/// Delta * Delta^T is diagonal with entries N|d_k|^2 / 2 because all plan
/// bins sit strictly between DC and Nyquist.
template <typename Scalar>
struct SensingOperator {
  SamplingPlan plan;
  Dictionary<Scalar> dictionary;
  int real_row_count = 0;        // 2M
  VectorX<Scalar> gram_diag;     // per selected bin: N |d_k|^2 / 2

  Eigen::Index n() const { return dictionary.n(); }
  int m() const { return plan.sample_count(); }
};

template <typename Scalar>
SensingOperator<Scalar> make_operator(const Dictionary<Scalar>& dict, const SamplingPlan& plan) {
  const Eigen::Index n = dict.n();
  if (plan.selected_bins.empty()) throw std::invalid_argument("make_operator: empty plan");
  for (std::size_t i = 0; i < plan.selected_bins.size(); ++i) {
    const int b = plan.selected_bins[i];
    if (b < 1 || b >= n / 2) throw std::invalid_argument("make_operator: bin outside (0, N/2)");
    if (i > 0 && plan.selected_bins[i] <= plan.selected_bins[i - 1]) {
      throw std::invalid_argument("make_operator: bins must be strictly increasing");
    }
  }
  SensingOperator<Scalar> op;
  op.plan = plan;
  op.dictionary = dict;
  op.real_row_count = 2 * plan.sample_count();
  op.gram_diag.resize(plan.sample_count());
  for (int i = 0; i < plan.sample_count(); ++i) {
    const Scalar mag = std::abs(dict.atom_spectrum(plan.selected_bins[static_cast<std::size_t>(i)]));
    op.gram_diag(i) = Scalar(n) * mag * mag / Scalar(2);
  }
  return op;
}

/// Real measurement vector [Re S(Omega_i); Im S(Omega_i)] plus its plan.
template <typename Scalar>
struct Measurement {
  VectorX<Scalar> values;  // length 2M
  SamplingPlan plan;
};

// Reusable FFT plans and scratch buffers; one per solver/worker, since
// Eigen::FFT objects are not safe to share across threads.
template <typename Scalar>
struct FftWorkspace {
  Eigen::FFT<Scalar> fft;
  VectorXc<Scalar> scratch_a;
  VectorXc<Scalar> scratch_b;
};

/// Select plan bins from the unitary DFT of a raw time signal.
template <typename Scalar>
Measurement<Scalar> measure(const Signal<Scalar>& signal, const SamplingPlan& plan) {
  const Spectrum<Scalar> spec = forward(signal);
  const int m = plan.sample_count();
  Measurement<Scalar> out;
  out.plan = plan;
  out.values.resize(2 * m);
  for (int i = 0; i < m; ++i) {
    const auto c = spec.coefficients(plan.selected_bins[static_cast<std::size_t>(i)]);
    out.values(i) = c.real();
    out.values(m + i) = c.imag();
  }
  return out;
}

/// Delta * x for a coefficient vector x, via the cached diagonal form.
template <typename Scalar>
VectorX<Scalar> apply_delta(const SensingOperator<Scalar>& op,
                            const std::type_identity_t<VectorX<Scalar>>& x,
                            FftWorkspace<Scalar>& ws) {
  const Eigen::Index n = op.n();
  const int m = op.m();
  ws.scratch_a.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) ws.scratch_a(i) = std::complex<Scalar>(x(i), 0);
  ws.fft.fwd(ws.scratch_b, ws.scratch_a);
  // unitary fft then * sqrt(N) * d == plain fft * d
  VectorX<Scalar> out(2 * m);
  for (int i = 0; i < m; ++i) {
    const int k = op.plan.selected_bins[static_cast<std::size_t>(i)];
    const std::complex<Scalar> v = op.dictionary.atom_spectrum(k) * ws.scratch_b(k);
    out(i) = v.real();
    out(m + i) = v.imag();
  }
  return out;
}

/// Delta^T * y, the exact adjoint of apply_delta on real vectors.
template <typename Scalar>
VectorX<Scalar> apply_delta_adjoint(const SensingOperator<Scalar>& op,
                                    const std::type_identity_t<VectorX<Scalar>>& y,
                                    FftWorkspace<Scalar>& ws) {
  const Eigen::Index n = op.n();
  const int m = op.m();
  ws.scratch_a = VectorXc<Scalar>::Zero(n);
  for (int i = 0; i < m; ++i) {
    const int k = op.plan.selected_bins[static_cast<std::size_t>(i)];
    ws.scratch_a(k) = std::conj(op.dictionary.atom_spectrum(k)) * std::complex<Scalar>(y(i), y(m + i));
  }
  ws.fft.inv(ws.scratch_b, ws.scratch_a);  // (1/N) * conj-DFT
  VectorX<Scalar> out(n);
  for (Eigen::Index i = 0; i < n; ++i) out(i) = Scalar(n) * ws.scratch_b(i).real();
  return out;
}

template <typename Scalar>
Measurement<Scalar> apply_delta(const SensingOperator<Scalar>& op,
                                const std::type_identity_t<VectorX<Scalar>>& coefficients) {
  FftWorkspace<Scalar> ws;
  Measurement<Scalar> out;
  out.plan = op.plan;
  out.values = apply_delta(op, coefficients, ws);
  return out;
}

// Eq-4 style mutual coherence, scaled by sqrt(N) so that a DFT-row/spike
// pair scores 1 and a spike/spike pair scores sqrt(N). For this operator the
// unit-normalised measurement row for bin k has |<phi_k, psi_j>| = |d_k| for
// every column j, so the maximum is over plan bins only.
template <typename Scalar>
Scalar coherence(const SamplingPlan& plan, const Dictionary<Scalar>& dict) {
  if (plan.selected_bins.empty()) throw std::invalid_argument("coherence: empty plan");
  Scalar best = Scalar(0);
  for (int k : plan.selected_bins) {
    best = std::max(best, std::abs(dict.atom_spectrum(k)));
  }
  return best * std::sqrt(Scalar(dict.n()));
}

/// K >= C * mu^2 * F * log(N), rounded up.
inline int required_samples(double mu, int dof, int n, double c) {
  if (!(mu > 0) || dof < 1 || n < 2 || !(c > 0)) {
    throw std::invalid_argument("required_samples: all arguments must be positive");
  }
  return static_cast<int>(std::ceil(c * mu * mu * static_cast<double>(dof) * std::log(static_cast<double>(n))));
}

}  // namespace eqsamp
