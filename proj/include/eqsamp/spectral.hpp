#pragma once

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

#include <complex>
#include <utility>

#include "eqsamp/signal_model.hpp"

namespace eqsamp {

template <typename Scalar>
using VectorXc = Eigen::Vector<std::complex<Scalar>, Eigen::Dynamic>;

/// Unitary DFT coefficients plus the derived energy density |S(Omega)|.
template <typename Scalar>
struct Spectrum {
  VectorXc<Scalar> coefficients;
  VectorX<Scalar> bin_frequencies;  // k * fs / N, k = 0..N-1
  VectorX<Scalar> energy_density;   // |coefficients|
  Scalar sample_rate = Scalar(0);

  Eigen::Index size() const { return coefficients.size(); }
};

namespace detail {

// Unitary transforms: 1/sqrt(N) scaling both ways, so Parseval is an
// equality and the sensing operator's adjoint is its conjugate transpose.
template <typename Scalar>
VectorXc<Scalar> unitary_fft(Eigen::FFT<Scalar>& fft, const VectorXc<Scalar>& x) {
  VectorXc<Scalar> out;
  fft.fwd(out, x);
  out /= std::sqrt(Scalar(x.size()));
  return out;
}

template <typename Scalar>
VectorXc<Scalar> unitary_ifft(Eigen::FFT<Scalar>& fft, const VectorXc<Scalar>& x) {
  VectorXc<Scalar> out;
  fft.inv(out, x);  // Eigen's inv applies 1/N
  out *= std::sqrt(Scalar(x.size()));
  return out;
}

}  // namespace detail

template <typename Scalar>
Spectrum<Scalar> forward(const Signal<Scalar>& signal) {
  const Eigen::Index n = signal.size();
  Eigen::FFT<Scalar> fft;
  VectorXc<Scalar> time(n);
  for (Eigen::Index i = 0; i < n; ++i) time(i) = std::complex<Scalar>(signal.samples(i), 0);

  Spectrum<Scalar> spec;
  spec.coefficients = detail::unitary_fft(fft, time);
  spec.sample_rate = signal.sample_rate;
  spec.energy_density = spec.coefficients.cwiseAbs();
  spec.bin_frequencies.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    spec.bin_frequencies(k) = Scalar(k) * signal.sample_rate / Scalar(n);
  }
  return spec;
}

// Inverse unitary DFT. The imaginary part is discarded; it is below 1e-12
// whenever the spectrum is conjugate-symmetric (i.e. came from a real trace).
template <typename Scalar>
Signal<Scalar> inverse(const Spectrum<Scalar>& spectrum) {
  Eigen::FFT<Scalar> fft;
  const VectorXc<Scalar> time = detail::unitary_ifft(fft, spectrum.coefficients);
  Signal<Scalar> out;
  out.sample_rate = spectrum.sample_rate;
  out.samples = time.real();
  return out;
}

/// Returns (sum |s(t)|^2, sum |S(Omega)|^2); equal under the unitary DFT.
template <typename Scalar>
std::pair<Scalar, Scalar> check_parseval(const Signal<Scalar>& signal) {
  const Scalar time_energy = signal.samples.squaredNorm();
  const Spectrum<Scalar> spec = forward(signal);
  const Scalar freq_energy = spec.coefficients.squaredNorm();
  return {time_energy, freq_energy};
}

}  // namespace eqsamp
