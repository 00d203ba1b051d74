#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <utility>
#include <vector>

#include "eqsamp/rng.hpp"

namespace eqsamp {

template <typename Scalar>
using VectorX = Eigen::Vector<Scalar, Eigen::Dynamic>;

/// Real time-domain trace together with its sample rate in Hz.
template <typename Scalar>
struct Signal {
  VectorX<Scalar> samples;
  Scalar sample_rate = Scalar(0);

  Eigen::Index size() const { return samples.size(); }
};

/// Unit-peak first-derivative-of-Gaussian pulse, centred in an N-bin window.
template <typename Scalar>
struct MonocycleTemplate {
  Scalar center_frequency = Scalar(0);
  Scalar sample_rate = Scalar(0);
  int duration_bins = 0;  // span where |w| >= 1e-3 * peak
  VectorX<Scalar> waveform;

  Eigen::Index size() const { return waveform.size(); }
};

/// One reflection: a circular shift (in bins) and a signed amplitude.
template <typename Scalar>
struct SceneEvent {
  int shift_bin = 0;
  Scalar amplitude = Scalar(0);
};

/// A sparse set of reflections; dof is the event count.
template <typename Scalar>
struct SparseScene {
  std::vector<SceneEvent<Scalar>> events;

  int dof() const { return static_cast<int>(events.size()); }
};

template <typename Scalar>
VectorX<Scalar> circular_shift(const VectorX<Scalar>& v, int k) {
  const Eigen::Index n = v.size();
  VectorX<Scalar> out(n);
  const Eigen::Index s = ((k % n) + n) % n;
  for (Eigen::Index i = 0; i < n; ++i) {
    out((i + s) % n) = v(i);
  }
  return out;
}

// s(t) = -t * exp(-t^2 / (2 sigma^2)) with sigma = 1/(2 pi f_c), which puts
// the magnitude-spectrum peak at the centre frequency. Normalised to unit
// peak amplitude, t = 0 at bin n/2.
template <typename Scalar>
MonocycleTemplate<Scalar> make_monocycle(Scalar center_frequency, Scalar sample_rate, int length) {
  if (length < 2) throw std::invalid_argument("make_monocycle: length must be >= 2");
  if (!(center_frequency > Scalar(0)) || !(center_frequency < sample_rate / Scalar(2))) {
    throw std::invalid_argument("make_monocycle: need 0 < center_frequency < sample_rate/2");
  }
  const Scalar sigma = Scalar(1) / (Scalar(2) * Scalar(std::numbers::pi) * center_frequency);
  const Scalar dt = Scalar(1) / sample_rate;

  VectorX<Scalar> w(length);
  for (int i = 0; i < length; ++i) {
    const Scalar t = (Scalar(i) - Scalar(length / 2)) * dt;
    w(i) = -t * std::exp(-t * t / (Scalar(2) * sigma * sigma));
  }
  const Scalar peak = w.cwiseAbs().maxCoeff();
  w /= peak;

  MonocycleTemplate<Scalar> tmpl;
  tmpl.center_frequency = center_frequency;
  tmpl.sample_rate = sample_rate;
  tmpl.waveform = std::move(w);

  int first = length, last = -1;
  for (int i = 0; i < length; ++i) {
    if (std::abs(tmpl.waveform(i)) >= Scalar(1e-3)) {
      first = std::min(first, i);
      last = std::max(last, i);
    }
  }
  tmpl.duration_bins = (last >= first) ? (last - first + 1) : 1;
  return tmpl;
}

// dof distinct shifts, uniform over [0, n), pairwise circular separation
// >= guard; amplitudes uniform in [lo, hi] with a random sign. Events are
// returned sorted by shift.
template <typename Scalar>
SparseScene<Scalar> make_scene(int dof, std::uint64_t rng_seed, Scalar amplitude_lo,
                               Scalar amplitude_hi, int guard, int n) {
  if (dof < 1) throw std::invalid_argument("make_scene: dof must be >= 1");
  if (!(amplitude_lo > Scalar(0)) || amplitude_hi < amplitude_lo) {
    throw std::invalid_argument("make_scene: need 0 < amplitude_lo <= amplitude_hi");
  }
  if (guard < 0 || static_cast<long long>(dof) * guard >= n) {
    throw std::invalid_argument("make_scene: dof * guard must be < n");
  }

  Rng rng(rng_seed);
  std::vector<int> shifts;
  int tries = 0;
  while (static_cast<int>(shifts.size()) < dof) {
    if (++tries > 10000) {
      throw std::runtime_error("make_scene: separation constraints unsatisfiable");
    }
    const int s = rng.uniform_int(n);
    bool ok = true;
    for (int t : shifts) {
      const int d = std::abs(s - t);
      if (std::min(d, n - d) < guard || s == t) {
        ok = false;
        break;
      }
    }
    if (ok) shifts.push_back(s);
  }

  SparseScene<Scalar> scene;
  scene.events.reserve(static_cast<std::size_t>(dof));
  for (int i = 0; i < dof; ++i) {
    const Scalar a = amplitude_lo + (amplitude_hi - amplitude_lo) * Scalar(rng.uniform01());
    const Scalar sign = rng.uniform01() < 0.5 ? Scalar(-1) : Scalar(1);
    scene.events.push_back({shifts[static_cast<std::size_t>(i)], a * sign});
  }
  std::sort(scene.events.begin(), scene.events.end(),
            [](const auto& a, const auto& b) { return a.shift_bin < b.shift_bin; });
  return scene;
}

/// Sum of shifted, attenuated template copies; linear in the amplitudes.
template <typename Scalar>
Signal<Scalar> synthesize(const SparseScene<Scalar>& scene, const MonocycleTemplate<Scalar>& tmpl) {
  const Eigen::Index n = tmpl.waveform.size();
  Signal<Scalar> out;
  out.sample_rate = tmpl.sample_rate;
  out.samples = VectorX<Scalar>::Zero(n);
  for (const auto& ev : scene.events) {
    out.samples += ev.amplitude * circular_shift(tmpl.waveform, ev.shift_bin);
  }
  return out;
}

}  // namespace eqsamp
