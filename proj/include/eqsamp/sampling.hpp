#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqsamp/rng.hpp"
#include "eqsamp/signal_model.hpp"
#include "eqsamp/spectral.hpp"

namespace eqsamp {

/// Inclusive range of strictly positive frequency bins (no DC, no Nyquist).
struct Band {
  int lower_bin = 0;
  int upper_bin = 0;

  int width() const { return upper_bin - lower_bin + 1; }
};

inline Band make_band(int lower_bin, int upper_bin) {
  if (lower_bin < 1 || upper_bin < lower_bin) {
    throw std::invalid_argument("make_band: need 1 <= lower_bin <= upper_bin");
  }
  return Band{lower_bin, upper_bin};
}

enum class Scheme { Fes, Random, Ees };

inline const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::Fes: return "FES";
    case Scheme::Random: return "RANDOM";
    default: return "EES";
  }
}

enum class MidpointRule { Energy, Geometric };

struct SamplingPlan {
  Scheme scheme = Scheme::Fes;
  Band band;
  std::uint64_t seed = 0;               // 0 for the deterministic schemes
  std::vector<int> selected_bins;       // strictly increasing, inside band
  std::vector<Band> subband_bounds;     // empty for RANDOM
  std::vector<int> subband_widths;      // bins per subband; empty for RANDOM

  int sample_count() const { return static_cast<int>(selected_bins.size()); }
};

/// |S(Omega)| restricted to a band, its total, and the per-subband target.
template <typename Scalar>
struct EnergyProfile {
  Band band;
  VectorX<Scalar> density;          // length band.width()
  Scalar total = Scalar(0);         // E_hat
  Scalar per_band_target = Scalar(0);  // epsilon = E_hat / M
};

template <typename Scalar>
EnergyProfile<Scalar> make_energy_profile(const Spectrum<Scalar>& spectrum, Band band, int m) {
  if (band.upper_bin >= spectrum.size() / 2) {
    throw std::invalid_argument("make_energy_profile: band must stay below Nyquist");
  }
  if (m < 1) throw std::invalid_argument("make_energy_profile: m must be >= 1");
  EnergyProfile<Scalar> profile;
  profile.band = band;
  profile.density = spectrum.energy_density.segment(band.lower_bin, band.width());
  profile.total = profile.density.sum();
  profile.per_band_target = profile.total / Scalar(m);
  return profile;
}

namespace detail {

// Discrete equipartition of a nonnegative density over a band. Subband i
// ends at the first bin whose inclusive prefix sum reaches i*eps; its sample
// sits at the first bin whose prefix sum exceeds (i-1/2)*eps. A small
// tie tolerance keeps exact-boundary crossings (flat densities) independent
// of the density's absolute scale, so a constant profile reproduces the
// uniform FES partition bit for bit.
template <typename Scalar>
SamplingPlan equipartition(const VectorX<Scalar>& density, Band band, int m,
                           MidpointRule rule) {
  const int w = band.width();
  if (density.size() != w) {
    throw std::invalid_argument("equipartition: density length must equal band width");
  }
  if (m < 1 || m > w) throw std::invalid_argument("equipartition: need 1 <= m <= band width");
  if ((density.array() < Scalar(0)).any()) {
    throw std::invalid_argument("equipartition: density must be nonnegative");
  }

  VectorX<Scalar> cum(w);
  Scalar run = Scalar(0);
  for (int i = 0; i < w; ++i) {
    run += density(i);
    cum(i) = run;
  }
  const Scalar total = cum(w - 1);
  if (!(total > Scalar(0))) throw std::invalid_argument("equipartition: all-zero density");

  const Scalar eps = total / Scalar(m);
  const Scalar tie = Scalar(16) * std::numeric_limits<Scalar>::epsilon() * total;

  SamplingPlan plan;
  plan.band = band;
  plan.selected_bins.resize(static_cast<std::size_t>(m));
  plan.subband_bounds.resize(static_cast<std::size_t>(m));

  int start = 0;
  for (int i = 1; i <= m; ++i) {
    const Scalar target_end = Scalar(i) * eps;
    const Scalar target_mid = (Scalar(i) - Scalar(0.5)) * eps;

    int t = start;
    while (t < w - 1 && cum(t) < target_end - tie) ++t;
    const int end = (i < m) ? t : (w - 1);

    int s = start;
    if (rule == MidpointRule::Energy) {
      while (s < end && cum(s) <= target_mid + tie) ++s;
    } else {
      s = start + (end - start + 1) / 2;
      if (s > end) s = end;
    }

    plan.selected_bins[static_cast<std::size_t>(i - 1)] = s;
    plan.subband_bounds[static_cast<std::size_t>(i - 1)] = Band{start, end};
    start = end + 1;
  }

  // Collision repair for strongly peaked densities: advance a duplicate
  // sample to the next unused bin and re-tile the bounds around it.
  for (int i = 1; i < m; ++i) {
    auto& sel = plan.selected_bins;
    if (sel[static_cast<std::size_t>(i)] <= sel[static_cast<std::size_t>(i - 1)]) {
      sel[static_cast<std::size_t>(i)] = sel[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
  if (plan.selected_bins.back() >= w) {
    throw std::invalid_argument("equipartition: band exhausted while deduplicating samples");
  }
  int lo = 0;
  for (int i = 0; i < m; ++i) {
    auto& b = plan.subband_bounds[static_cast<std::size_t>(i)];
    b.lower_bin = lo;
    b.upper_bin = std::max(b.upper_bin, plan.selected_bins[static_cast<std::size_t>(i)]);
    if (i == m - 1) b.upper_bin = w - 1;
    lo = b.upper_bin + 1;
  }

  plan.subband_widths.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const auto& b = plan.subband_bounds[static_cast<std::size_t>(i)];
    plan.subband_widths[static_cast<std::size_t>(i)] = b.upper_bin - b.lower_bin + 1;
    plan.subband_bounds[static_cast<std::size_t>(i)] =
        Band{b.lower_bin + band.lower_bin, b.upper_bin + band.lower_bin};
    plan.selected_bins[static_cast<std::size_t>(i)] += band.lower_bin;
  }
  return plan;
}

}  // namespace detail

/// Uniform partition: equipartition of a flat density.
inline SamplingPlan plan_fes(Band band, int m) {
  const VectorX<double> ones = VectorX<double>::Ones(band.width());
  SamplingPlan plan = detail::equipartition(ones, band, m, MidpointRule::Energy);
  plan.scheme = Scheme::Fes;
  return plan;
}

/// m distinct bins drawn uniformly without replacement, ascending.
inline SamplingPlan plan_random(Band band, int m, std::uint64_t rng_seed) {
  const int w = band.width();
  if (m < 1 || m > w) throw std::invalid_argument("plan_random: need 1 <= m <= band width");
  Rng rng(rng_seed);
  SamplingPlan plan;
  plan.scheme = Scheme::Random;
  plan.band = band;
  plan.seed = rng_seed;
  for (int i : rng.sample_without_replacement(w, m)) {
    plan.selected_bins.push_back(band.lower_bin + i);
  }
  return plan;
}

/// Energy equipartition: subbands of equal integrated |S(Omega)|, one sample
/// at each subband's energy midpoint (or geometric midpoint, if asked).
template <typename Scalar>
SamplingPlan plan_ees(const EnergyProfile<Scalar>& profile, Band band, int m,
                      MidpointRule rule = MidpointRule::Energy) {
  if (profile.band.lower_bin != band.lower_bin || profile.band.upper_bin != band.upper_bin) {
    throw std::invalid_argument("plan_ees: profile band does not match requested band");
  }
  const int nonzero = static_cast<int>((profile.density.array() > Scalar(0)).count());
  if (m > nonzero) {
    throw std::invalid_argument("plan_ees: more samples than bins with nonzero density");
  }
  SamplingPlan plan = detail::equipartition(profile.density, band, m, rule);
  plan.scheme = Scheme::Ees;
  return plan;
}

/// Plain-text serialization: a small header plus one bin index per line.
inline std::string format_plan(const SamplingPlan& plan) {
  std::ostringstream os;
  os << "# eqsamp sampling plan\n";
  os << "scheme " << to_string(plan.scheme) << "\n";
  os << "seed " << plan.seed << "\n";
  os << "band " << plan.band.lower_bin << " " << plan.band.upper_bin << "\n";
  os << "samples " << plan.sample_count() << "\n";
  for (int b : plan.selected_bins) os << b << "\n";
  return os.str();
}

}  // namespace eqsamp
