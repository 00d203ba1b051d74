#include <doctest.h>

#include <cmath>

#include "eqsamp/signal_model.hpp"
#include "eqsamp/spectral.hpp"

using namespace eqsamp;

namespace {
constexpr double kFc = 2e9;
constexpr double kFs = 32e9;
constexpr int kN = 256;
}  // namespace

TEST_CASE("monocycle magnitude spectrum peaks at the centre frequency") {
  const auto tmpl = make_monocycle<double>(kFc, kFs, kN);
  const Signal<double> sig{tmpl.waveform, kFs};
  const auto spec = forward(sig);

  int argmax = 0;
  for (int k = 1; k <= kN / 2; ++k) {
    if (spec.energy_density(k) > spec.energy_density(argmax)) argmax = k;
  }
  const double bin_hz = kFs / kN;
  CHECK(std::abs(argmax * bin_hz - kFc) <= bin_hz);
}

TEST_CASE("monocycle is zero-mean with unit peak") {
  const auto tmpl = make_monocycle<double>(kFc, kFs, kN);
  CHECK(std::abs(tmpl.waveform.sum()) <= 1e-9);
  CHECK(tmpl.waveform.cwiseAbs().maxCoeff() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(tmpl.duration_bins > 0);
  CHECK(tmpl.duration_bins < kN);
}

TEST_CASE("monocycle rejects out-of-range centre frequencies") {
  CHECK_THROWS_AS(make_monocycle<double>(kFs / 2, kFs, kN), std::invalid_argument);
  CHECK_THROWS_AS(make_monocycle<double>(0.0, kFs, kN), std::invalid_argument);
  CHECK_THROWS_AS(make_monocycle<double>(-1e9, kFs, kN), std::invalid_argument);
  CHECK_THROWS_AS(make_monocycle<double>(kFc, kFs, 1), std::invalid_argument);
}

TEST_CASE("scenes honour cardinality, separation and determinism") {
  const auto one = make_scene<double>(1, 99, 0.3, 1.0, 10, kN);
  CHECK(one.dof() == 1);

  const auto three = make_scene<double>(3, 1234, 0.3, 1.0, 20, kN);
  REQUIRE(three.dof() == 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const int d = std::abs(three.events[i].shift_bin - three.events[j].shift_bin);
      CHECK(std::min(d, kN - d) >= 20);
    }
    const double a = std::abs(three.events[i].amplitude);
    CHECK(a >= 0.3);
    CHECK(a <= 1.0);
  }

  const auto again = make_scene<double>(3, 1234, 0.3, 1.0, 20, kN);
  for (int i = 0; i < 3; ++i) {
    CHECK(again.events[i].shift_bin == three.events[i].shift_bin);
    CHECK(again.events[i].amplitude == three.events[i].amplitude);
  }
}

TEST_CASE("scene generation rejects unsatisfiable constraints") {
  CHECK_THROWS_AS(make_scene<double>(0, 1, 0.3, 1.0, 4, kN), std::invalid_argument);
  CHECK_THROWS_AS(make_scene<double>(4, 1, 0.3, 1.0, 64, kN), std::invalid_argument);
  CHECK_THROWS_AS(make_scene<double>(1, 1, 0.0, 1.0, 4, kN), std::invalid_argument);
}

TEST_CASE("synthesis is linear and shift covariant") {
  const auto tmpl = make_monocycle<double>(kFc, kFs, kN);

  const SparseScene<double> empty;
  CHECK(synthesize(empty, tmpl).samples.norm() == 0.0);

  SparseScene<double> ident;
  ident.events.push_back({0, 1.0});
  CHECK((synthesize(ident, tmpl).samples - tmpl.waveform).norm() == 0.0);

  SparseScene<double> a, b, both;
  a.events.push_back({17, 0.8});
  b.events.push_back({140, -0.5});
  both.events = {a.events[0], b.events[0]};
  const auto sum = synthesize(a, tmpl).samples + synthesize(b, tmpl).samples;
  CHECK((synthesize(both, tmpl).samples - sum).norm() == 0.0);

  SparseScene<double> shifted;
  for (const auto& ev : both.events) shifted.events.push_back({(ev.shift_bin + 31) % kN, ev.amplitude});
  const auto direct = synthesize(shifted, tmpl).samples;
  const auto rolled = circular_shift(synthesize(both, tmpl).samples, 31);
  CHECK((direct - rolled).norm() == 0.0);
}
