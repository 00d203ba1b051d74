#pragma once

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "eqsamp/signal_model.hpp"
#include "eqsamp/spectral.hpp"

namespace eqsamp {

template <typename Scalar>
struct EvalReport {
  Scalar psnr_db = Scalar(0);
  Scalar mse = Scalar(0);
  Scalar peak = Scalar(0);               // max |original|
  Scalar spectrum_l2_error = Scalar(0);  // || |S_orig| - |S_rec| || / || |S_orig| ||
};

// PSNR referenced to the original trace's peak amplitude, so a unit-peak
// scene scores ~ -10 log10(mse). mse == 0 yields the +infinity sentinel.
template <typename Scalar>
EvalReport<Scalar> psnr(const Signal<Scalar>& original, const Signal<Scalar>& reconstructed) {
  const Eigen::Index n = original.size();
  if (n == 0 || reconstructed.size() != n) {
    throw std::invalid_argument("psnr: signals must be nonempty and equal length");
  }

  EvalReport<Scalar> report;
  report.peak = original.samples.cwiseAbs().maxCoeff();
  report.mse = (original.samples - reconstructed.samples).squaredNorm() / Scalar(n);
  report.psnr_db = report.mse > Scalar(0)
                       ? Scalar(10) * std::log10(report.peak * report.peak / report.mse)
                       : std::numeric_limits<Scalar>::infinity();

  const VectorX<Scalar> mag_orig = forward(original).energy_density;
  const VectorX<Scalar> mag_rec = forward(reconstructed).energy_density;
  const Scalar denom = mag_orig.norm();
  report.spectrum_l2_error =
      denom > Scalar(0) ? (mag_orig - mag_rec).norm() / denom : mag_rec.norm();
  return report;
}

}  // namespace eqsamp
