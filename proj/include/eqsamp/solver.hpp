#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "eqsamp/rng.hpp"
#include "eqsamp/sensing.hpp"

namespace eqsamp {

/// Weighted l1 recovery problem: min sum_i w_i |x_i| subject to
/// ||A x - b||_2 <= feasibility_tolerance * ||b||_2. All-ones weights give
/// plain basis pursuit; zero weights on a support set T leave T unpenalised.
template <typename Scalar>
struct L1Problem {
  SensingOperator<Scalar> op;
  VectorX<Scalar> measurement;            // b, length 2M
  VectorX<Scalar> weights;                // length N, >= 0, not all zero
  Scalar feasibility_tolerance = Scalar(1e-6);
  int max_iterations = 20000;
  Scalar shrink_scale = Scalar(0.1);      // shrinkage step as a fraction of ||b||/||A||
};

template <typename Scalar>
struct SolverResult {
  VectorX<Scalar> coefficients;  // x, length N
  Scalar objective = Scalar(0);  // sum w_i |x_i|
  Scalar residual_norm = Scalar(0);
  int iterations = 0;
  bool converged = false;
  VectorX<Scalar> dual;          // measurement-space y with A^T y ~ subgradient
};

struct KktDiagnostics {
  double max_bound_violation = 0;    // max_i (|(A^T y)_i| - w_i)+
  double max_support_violation = 0;  // max_{i in supp} |(A^T y)_i - w_i sign(x_i)|
  double support_threshold = 0;
};

namespace detail {

// Spectral norm of A by power iteration on A^T A, deterministic start.
template <typename Scalar>
Scalar operator_norm(const SensingOperator<Scalar>& op, FftWorkspace<Scalar>& ws, int steps = 50) {
  const Eigen::Index n = op.n();
  Rng rng(0x5EEDULL);
  VectorX<Scalar> v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Scalar(rng.uniform01() - 0.5);
  v /= v.norm();
  Scalar lambda = Scalar(0);
  for (int it = 0; it < steps; ++it) {
    VectorX<Scalar> u = apply_delta_adjoint(op, apply_delta(op, v, ws), ws);
    lambda = u.norm();
    if (!(lambda > Scalar(0))) return Scalar(0);
    v = u / lambda;
  }
  return std::sqrt(lambda);
}

// Projection of v onto {x : ||Ax - b|| <= delta}. Because A A^T is the
// diagonal matrix G, the projector is v + A^T c with c_k = nu r_k/(1 + nu g_k)
// and nu >= 0 the unique root of sum r_k^2/(1+nu g_k)^2 = delta^2;
// nu -> infinity recovers the exact affine projection. nu_warm carries the
// previous root across iterations as the Newton starting point.
template <typename Scalar>
VectorX<Scalar> ball_project(const SensingOperator<Scalar>& op, const VectorX<Scalar>& v,
                             const VectorX<Scalar>& b, Scalar delta, FftWorkspace<Scalar>& ws,
                             Scalar& nu_warm) {
  const int m = op.m();
  VectorX<Scalar> r = b - apply_delta(op, v, ws);
  const Scalar rn = r.norm();
  if (rn <= delta) return v;

  VectorX<Scalar> g(2 * m);
  g.head(m) = op.gram_diag;
  g.tail(m) = op.gram_diag;

  VectorX<Scalar> c(2 * m);
  if (delta <= Scalar(0)) {
    c = r.cwiseQuotient(g);
    return v + apply_delta_adjoint(op, c, ws);
  }

  const auto phi = [&](Scalar nu) {
    Scalar acc = Scalar(0);
    for (int i = 0; i < 2 * m; ++i) {
      const Scalar t = r(i) / (Scalar(1) + nu * g(i));
      acc += t * t;
    }
    return acc - delta * delta;
  };
  const auto dphi = [&](Scalar nu) {
    Scalar acc = Scalar(0);
    for (int i = 0; i < 2 * m; ++i) {
      const Scalar denom = Scalar(1) + nu * g(i);
      acc += r(i) * r(i) * g(i) / (denom * denom * denom);
    }
    return Scalar(-2) * acc;
  };

  Scalar lo = Scalar(0);
  Scalar hi = std::max(nu_warm, Scalar(1) / g.maxCoeff());
  while (phi(hi) > Scalar(0) && hi < Scalar(1e300)) hi *= Scalar(10);

  Scalar nu = std::clamp(nu_warm, lo, hi);
  if (!(nu > lo)) nu = Scalar(0.5) * hi;
  for (int it = 0; it < 200; ++it) {
    const Scalar f = phi(nu);
    if (f > Scalar(0)) lo = nu; else hi = nu;
    if (std::abs(f) <= Scalar(1e-12) * delta * delta) break;
    const Scalar d = dphi(nu);
    Scalar next = (d < Scalar(0)) ? nu - f / d : Scalar(0.5) * (lo + hi);
    if (!(next > lo) || !(next < hi) || !std::isfinite(next)) next = Scalar(0.5) * (lo + hi);
    if (hi - lo <= Scalar(1e-14) * hi) { nu = Scalar(0.5) * (lo + hi); break; }
    nu = next;
  }
  nu_warm = nu;

  for (int i = 0; i < 2 * m; ++i) c(i) = nu * r(i) / (Scalar(1) + nu * g(i));
  return v + apply_delta_adjoint(op, c, ws);
}

template <typename Scalar>
void validate(const L1Problem<Scalar>& problem) {
  if (problem.measurement.size() != 2 * problem.op.m()) {
    throw std::invalid_argument("solve_l1: measurement length does not match operator");
  }
  if (problem.weights.size() != problem.op.n()) {
    throw std::invalid_argument("solve_l1: weight length does not match operator");
  }
  if ((problem.weights.array() < Scalar(0)).any() || !(problem.weights.maxCoeff() > Scalar(0))) {
    throw std::invalid_argument("solve_l1: weights must be nonnegative with a positive entry");
  }
  if (!(problem.feasibility_tolerance > Scalar(0))) {
    throw std::invalid_argument("solve_l1: feasibility_tolerance must be positive");
  }
}

}  // namespace detail

// Douglas-Rachford splitting between the feasible-ball indicator and the
// weighted l1 term: alternate the ball projection with soft thresholding.
// The shrinkage step is tied to ||b|| / ||A|| (power iteration estimate,
// then held fixed) so the whole iteration is positively homogeneous in b.
// Non-convergence returns the current feasible iterate with converged=false.
template <typename Scalar>
SolverResult<Scalar> solve_l1(const L1Problem<Scalar>& problem) {
  detail::validate(problem);
  const Eigen::Index n = problem.op.n();
  SolverResult<Scalar> result;
  result.coefficients = VectorX<Scalar>::Zero(n);
  result.dual = VectorX<Scalar>::Zero(2 * problem.op.m());

  const Scalar bnorm = problem.measurement.norm();
  if (!(bnorm > Scalar(0))) {
    result.converged = true;
    return result;
  }

  FftWorkspace<Scalar> ws;
  const Scalar opnorm = detail::operator_norm(problem.op, ws);
  const Scalar theta = problem.shrink_scale * bnorm / std::max(opnorm, Scalar(1e-300));
  // The iterate lands on the ball boundary; keep the working radius a hair
  // inside the contractual one so the reported residual never exceeds it.
  const Scalar delta = problem.feasibility_tolerance * bnorm * (Scalar(1) - Scalar(1e-12));
  const Scalar tol = problem.feasibility_tolerance;

  VectorX<Scalar> x = VectorX<Scalar>::Zero(n);
  VectorX<Scalar> z = VectorX<Scalar>::Zero(n);
  VectorX<Scalar> u = VectorX<Scalar>::Zero(n);
  VectorX<Scalar> z_old(n);
  Scalar nu_warm = Scalar(0);

  int it = 0;
  bool converged = false;
  for (it = 1; it <= problem.max_iterations; ++it) {
    x = detail::ball_project(problem.op, VectorX<Scalar>(z - u), problem.measurement, delta, ws, nu_warm);
    z_old.swap(z);
    z = (x + u).array().sign() *
        ((x + u).cwiseAbs() - theta * problem.weights).cwiseMax(Scalar(0)).array();
    u += x - z;

    const Scalar primal = (x - z).norm();
    const Scalar dual_step = (z - z_old).norm();
    const Scalar scale = std::max(x.norm(), z.norm());
    if (primal <= tol * scale && dual_step <= tol * scale) {
      converged = true;
      break;
    }
  }

  result.coefficients = x;
  result.iterations = std::min(it, problem.max_iterations);
  result.converged = converged;
  result.objective = (problem.weights.array() * x.array().abs()).sum();
  result.residual_norm = (apply_delta(problem.op, x, ws) - problem.measurement).norm();

  // Dual estimate: least-squares pullback of the scaled ADMM multiplier,
  // y = G^{-1} A (u / theta), so that A^T y approximates the subgradient.
  const int m = problem.op.m();
  VectorX<Scalar> au = apply_delta(problem.op, VectorX<Scalar>(u / theta), ws);
  for (int i = 0; i < m; ++i) {
    au(i) /= problem.op.gram_diag(i);
    au(m + i) /= problem.op.gram_diag(i);
  }
  result.dual = au;
  return result;
}

/// Minimum-l2-norm solution of A x = b via preconditioned CG on the normal
/// equations A A^T y = b, then x = A^T y.
template <typename Scalar>
SolverResult<Scalar> solve_least_squares(const SensingOperator<Scalar>& op,
                                         const Measurement<Scalar>& measurement) {
  const int rows = 2 * op.m();
  if (measurement.values.size() != rows) {
    throw std::invalid_argument("solve_least_squares: measurement length does not match operator");
  }
  SolverResult<Scalar> result;
  result.coefficients = VectorX<Scalar>::Zero(op.n());
  result.dual = VectorX<Scalar>::Zero(rows);

  const VectorX<Scalar>& b = measurement.values;
  const Scalar bnorm = b.norm();
  if (!(bnorm > Scalar(0))) {
    result.converged = true;
    return result;
  }

  FftWorkspace<Scalar> ws;
  VectorX<Scalar> prec(rows);
  prec.head(op.m()) = op.gram_diag.cwiseInverse();
  prec.tail(op.m()) = op.gram_diag.cwiseInverse();

  const auto gram = [&](const VectorX<Scalar>& y) {
    return apply_delta(op, apply_delta_adjoint(op, y, ws), ws);
  };

  VectorX<Scalar> y = VectorX<Scalar>::Zero(rows);
  VectorX<Scalar> r = b;
  VectorX<Scalar> s = prec.cwiseProduct(r);
  VectorX<Scalar> p = s;
  Scalar rs = r.dot(s);
  const Scalar tol = Scalar(1e-13) * bnorm;
  int it = 0;
  const int max_it = 4 * rows + 10;
  while (it < max_it && r.norm() > tol) {
    ++it;
    const VectorX<Scalar> gp = gram(p);
    const Scalar alpha = rs / p.dot(gp);
    y += alpha * p;
    r -= alpha * gp;
    s = prec.cwiseProduct(r);
    const Scalar rs_new = r.dot(s);
    p = s + (rs_new / rs) * p;
    rs = rs_new;
  }

  result.coefficients = apply_delta_adjoint(op, y, ws);
  result.dual = y;
  result.iterations = it;
  result.residual_norm = (apply_delta(op, result.coefficients, ws) - b).norm();
  result.converged = result.residual_norm <= Scalar(1e-10) * bnorm;
  result.objective = result.coefficients.squaredNorm();
  return result;
}

/// Optimality certificate: checks |(A^T y)_i| <= w_i everywhere and
/// (A^T y)_i = w_i sign(x_i) on the support of x, using the solver's dual.
template <typename Scalar>
KktDiagnostics check_kkt(const SolverResult<Scalar>& result, const L1Problem<Scalar>& problem) {
  FftWorkspace<Scalar> ws;
  const VectorX<Scalar> g = apply_delta_adjoint(problem.op, result.dual, ws);
  const Scalar xmax = result.coefficients.cwiseAbs().maxCoeff();
  const Scalar support_eps = Scalar(1e-6) * xmax;

  KktDiagnostics diag;
  diag.support_threshold = static_cast<double>(support_eps);
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const double bound = std::abs(static_cast<double>(g(i))) - static_cast<double>(problem.weights(i));
    diag.max_bound_violation = std::max(diag.max_bound_violation, bound);
    if (std::abs(result.coefficients(i)) > support_eps) {
      const double want = static_cast<double>(problem.weights(i)) *
                          (result.coefficients(i) > Scalar(0) ? 1.0 : -1.0);
      diag.max_support_violation =
          std::max(diag.max_support_violation, std::abs(static_cast<double>(g(i)) - want));
    }
  }
  return diag;
}

}  // namespace eqsamp
