// Independent reference implementations the tests compare the library
// against: quadrature instead of closed forms, closed forms instead of
// series/continued fractions, and batch replays instead of streaming updates.
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "seqgamma/sequential_engine.hpp"
#include "seqgamma/target_functions.hpp"

namespace oracles {

// --- adaptive Simpson quadrature -------------------------------------------

namespace detail {

inline double simpson(double fa, double fm, double fb, double h) {
  return h / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive(const std::function<double(double)>& f, double a, double b,
                       double fa, double fm, double fb, double whole, double eps,
                       int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(fa, flm, fm, m - a);
  const double right = simpson(fm, frm, fb, b - m);
  const double delta = left + right - whole;
  if (depth <= 0) {
    throw std::runtime_error("quadrature oracle recursion limit hit");
  }
  if (std::fabs(delta) <= 15.0 * eps) {
    return left + right + delta / 15.0;
  }
  return adaptive(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         adaptive(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

}  // namespace detail

// Integral of f over [a, b] to roughly absolute accuracy eps.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double eps) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = detail::simpson(fa, fm, fb, b - a);
  return detail::adaptive(f, a, b, fa, fm, fb, whole, eps, 60);
}

// --- closed forms for integer-shape gamma tails -----------------------------

// Q(a, x) for integer a in {1, 2, 3}: the Poisson partial sums.
inline double closed_form_upper_gamma(int a, double x) {
  switch (a) {
    case 1: return std::exp(-x);
    case 2: return (1.0 + x) * std::exp(-x);
    case 3: return (1.0 + x + 0.5 * x * x) * std::exp(-x);
    default: throw std::invalid_argument("closed form available for a in {1,2,3} only");
  }
}

// E(S - t)^+ for S ~ Gamma(k, 1) by quadrature of the defining integral,
// deliberately avoiding the tail-function identity under test.
inline double expected_positive_part_by_quadrature(double k, double t) {
  if (t <= 0.0) {
    // Collapses to E S = k; also keeps the quadrature away from the
    // integrable s^{k-1} endpoint singularity when k < 1.
    return k;
  }
  // Substitute y = s - t and pull the magnitude out in log space, leaving a
  // unit-scale factor:
  //   E(S - t)^+ = C * I,  C = exp(-t + (k-1) log(t+1) - lgamma(k)),
  //   I = integral_0^inf  y e^{-y} ((t+y)/(t+1))^{k-1}  dy.
  // I is O(1) for every (k, t), so a fixed absolute accuracy per panel gives a
  // uniform relative accuracy for the product.
  const double log_scale = -t + (k - 1.0) * std::log(t + 1.0) - std::lgamma(k);
  const auto integrand = [&](double y) {
    if (y <= 0.0) return 0.0;
    return std::exp(std::log(y) - y +
                    (k - 1.0) * (std::log(t + y) - std::log(t + 1.0)));
  };
  // Unit-width panels cannot step over the bump near the origin, and the
  // integrand decays essentially like e^{-y}, so 200 panels is past anything
  // representable.
  double total = 0.0;
  for (int j = 0; j < 200; ++j) {
    total += integrate(integrand, static_cast<double>(j), j + 1.0, 3e-15);
  }
  return std::exp(log_scale) * total;
}

// --- sequential replay ------------------------------------------------------

// From-scratch prefix replay of the stopping rule over a recorded stream:
// recompute the sum in the same order and return the first crossing, or -1 if
// the stream ends first. Mirrors the streaming engine with none of its state.
inline long long batch_first_crossing(const std::vector<double>& xs,
                                      const seqgamma::TargetFunction& target,
                                      const seqgamma::StoppingConfig& config) {
  double sum = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sum += xs[i];
    const long long n = static_cast<long long>(i) + 1;
    if (n >= config.pilot_size) {
      const double beta_hat = sum / (static_cast<double>(n) * config.alpha);
      const double boundary = target.stopping_boundary(beta_hat, config.variance_bound);
      if (static_cast<double>(n) >= boundary) return n;
    }
    if (n >= config.cap) return n;
  }
  return -1;
}

}  // namespace oracles
