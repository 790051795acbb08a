#pragma once

#include <cmath>
#include <stdexcept>

#include "auxiliary.hpp"
#include "errors.hpp"
#include "extended_real.hpp"
#include "one_sided.hpp"

namespace specdiff {

enum class SpecStatus { exists, does_not_exist };

struct SpecularResult {
  SpecStatus status = SpecStatus::exists;
  double value = 0.0;  // meaningful only when status == exists
  ExtendedReal dplus;
  ExtendedReal dminus;

  bool exists() const { return status == SpecStatus::exists; }
};

namespace detail {

// x + sqrt(1 + x^2), rewritten for negative x where the direct form cancels
inline double plus_sqrt1p2(double x) {
  return x >= 0.0 ? x + std::hypot(1.0, x) : 1.0 / (std::hypot(1.0, x) - x);
}

// x - sqrt(1 + x^2)
inline double minus_sqrt1p2(double x) {
  return x <= 0.0 ? x - std::hypot(1.0, x) : -1.0 / (x + std::hypot(1.0, x));
}

}  // namespace detail

// Combine classified one-sided derivatives into the generalized derivative.
// Both finite: eval_A of the pair (which is 0 when they cancel exactly).
// One infinite: the finite slope d maps to d + sqrt(1+d^2) when the infinite
// side is +inf, and d - sqrt(1+d^2) when it is -inf.
// Opposite infinities give 0; equal infinities mean the derivative does not
// exist, reported in the status rather than as an error.
inline SpecularResult specular_from_one_sided(ExtendedReal dplus, ExtendedReal dminus) {
  SpecularResult out;
  out.dplus = dplus;
  out.dminus = dminus;
  if (dplus.is_finite() && dminus.is_finite()) {
    out.value = eval_A(dplus.value, dminus.value);
    return out;
  }
  if (dplus.is_finite()) {
    out.value = dminus.tag == ERTag::pos_inf ? detail::plus_sqrt1p2(dplus.value)
                                             : detail::minus_sqrt1p2(dplus.value);
    return out;
  }
  if (dminus.is_finite()) {
    out.value = dplus.tag == ERTag::pos_inf ? detail::plus_sqrt1p2(dminus.value)
                                            : detail::minus_sqrt1p2(dminus.value);
    return out;
  }
  if (dplus.tag == dminus.tag) {
    out.status = SpecStatus::does_not_exist;
    return out;
  }
  out.value = 0.0;
  return out;
}

inline SpecularResult specular_derivative(const ScalarFunction& f, double x,
                                          const DiffSchedule& sched = {}) {
  const ExtendedReal dp = estimate_one_sided(f, x, Side::right, sched);
  const ExtendedReal dm = estimate_one_sided(f, x, Side::left, sched);
  return specular_from_one_sided(dp, dm);
}

// k-th order derivative by recursion: differentiate the map
// y -> specular_derivative_k(f, y, k-1).
//
// For k >= 2 every level, the outermost included, runs on a coarser schedule
// (h0 = 1e-3, conv_tol = 1e-5). Inner estimates carry noise near their own
// conv_tol, so an outer pass at the default 1e-8 would reject everything.
inline SpecularResult specular_derivative_k(const ScalarFunction& f, double x, int k,
                                            const DiffSchedule& sched = {}) {
  if (k < 1) throw std::invalid_argument("specular_derivative_k: k must be at least 1");
  if (k == 1) return specular_derivative(f, x, sched);
  DiffSchedule coarse = sched;
  coarse.h0 = 1e-3;
  coarse.conv_tol = 1e-5;
  const ScalarFunction inner = [&f, k, coarse](double y) {
    const SpecularResult r = specular_derivative_k(f, y, k - 1, coarse);
    if (!r.exists())
      throw NoDerivativeError(
          "specular_derivative_k: inner derivative does not exist at x = " +
          std::to_string(y));
    return r.value;
  };
  return specular_derivative(inner, x, coarse);
}

}  // namespace specdiff
