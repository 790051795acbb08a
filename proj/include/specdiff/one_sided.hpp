#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "errors.hpp"
#include "extended_real.hpp"

namespace specdiff {

using ScalarFunction = std::function<double(double)>;

enum class Side { right, left };

struct DiffSchedule {
  double h0 = 1e-2;
  double shrink = 0.5;
  int max_levels = 30;
  double conv_tol = 1e-8;
  double inf_threshold = 1e8;

  void validate() const {
    if (!(h0 > 0.0)) throw ConfigError("DiffSchedule: h0 must be positive");
    if (!(shrink > 0.0 && shrink < 1.0))
      throw ConfigError("DiffSchedule: shrink must lie in (0,1)");
    if (max_levels < 2) throw ConfigError("DiffSchedule: max_levels must be at least 2");
    if (!(conv_tol > 0.0)) throw ConfigError("DiffSchedule: conv_tol must be positive");
    if (!(inf_threshold > 0.0))
      throw ConfigError("DiffSchedule: inf_threshold must be positive");
    if (!(h0 * std::pow(shrink, max_levels - 1) > 0.0))
      throw ConfigError("DiffSchedule: offsets underflow to zero");
  }
};

// Classify the one-sided difference quotient (f(x+dir*h) - f(x)) / (dir*h)
// as h shrinks through the schedule.
//
// A finite limit is accepted either when two successive quotients agree to
// conv_tol (relative to max(1,|q|)) or when two successive first-order
// extrapolants r_k = q_k + (q_k - q_{k-1}) * shrink/(1-shrink) do. The raw
// test alone cannot reach conv_tol = 1e-8 on generic smooth functions, where
// the quotient error at level k is still of order h_k.
//
// An infinity needs three consecutive levels beyond inf_threshold with one
// sign and strictly growing magnitude. Anything else exhausts the schedule
// and reports no limit.
inline ExtendedReal estimate_one_sided(const ScalarFunction& f, double x, Side side,
                                       const DiffSchedule& sched = {}) {
  sched.validate();
  const double fx = f(x);
  if (!std::isfinite(fx))
    throw EvaluationError("estimate_one_sided: f(x) is not finite at x = " +
                          std::to_string(x));
  const double dir = side == Side::right ? 1.0 : -1.0;
  double h = sched.h0;
  double q_prev = 0.0;
  double r_prev = 0.0;
  bool have_q = false;
  bool have_r = false;
  int run = 0;
  int run_sign = 0;
  double last_big = 0.0;

  for (int level = 0; level < sched.max_levels; ++level) {
    const double fv = f(x + dir * h);
    if (!std::isfinite(fv))
      throw EvaluationError("estimate_one_sided: f is not finite at x = " +
                            std::to_string(x + dir * h));
    const double q = (fv - fx) / (dir * h);

    if (std::isfinite(q)) {
      const double scale = std::max(1.0, std::fabs(q));
      if (have_q) {
        if (std::fabs(q - q_prev) <= sched.conv_tol * scale)
          return ExtendedReal::finite(q);
        const double r = q + (q - q_prev) * (sched.shrink / (1.0 - sched.shrink));
        if (have_r && std::fabs(r - r_prev) <= sched.conv_tol * scale)
          return ExtendedReal::finite(r);
        r_prev = r;
        have_r = true;
      }
      q_prev = q;
      have_q = true;
    }

    const double aq = std::fabs(q);
    if (aq > sched.inf_threshold) {
      const int sign = q > 0.0 ? 1 : -1;
      const bool grew = run > 0 && sign == run_sign &&
                        (aq > last_big || (std::isinf(aq) && std::isinf(last_big)));
      run = grew ? run + 1 : 1;
      run_sign = sign;
      last_big = aq;
      if (run >= 3)
        return run_sign > 0 ? ExtendedReal::pos_inf() : ExtendedReal::neg_inf();
    } else {
      run = 0;
    }

    h *= sched.shrink;
  }
  throw NoLimitError(
      std::string("estimate_one_sided: quotients neither settled nor diverged (") +
      (side == Side::right ? "right" : "left") + " of x = " + std::to_string(x) + ")");
}

}  // namespace specdiff
