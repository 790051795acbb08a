#pragma once

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "errors.hpp"
#include "specular.hpp"

namespace specdiff {

struct FermatReport {
  bool pass = false;
  double value = 0.0;
};

struct Bracket {
  double c1 = 0.0;
  double c2 = 0.0;
  double lower_value = 0.0;  // specular derivative at c1, at most target + tol
  double upper_value = 0.0;  // specular derivative at c2, at least target - tol
  double target = 0.0;
};

struct LipschitzReport {
  bool pass = false;
  double worst_ratio = 0.0;
};

// At a local extremum the specular derivative is bounded by 1 in magnitude,
// not necessarily zero. The probe checks that bound.
inline FermatReport quasi_fermat_probe(const ScalarFunction& f, double xstar,
                                       const DiffSchedule& sched = {},
                                       double tol = 1e-6) {
  const SpecularResult r = specular_derivative(f, xstar, sched);
  if (!r.exists())
    throw NoDerivativeError(
        "quasi_fermat_probe: specular derivative does not exist at x = " +
        std::to_string(xstar));
  return {std::fabs(r.value) <= 1.0 + tol, r.value};
}

namespace detail {

// Left-to-right scan over the uniform interior grid. Each qualifying role is
// filled by the first point that satisfies it; grid points where the estimate
// fails or the derivative does not exist are skipped, they cannot produce a
// bracket and the theorems promise nothing about individual points.
inline Bracket bracket_scan(const ScalarFunction& f, double a, double b, int grid_n,
                            const DiffSchedule& sched, double tol, double target,
                            const char* who) {
  bool have1 = false;
  bool have2 = false;
  Bracket out;
  out.target = target;
  const double span = b - a;
  for (int i = 1; i <= grid_n && !(have1 && have2); ++i) {
    const double x = a + span * (static_cast<double>(i) / (grid_n + 1));
    double v = 0.0;
    try {
      const SpecularResult r = specular_derivative(f, x, sched);
      if (!r.exists()) continue;
      v = r.value;
    } catch (const NoLimitError&) {
      continue;
    } catch (const EvaluationError&) {
      continue;
    }
    if (!have1 && v <= target + tol) {
      have1 = true;
      out.c1 = x;
      out.lower_value = v;
    }
    if (!have2 && v >= target - tol) {
      have2 = true;
      out.c2 = x;
      out.upper_value = v;
    }
  }
  if (!have1 || !have2)
    throw BracketNotFoundError(std::string(who) +
                               ": no bracket on the grid (grid_n = " +
                               std::to_string(grid_n) + ")");
  return out;
}

}  // namespace detail

inline Bracket quasi_mvt_bracket(const ScalarFunction& f, double a, double b,
                                 int grid_n = 1024, const DiffSchedule& sched = {},
                                 double tol = 1e-6) {
  if (!(a < b)) throw std::invalid_argument("quasi_mvt_bracket: need a < b");
  if (grid_n < 3) throw std::invalid_argument("quasi_mvt_bracket: need grid_n >= 3");
  const double target = (f(b) - f(a)) / (b - a);
  return detail::bracket_scan(f, a, b, grid_n, sched, tol, target, "quasi_mvt_bracket");
}

inline Bracket quasi_rolle_bracket(const ScalarFunction& f, double a, double b,
                                   int grid_n = 1024, const DiffSchedule& sched = {},
                                   double tol = 1e-6) {
  if (!(a < b)) throw std::invalid_argument("quasi_rolle_bracket: need a < b");
  if (grid_n < 3) throw std::invalid_argument("quasi_rolle_bracket: need grid_n >= 3");
  if (!(std::fabs(f(a)) <= tol && std::fabs(f(b)) <= tol))
    throw std::invalid_argument(
        "quasi_rolle_bracket: f must vanish at both endpoints (within tol)");
  return detail::bracket_scan(f, a, b, grid_n, sched, tol, 0.0, "quasi_rolle_bracket");
}

// Spot-check the Lipschitz consequence of a bounded specular derivative:
// |f(x1)-f(x2)| <= M |x1-x2| over random pairs. The seed is fixed so repeated
// runs and CLI output stay identical, and pairs closer than 1e-6*(b-a) are
// redrawn, that close the quotient measures rounding of f rather than slope.
inline LipschitzReport lipschitz_from_bounded_sd(const ScalarFunction& f, double a,
                                                 double b, double M, int samples = 256,
                                                 const DiffSchedule& /*sched*/ = {}) {
  if (!(a < b)) throw std::invalid_argument("lipschitz_from_bounded_sd: need a < b");
  if (!(M > 0.0))
    throw std::invalid_argument("lipschitz_from_bounded_sd: M must be positive");
  if (samples < 2)
    throw std::invalid_argument("lipschitz_from_bounded_sd: need samples >= 2");
  std::mt19937_64 rng(0x51ac5eedULL);
  std::uniform_real_distribution<double> dist(a, b);
  const double min_sep = 1e-6 * (b - a);
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x1 = dist(rng);
    double x2 = dist(rng);
    while (std::fabs(x1 - x2) < min_sep) x2 = dist(rng);
    const double ratio = std::fabs(f(x1) - f(x2)) / (M * std::fabs(x1 - x2));
    if (ratio > worst) worst = ratio;
  }
  return {worst <= 1.0 + 1e-9, worst};
}

}  // namespace specdiff
