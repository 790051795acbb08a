#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

namespace specdiff {

// Slope blend: eval_A(alpha, beta) is the tangent of the average of
// arctan(alpha) and arctan(beta), extended by 0 where alpha + beta = 0.
// Algebraically (alpha*beta - 1 + sqrt((1+alpha^2)(1+beta^2))) / (alpha+beta).
//
// Arguments are sorted first so the symmetry eval_A(a,b) == eval_A(b,a)
// holds bit for bit, and equal arguments return exactly.
inline double eval_A(double alpha, double beta) {
  if (alpha < beta) std::swap(alpha, beta);
  if (alpha == beta) return alpha;
  const double s = alpha + beta;
  if (s == 0.0) return 0.0;
  const double ha = std::hypot(1.0, alpha);
  const double hb = std::hypot(1.0, beta);
  const double t = ha * hb;
  const double num = (alpha * beta - 1.0) + t;
  if (std::fabs(num) < 1e-3 * t) {
    // the numerator cancels as beta approaches -alpha; use the half-angle
    // mean (sin u + sin v)/(cos u + cos v), u = arctan(alpha), v = arctan(beta)
    return (alpha / ha + beta / hb) / (1.0 / ha + 1.0 / hb);
  }
  return num / s;
}

// Difference-quotient form over a positive span c:
//   (a*sqrt(b^2+c^2) + b*sqrt(a^2+c^2)) / (c*sqrt(a^2+c^2) + c*sqrt(b^2+c^2))
// which equals eval_A(a/c, b/c).
inline double eval_B(double a, double b, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("eval_B: c must be positive");
  const double sa = std::sqrt(a * a + c * c);
  const double sb = std::sqrt(b * b + c * c);
  return (a * sb + b * sa) / (c * sa + c * sb);
}

// Independent route to the same value through half angles. Kept free of any
// shared code with eval_B so the two can cross-check each other.
inline double eval_B_trig(double a, double b, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("eval_B_trig: c must be positive");
  return std::tan(0.5 * std::atan(a / c) + 0.5 * std::atan(b / c));
}

}  // namespace specdiff
