#pragma once

// Randomized property suites for the slope-combination kernels. Shared by the
// unit tests and the acceptance runner so both exercise identical sample
// streams. Every suite uses a fixed seed, so a failure is reproducible by
// construction.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include <specdiff/auxiliary.hpp>
#include <specdiff/extended_real.hpp>
#include <specdiff/specular.hpp>

namespace props {

struct Outcome {
  std::string name;
  std::size_t samples = 0;
  std::size_t failures = 0;
  double worst = 0.0;
  std::string note;

  bool pass() const { return failures == 0; }
};

namespace detail {

inline double uniform(std::mt19937_64& gen, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(gen);
}

inline double log_uniform(std::mt19937_64& gen, double lo, double hi) {
  return std::exp(uniform(gen, std::log(lo), std::log(hi)));
}

inline std::uint64_t bits_of(double v) {
  std::uint64_t u;
  std::memcpy(&u, &v, sizeof u);
  return u;
}

inline void record(Outcome& out, double deviation, const char* fmt, double a,
                   double b, double got, double want) {
  if (deviation > out.worst) out.worst = deviation;
  ++out.failures;
  if (out.note.empty()) {
    char buf[256];
    std::snprintf(buf, sizeof buf, fmt, a, b, got, want);
    out.note = buf;
  }
}

}  // namespace detail

// Swapping the arguments must not change a single bit of the result.
inline Outcome check_symmetry(std::size_t n = 100000) {
  Outcome out{"symmetry"};
  std::mt19937_64 gen(0x5e11aa01ULL);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = detail::uniform(gen, -1000.0, 1000.0);
    const double b = detail::uniform(gen, -1000.0, 1000.0);
    const double v1 = specdiff::eval_A(a, b);
    const double v2 = specdiff::eval_A(b, a);
    ++out.samples;
    if (detail::bits_of(v1) != detail::bits_of(v2))
      detail::record(out, std::fabs(v1 - v2),
                     "alpha=%.17g beta=%.17g got=%.17g swapped=%.17g", a, b, v1,
                     v2);
  }
  return out;
}

// Negating both slopes negates the combined slope.
inline Outcome check_odd_negation(std::size_t n = 100000) {
  Outcome out{"odd_negation"};
  std::mt19937_64 gen(0x5e11aa02ULL);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = detail::uniform(gen, -1000.0, 1000.0);
    const double b = detail::uniform(gen, -1000.0, 1000.0);
    const double v = specdiff::eval_A(a, b);
    const double w = specdiff::eval_A(-a, -b);
    const double dev = std::fabs(w + v);
    ++out.samples;
    if (dev > 1e-14 * std::max(1.0, std::fabs(v)))
      detail::record(out, dev, "alpha=%.17g beta=%.17g got=%.17g negated=%.17g",
                     a, b, v, w);
  }
  return out;
}

// The result lies strictly between distinct inputs, so it can only coincide
// with an endpoint when the two slopes are equal.
inline Outcome check_strictly_between(std::size_t n = 100000) {
  Outcome out{"strictly_between"};
  std::mt19937_64 gen(0x5e11aa03ULL);
  std::size_t kept = 0;
  while (kept < n) {
    const double a = detail::uniform(gen, -1000.0, 1000.0);
    const double b = detail::uniform(gen, -1000.0, 1000.0);
    const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    if (std::fabs(a - b) < 1e-8 * scale) continue;
    ++kept;
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    const double v = specdiff::eval_A(a, b);
    ++out.samples;
    if (!(lo < v && v < hi))
      detail::record(out, 0.0, "alpha=%.17g beta=%.17g value=%.17g hi=%.17g",
                     a, b, v, hi);
  }
  return out;
}

// Away from cancellation the combined slope carries the sign of alpha+beta.
inline Outcome check_sign_matches_sum(std::size_t n = 100000) {
  Outcome out{"sign_matches_sum"};
  std::mt19937_64 gen(0x5e11aa04ULL);
  std::size_t kept = 0;
  while (kept < n) {
    const double a = detail::uniform(gen, -10.0, 10.0);
    const double b = detail::uniform(gen, -10.0, 10.0);
    if (std::fabs(a + b) < 1e-5) continue;
    ++kept;
    const double v = specdiff::eval_A(a, b);
    ++out.samples;
    const bool ok = (a + b > 0.0) ? (v > 0.0) : (v < 0.0);
    if (!ok)
      detail::record(out, std::fabs(v),
                     "alpha=%.17g beta=%.17g value=%.17g sum=%.17g", a, b, v,
                     a + b);
  }
  return out;
}

// An exact cancellation of the slopes yields exactly zero.
inline Outcome check_exact_zero(std::size_t n = 100000) {
  Outcome out{"exact_zero"};
  std::mt19937_64 gen(0x5e11aa05ULL);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = detail::uniform(gen, -1000.0, 1000.0);
    const double v = specdiff::eval_A(a, -a);
    ++out.samples;
    if (v != 0.0)
      detail::record(out, std::fabs(v), "alpha=%.17g beta=%.17g value=%.17g want=%.17g",
                     a, -a, v, 0.0);
  }
  return out;
}

// Near-cancellation band: tiny alpha+beta must still produce the right sign
// and a magnitude no larger than half the sum.
inline Outcome check_cancellation_band(std::size_t n = 100000) {
  Outcome out{"cancellation_band"};
  std::mt19937_64 gen(0x5e11aa06ULL);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = detail::uniform(gen, -3.0, 3.0);
    const double mag = detail::log_uniform(gen, 1e-12, 0.99e-8);
    const double d = (gen() & 1u) ? mag : -mag;
    const double b = -a + d;
    const double s = a + b;
    const double v = specdiff::eval_A(a, b);
    ++out.samples;
    const bool sign_ok = (s > 0.0) ? (v > 0.0) : (s < 0.0) ? (v < 0.0) : (v == 0.0);
    const bool bound_ok = std::fabs(v) <= 0.5 * std::fabs(s) + 1e-12;
    if (!sign_ok || !bound_ok)
      detail::record(out, std::fabs(v), "alpha=%.17g beta=%.17g value=%.17g sum=%.17g",
                     a, b, v, s);
  }
  return out;
}

// |A(alpha,beta)| <= |alpha+beta|/2, and A lies between 0 and (alpha+beta)/2.
inline Outcome check_half_sum_bounds(std::size_t n = 100000) {
  Outcome out{"half_sum_bounds"};
  std::mt19937_64 gen(0x5e11aa07ULL);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = detail::uniform(gen, -10.0, 10.0);
    const double b = detail::uniform(gen, -10.0, 10.0);
    const double s = a + b;
    const double v = specdiff::eval_A(a, b);
    ++out.samples;
    const double slack = 1e-12;
    const bool f_ok = std::fabs(v) <= 0.5 * std::fabs(s) + slack;
    const double lo = (s - std::fabs(s)) / 4.0;
    const double hi = (s + std::fabs(s)) / 4.0;
    const bool g_ok = lo - slack <= v && v <= hi + slack;
    if (!f_ok || !g_ok)
      detail::record(out, std::fabs(v) - 0.5 * std::fabs(s),
                     "alpha=%.17g beta=%.17g value=%.17g sum=%.17g", a, b, v, s);
  }
  return out;
}

// The distance from either input to the result is at most the gap between
// the inputs, and directionally at most the positive part of the gap.
inline Outcome check_distance_bounds(std::size_t n = 100000) {
  Outcome out{"distance_bounds"};
  std::mt19937_64 gen(0x5e11aa08ULL);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = detail::uniform(gen, -10.0, 10.0);
    const double b = detail::uniform(gen, -10.0, 10.0);
    const double v = specdiff::eval_A(a, b);
    const double gap = a - b;
    ++out.samples;
    const double slack = 1e-12;
    const bool abs_ok = std::fabs(a - v) <= std::fabs(gap) + slack;
    const double lo = (gap - std::fabs(gap)) / 2.0;
    const double hi = (gap + std::fabs(gap)) / 2.0;
    const bool dir_ok = lo - slack <= a - v && a - v <= hi + slack;
    if (!abs_ok || !dir_ok)
      detail::record(out, std::fabs(a - v) - std::fabs(gap),
                     "alpha=%.17g beta=%.17g value=%.17g gap=%.17g", a, b, v, gap);
  }
  return out;
}

// Pushing one slope to +-1e8 lands within 1e-6 of the closed-form limit,
// which is also what the infinite branch of the composition returns.
inline Outcome check_large_slope_limit(std::size_t n = 100000) {
  Outcome out{"large_slope_limit"};
  std::mt19937_64 gen(0x5e11aa09ULL);
  for (std::size_t i = 0; i < n; ++i) {
    const double b = detail::uniform(gen, -5.0, 5.0);
    const bool up = (gen() & 1u) != 0;
    const double a = up ? 1e8 : -1e8;
    const double v = specdiff::eval_A(a, b);
    const double want = up ? specdiff::detail::plus_sqrt1p2(b)
                           : specdiff::detail::minus_sqrt1p2(b);
    const double dev = std::fabs(v - want);
    ++out.samples;
    if (dev > 1e-6)
      detail::record(out, dev, "alpha=%.17g beta=%.17g value=%.17g limit=%.17g",
                     a, b, v, want);
  }
  return out;
}

namespace detail {

// Sampler for the three-argument form: slopes in [-3,3] away from
// cancellation, denominators spread over six decades.
inline bool sample_triple(std::mt19937_64& gen, double& a, double& b, double& c) {
  const double alpha = uniform(gen, -3.0, 3.0);
  const double beta = uniform(gen, -3.0, 3.0);
  if (std::fabs(alpha + beta) <
      0.3 * std::max({1.0, std::fabs(alpha), std::fabs(beta)}))
    return false;
  c = log_uniform(gen, 1e-3, 1e3);
  a = alpha * c;
  b = beta * c;
  return std::fabs(a) <= 1e3 && std::fabs(b) <= 1e3;
}

}  // namespace detail

// The three-argument form equals the two-argument form of the ratios.
inline Outcome check_ratio_form(std::size_t n = 100000) {
  Outcome out{"ratio_form"};
  std::mt19937_64 gen(0x5e11aa0aULL);
  std::size_t kept = 0;
  while (kept < n) {
    double a, b, c;
    if (!detail::sample_triple(gen, a, b, c)) continue;
    ++kept;
    const double vb = specdiff::eval_B(a, b, c);
    const double va = specdiff::eval_A(a / c, b / c);
    const double dev = std::fabs(vb - va);
    ++out.samples;
    // the sampler keeps |alpha+beta| away from zero, so the reference value
    // is bounded away from zero and a pure relative tolerance is meaningful
    if (dev > 1e-12 * std::fabs(va))
      detail::record(out, dev, "a=%.17g b=%.17g got=%.17g want=%.17g", a, b, vb,
                     va);
  }
  return out;
}

// The algebraic and trigonometric routes agree.
inline Outcome check_two_routes(std::size_t n = 100000) {
  Outcome out{"two_routes"};
  std::mt19937_64 gen(0x5e11aa0bULL);
  std::size_t kept = 0;
  while (kept < n) {
    double a, b, c;
    if (!detail::sample_triple(gen, a, b, c)) continue;
    ++kept;
    const double v1 = specdiff::eval_B(a, b, c);
    const double v2 = specdiff::eval_B_trig(a, b, c);
    const double dev = std::fabs(v1 - v2);
    ++out.samples;
    if (dev > 1e-12 * std::fabs(v1))
      detail::record(out, dev, "a=%.17g b=%.17g algebraic=%.17g trig=%.17g", a,
                     b, v1, v2);
  }
  return out;
}

// tan(arctan(x)/2 + pi/4) = x + sqrt(1+x^2) and the matching minus form.
// The left side is evaluated in extended precision because the plus form
// sits close to the tangent pole for large x.
inline Outcome check_half_angle_shift(std::size_t n = 100000) {
  Outcome out{"half_angle_shift"};
  std::mt19937_64 gen(0x5e11aa0cULL);
  const long double quarter_pi = 0.785398163397448309616L;
  for (std::size_t i = 0; i < n; ++i) {
    const double mag = detail::log_uniform(gen, 1e-6, 1e6);
    const double x = (gen() & 1u) ? mag : -mag;
    const bool plus = (gen() & 1u) != 0;
    const long double lhs =
        std::tan(0.5L * std::atan(static_cast<long double>(x)) +
                 (plus ? quarter_pi : -quarter_pi));
    const double rhs = plus ? specdiff::detail::plus_sqrt1p2(x)
                            : specdiff::detail::minus_sqrt1p2(x);
    const double dev = std::fabs(static_cast<double>(lhs) - rhs);
    ++out.samples;
    if (dev > 1e-12 * std::fabs(rhs))
      detail::record(out, dev, "x=%.17g sign=%+.0f lhs=%.17g rhs=%.17g", x,
                     plus ? 1.0 : -1.0, static_cast<double>(lhs), rhs);
  }
  return out;
}

inline std::vector<Outcome> run_all_suites() {
  return {check_symmetry(),        check_odd_negation(),
          check_strictly_between(), check_sign_matches_sum(),
          check_exact_zero(),      check_cancellation_band(),
          check_half_sum_bounds(), check_distance_bounds(),
          check_large_slope_limit(), check_ratio_form(),
          check_two_routes(),      check_half_angle_shift()};
}

}  // namespace props
