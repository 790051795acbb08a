#pragma once

#include <cmath>
#include <stdexcept>

#include "auxiliary.hpp"
#include "schemes.hpp"

namespace specdiff {

// du/dt = lambda * u with exact solution u0 * exp(lambda * (t - t0)).
inline IvpProblem dahlquist(double lambda, double u0, double t0, double T) {
  if (!std::isfinite(lambda))
    throw std::invalid_argument("dahlquist: lambda must be finite");
  if (!(T > t0)) throw std::invalid_argument("dahlquist: need T > t0");
  IvpProblem p;
  p.source = [lambda](double, double u) { return lambda * u; };
  p.exact = [lambda, u0, t0](double t) { return u0 * std::exp(lambda * (t - t0)); };
  p.t0 = t0;
  p.u0 = u0;
  p.T = T;
  p.id = "dahlquist";
  return p;
}

// du/dt = -t*u/(1 - t^2) from (0, 1), exact solution sqrt(1 - t^2), the upper
// unit half circle. The source blows up at t = 1, so T stays strictly below 1
// and the source itself rejects |t| >= 1.
inline IvpProblem circle_problem(double T) {
  if (!(T > 0.0 && T < 1.0))
    throw std::invalid_argument("circle_problem: need 0 < T < 1");
  IvpProblem p;
  p.source = [](double t, double u) {
    if (std::fabs(t) >= 1.0)
      throw std::domain_error("circle source: |t| >= 1 is outside the domain");
    return -(t * u) / (1.0 - t * t);
  };
  p.exact = [](double t) { return std::sqrt(1.0 - t * t); };
  p.t0 = 0.0;
  p.u0 = 1.0;
  p.T = T;
  p.id = "circle";
  return p;
}

// du/dt = F_c(t) - 3u where the forcing F_c is 0 for t < 0 and 3t + 1 for
// t > 0. The exact solution t + c*exp(-3t) (t >= 0) resp. c*exp(-3t) (t < 0)
// has a kink at t = 0. The forcing value AT zero is chosen so the equation
// holds there in the generalized sense: blending the one-sided solution
// slopes 1 - 3c and -3c and adding back 3u(0) = 3c, with the special value
// 1/2 when c = 1/6 (where the blend degenerates to 0).
inline IvpProblem nonsmooth_linear(double c, double t0, double T) {
  if (!(T > t0)) throw std::invalid_argument("nonsmooth_linear: need T > t0");
  const double f_at_zero =
      c == 1.0 / 6.0 ? 0.5 : eval_A(1.0 - 3.0 * c, -3.0 * c) + 3.0 * c;
  IvpProblem p;
  p.source = [f_at_zero](double t, double u) {
    double forcing;
    if (t > 0.0)
      forcing = 3.0 * t + 1.0;
    else if (t < 0.0)
      forcing = 0.0;
    else
      forcing = f_at_zero;
    return forcing - 3.0 * u;
  };
  p.exact = [c](double t) {
    const double tail = c * std::exp(-3.0 * t);
    return t >= 0.0 ? t + tail : tail;
  };
  p.t0 = t0;
  p.u0 = (*p.exact)(t0);
  p.T = T;
  p.id = "nonsmooth";
  return p;
}

}  // namespace specdiff
