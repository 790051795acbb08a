#pragma once

#include <cctype>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "auxiliary.hpp"
#include "errors.hpp"
#include "one_sided.hpp"

namespace specdiff {

using SourceFunction = std::function<double(double, double)>;

enum class SchemeId { EE, IE, CN, ST, SE1, SE2, SE3, SE4, SE5, SE6 };

inline const char* scheme_name(SchemeId s) {
  switch (s) {
    case SchemeId::EE: return "EE";
    case SchemeId::IE: return "IE";
    case SchemeId::CN: return "CN";
    case SchemeId::ST: return "ST";
    case SchemeId::SE1: return "SE1";
    case SchemeId::SE2: return "SE2";
    case SchemeId::SE3: return "SE3";
    case SchemeId::SE4: return "SE4";
    case SchemeId::SE5: return "SE5";
    case SchemeId::SE6: return "SE6";
  }
  return "?";
}

inline const char* scheme_code_list() { return "ee, ie, cn, st, se1, se2, se3, se4, se5, se6"; }

// Accepts the lowercase short codes (case folded).
inline SchemeId parse_scheme(std::string code) {
  for (char& ch : code) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (code == "ee") return SchemeId::EE;
  if (code == "ie") return SchemeId::IE;
  if (code == "cn") return SchemeId::CN;
  if (code == "st") return SchemeId::ST;
  if (code == "se1") return SchemeId::SE1;
  if (code == "se2") return SchemeId::SE2;
  if (code == "se3") return SchemeId::SE3;
  if (code == "se4") return SchemeId::SE4;
  if (code == "se5") return SchemeId::SE5;
  if (code == "se6") return SchemeId::SE6;
  throw ConfigError("unknown scheme '" + code + "' (valid schemes: " +
                    scheme_code_list() + ")");
}

// ST, SE1, SE2 and SE3 look one node back and need an externally supplied u1.
inline bool is_two_step(SchemeId s) {
  return s == SchemeId::ST || s == SchemeId::SE1 || s == SchemeId::SE2 ||
         s == SchemeId::SE3;
}

inline bool is_implicit(SchemeId s) {
  switch (s) {
    case SchemeId::IE:
    case SchemeId::CN:
    case SchemeId::SE3:
    case SchemeId::SE4:
    case SchemeId::SE5:
    case SchemeId::SE6:
      return true;
    default:
      return false;
  }
}

enum class U1Policy { exact, bootstrap_ee, bootstrap_cn };

struct SchemeConfig {
  SchemeId scheme = SchemeId::EE;
  double h = 0.1;
  double eta = 1e-6;   // fixed-point tolerance
  int max_iters = 100; // fixed-point iteration cap
  // Unset means: use the exact solution when the problem has one, otherwise
  // bootstrap the second node with one explicit Euler step.
  std::optional<U1Policy> u1_policy;
};

struct IvpProblem {
  SourceFunction source;  // F(t, u)
  double t0 = 0.0;
  double u0 = 1.0;
  double T = 1.0;
  std::optional<ScalarFunction> exact;
  std::string id = "custom";
};

struct Trajectory {
  double t0 = 0.0;
  double h = 0.0;
  std::vector<std::pair<double, double>> values;  // (t_n, u_n), first is (t0, u0)
  std::vector<int> fp_iterations;                 // per step, 0 for explicit steps
  std::vector<int> unconverged_steps;             // step indices that hit the cap
};

struct FixedPointResult {
  double value = 0.0;
  int iters = 0;
  bool converged = false;
};

// Plain iteration x <- g(x). Stops once successive iterates come within eta
// and returns the last iterate either way; hitting the cap is reported in the
// flag, not as an error. iters counts evaluations of g.
inline FixedPointResult fixed_point_solve(const std::function<double(double)>& g,
                                          double guess, double eta, int max_iters) {
  if (!(eta > 0.0))
    throw std::invalid_argument("fixed_point_solve: eta must be positive");
  if (max_iters < 1)
    throw std::invalid_argument("fixed_point_solve: max_iters must be at least 1");
  double x = guess;
  for (int k = 1; k <= max_iters; ++k) {
    const double next = g(x);
    if (!std::isfinite(next))
      throw SolverError("fixed_point_solve: iterate is not finite");
    if (std::fabs(next - x) < eta) return {next, k, true};
    x = next;
  }
  return {x, max_iters, false};
}

// Number of full steps of size h from t0 before reaching T. Quotients that
// are integers up to rounding droop (for example 0.3/0.1) are nudged up so
// they count exactly; no partial step is taken past T.
inline int num_steps(double t0, double T, double h) {
  const double q = (T - t0) / h;
  if (!(q > 0.0)) return 0;
  return static_cast<int>(std::floor(q + q * 1e-12 + 1e-9));
}

struct StepNode {
  double t = 0.0;
  double u = 0.0;
};

struct StepHistory {
  std::optional<StepNode> prev;
  StepNode cur;
};

struct StepResult {
  double u_next = 0.0;
  int fp_iters = 0;       // 0 for explicit schemes
  bool fp_converged = true;
};

namespace detail {

// Ingredient slots for the slope-blend rows. The first five are fixed during
// a step; the last two depend on the unknown next node.
enum class SlopeKind { f_cur, f_prev, dq_cur, f_next, dq_next };

struct RowSpec {
  SlopeKind alpha;
  SlopeKind beta;
};

inline RowSpec row_spec(SchemeId s) {
  switch (s) {
    case SchemeId::EE:  return {SlopeKind::f_cur, SlopeKind::f_cur};
    case SchemeId::SE1: return {SlopeKind::f_cur, SlopeKind::f_prev};
    case SchemeId::SE2: return {SlopeKind::f_cur, SlopeKind::dq_cur};
    case SchemeId::SE3: return {SlopeKind::dq_next, SlopeKind::f_prev};
    case SchemeId::SE4: return {SlopeKind::dq_next, SlopeKind::f_cur};
    case SchemeId::SE5: return {SlopeKind::f_next, SlopeKind::f_cur};
    case SchemeId::SE6: return {SlopeKind::f_next, SlopeKind::dq_next};
    case SchemeId::IE:  return {SlopeKind::f_next, SlopeKind::f_next};
    default:
      throw std::logic_error("row_spec: scheme is not a slope-blend row");
  }
}

inline bool kind_implicit(SlopeKind k) {
  return k == SlopeKind::f_next || k == SlopeKind::dq_next;
}

inline bool kind_needs_prev(SlopeKind k) {
  return k == SlopeKind::f_prev || k == SlopeKind::dq_cur;
}

// One step of u_next = u + h * A(alpha, beta) for a Table row.
//
// Implicit rows iterate on the slope s (so that u_next = u + h*s) instead of
// on u_next itself. The difference-quotient ingredient (u_next - u)/h is then
// the iterate s exactly, which keeps the row with alpha = (u_next - u)/h,
// beta = F(t_n, u_n) convergent on its explicit Euler initial guess bit for
// bit. Convergence is still judged on values: |x_new - x| < eta.
inline StepResult blend_step(RowSpec row, const SourceFunction& F,
                             const SchemeConfig& cfg, const StepHistory& hist,
                             double t_next) {
  const double h = cfg.h;
  const double t = hist.cur.t;
  const double u = hist.cur.u;
  const bool needs_prev = kind_needs_prev(row.alpha) || kind_needs_prev(row.beta);
  if (needs_prev && !hist.prev)
    throw std::invalid_argument("step: scheme needs two nodes of history");

  const double f_cur = F(t, u);
  double f_prev = 0.0;
  double dq_cur = 0.0;
  if (row.alpha == SlopeKind::f_prev || row.beta == SlopeKind::f_prev)
    f_prev = F(hist.prev->t, hist.prev->u);
  if (row.alpha == SlopeKind::dq_cur || row.beta == SlopeKind::dq_cur)
    dq_cur = (u - hist.prev->u) / h;

  const auto fixed_value = [&](SlopeKind k) {
    switch (k) {
      case SlopeKind::f_cur: return f_cur;
      case SlopeKind::f_prev: return f_prev;
      case SlopeKind::dq_cur: return dq_cur;
      default:
        throw std::logic_error("blend_step: ingredient is not fixed");
    }
  };

  if (!kind_implicit(row.alpha) && !kind_implicit(row.beta)) {
    const double s = eval_A(fixed_value(row.alpha), fixed_value(row.beta));
    const double u_next = u + h * s;
    if (!std::isfinite(u_next))
      throw SolverError("step: produced a non-finite value at t = " + std::to_string(t));
    return {u_next, 0, true};
  }

  double s = f_cur;          // explicit Euler predictor
  double x = u + h * s;
  if (!std::isfinite(x))
    throw SolverError("step: predictor is not finite at t = " + std::to_string(t));
  for (int k = 1; k <= cfg.max_iters; ++k) {
    const auto ingredient = [&](SlopeKind kind) {
      switch (kind) {
        case SlopeKind::f_next: return F(t_next, x);
        case SlopeKind::dq_next: return s;
        default: return fixed_value(kind);
      }
    };
    const double a = ingredient(row.alpha);
    const double b = row.beta == row.alpha ? a : ingredient(row.beta);
    const double s_new = eval_A(a, b);
    const double x_new = u + h * s_new;
    if (!std::isfinite(x_new))
      throw SolverError("step: fixed-point iterate diverged at t = " + std::to_string(t));
    if (std::fabs(x_new - x) < cfg.eta) return {x_new, k, true};
    s = s_new;
    x = x_new;
  }
  return {x, cfg.max_iters, false};
}

}  // namespace detail

// Advance by one step of length config.h from the newest node in history.
// t_next is the caller's time for the produced node; solve_ivp passes the
// grid node t0 + (n+1)*h so implicit source evaluations and the recorded
// trajectory agree exactly.
inline StepResult step(SchemeId scheme, const IvpProblem& problem,
                       const SchemeConfig& config, const StepHistory& hist,
                       double t_next) {
  const double h = config.h;
  if (!(h > 0.0)) throw ConfigError("step: h must be positive");
  const double t = hist.cur.t;
  const double u = hist.cur.u;
  switch (scheme) {
    case SchemeId::EE: {
      const double u_next = u + h * problem.source(t, u);
      if (!std::isfinite(u_next))
        throw SolverError("step: produced a non-finite value at t = " + std::to_string(t));
      return {u_next, 0, true};
    }
    case SchemeId::CN: {
      const double f0 = problem.source(t, u);
      double x = u + h * f0;
      if (!std::isfinite(x))
        throw SolverError("step: predictor is not finite at t = " + std::to_string(t));
      for (int k = 1; k <= config.max_iters; ++k) {
        const double s_new = 0.5 * (f0 + problem.source(t_next, x));
        const double x_new = u + h * s_new;
        if (!std::isfinite(x_new))
          throw SolverError("step: fixed-point iterate diverged at t = " +
                            std::to_string(t));
        if (std::fabs(x_new - x) < config.eta) return {x_new, k, true};
        x = x_new;
      }
      return {x, config.max_iters, false};
    }
    case SchemeId::ST: {
      if (!hist.prev)
        throw std::invalid_argument("step: scheme needs two nodes of history");
      const double dq = (u - hist.prev->u) / h;
      const double theta = 2.0 * std::atan(problem.source(t, u)) - std::atan(dq);
      // error only at an actual tangent pole; the angle routinely leaves
      // (-pi/2, pi/2) on runs this scheme is documented to lose
      const double pole_dist =
          std::fabs(std::remainder(theta - std::numbers::pi / 2.0, std::numbers::pi));
      if (pole_dist < 1e-9)
        throw SolverError("step: trigonometric update hit a tangent pole at t = " +
                          std::to_string(t));
      const double u_next = u + h * std::tan(theta);
      if (!std::isfinite(u_next))
        throw SolverError("step: produced a non-finite value at t = " + std::to_string(t));
      return {u_next, 0, true};
    }
    default:
      return detail::blend_step(detail::row_spec(scheme), problem.source, config, hist,
                                t_next);
  }
}

// Integrate from (t0, u0) taking num_steps(t0, T, h) full steps. Node times
// are t0 + n*h computed by multiplication. Two-step schemes obtain u1 from
// the policy first; fixed-point steps that hit the iteration cap are recorded
// in unconverged_steps and the run continues with the last iterate.
inline Trajectory solve_ivp(const IvpProblem& problem, const SchemeConfig& config) {
  if (!(config.h > 0.0)) throw ConfigError("solve_ivp: h must be positive");
  if (!(problem.T > problem.t0)) throw ConfigError("solve_ivp: T must exceed t0");
  if (!(config.eta > 0.0)) throw ConfigError("solve_ivp: eta must be positive");
  if (config.max_iters < 1) throw ConfigError("solve_ivp: max_iters must be at least 1");

  const int n_steps = num_steps(problem.t0, problem.T, config.h);
  Trajectory traj;
  traj.t0 = problem.t0;
  traj.h = config.h;
  traj.values.reserve(static_cast<std::size_t>(n_steps) + 1);
  traj.fp_iterations.reserve(static_cast<std::size_t>(n_steps));
  traj.values.emplace_back(problem.t0, problem.u0);
  if (n_steps == 0) return traj;

  const auto node_time = [&](int n) { return problem.t0 + n * config.h; };

  int start = 0;
  if (is_two_step(config.scheme)) {
    const double t1 = node_time(1);
    const U1Policy policy =
        config.u1_policy ? *config.u1_policy
                         : (problem.exact ? U1Policy::exact : U1Policy::bootstrap_ee);
    double u1 = 0.0;
    int iters1 = 0;
    bool converged1 = true;
    const StepHistory from_start{std::nullopt, {problem.t0, problem.u0}};
    switch (policy) {
      case U1Policy::exact:
        if (!problem.exact)
          throw ConfigError("solve_ivp: u1 policy 'exact' needs an exact solution");
        u1 = (*problem.exact)(t1);
        break;
      case U1Policy::bootstrap_ee:
        u1 = step(SchemeId::EE, problem, config, from_start, t1).u_next;
        break;
      case U1Policy::bootstrap_cn: {
        const StepResult r = step(SchemeId::CN, problem, config, from_start, t1);
        u1 = r.u_next;
        iters1 = r.fp_iters;
        converged1 = r.fp_converged;
        break;
      }
    }
    traj.values.emplace_back(t1, u1);
    traj.fp_iterations.push_back(iters1);
    if (!converged1) traj.unconverged_steps.push_back(0);
    start = 1;
  }

  for (int n = start; n < n_steps; ++n) {
    StepHistory hist;
    hist.cur = {traj.values[static_cast<std::size_t>(n)].first,
                traj.values[static_cast<std::size_t>(n)].second};
    if (n >= 1)
      hist.prev = StepNode{traj.values[static_cast<std::size_t>(n) - 1].first,
                           traj.values[static_cast<std::size_t>(n) - 1].second};
    const double t_next = node_time(n + 1);
    StepResult r;
    try {
      r = step(config.scheme, problem, config, hist, t_next);
    } catch (const SolverError& e) {
      throw SolverError(std::string(e.what()) + " (step " + std::to_string(n) + ")");
    }
    traj.values.emplace_back(t_next, r.u_next);
    traj.fp_iterations.push_back(r.fp_iters);
    if (!r.fp_converged) traj.unconverged_steps.push_back(n);
  }
  return traj;
}

}  // namespace specdiff
