#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "schemes.hpp"

namespace specdiff {

enum class PNorm { one, two, inf };

inline const char* pnorm_label(PNorm p) {
  switch (p) {
    case PNorm::one: return "1";
    case PNorm::two: return "2";
    default: return "inf";
  }
}

inline PNorm parse_pnorm(const std::string& s) {
  if (s == "1") return PNorm::one;
  if (s == "2") return PNorm::two;
  if (s == "inf") return PNorm::inf;
  throw ConfigError("unknown norm '" + s + "' (valid: 1, 2, inf)");
}

struct ErrorReport {
  std::string problem_id;
  SchemeId scheme = SchemeId::EE;
  PNorm p = PNorm::inf;
  int N = 0;
  double h = 0.0;
  double E = 0.0;
  std::optional<double> R;  // absent for the smallest N of a sweep
};

// Accumulated error against the exact solution over every recorded node:
// (h * sum |e_n|^p)^(1/p) for finite p, max |e_n| for p = inf.
inline double accumulated_error(const Trajectory& traj, const ScalarFunction& exact,
                                PNorm p) {
  double acc = 0.0;
  for (const auto& [t, u] : traj.values) {
    const double e = std::fabs(u - exact(t));
    switch (p) {
      case PNorm::one: acc += e; break;
      case PNorm::two: acc += e * e; break;
      case PNorm::inf:
        if (e > acc) acc = e;
        break;
    }
  }
  switch (p) {
    case PNorm::one: return traj.h * acc;
    case PNorm::two: return std::sqrt(traj.h * acc);
    default: return acc;
  }
}

// log2 of the error drop from the half resolution run.
inline double error_ratio(double E_half, double E) {
  if (!(E_half > 0.0) || !(E > 0.0))
    throw std::invalid_argument("error_ratio: both errors must be positive");
  return std::log2(E_half / E);
}

// SPECKIT_THREADS caps sweep parallelism; unset or invalid falls back to the
// hardware thread count.
inline unsigned sweep_thread_cap() {
  if (const char* env = std::getenv("SPECKIT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 4096)
      return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// One solve per k in [k_min, k_max] with N = 2^k and h = 1/N, errors chained
// into ratios in ascending k order. The solves are independent and may run on
// worker threads; reports are assembled in k order afterwards, so the output
// does not depend on scheduling.
inline std::vector<ErrorReport> convergence_sweep(const IvpProblem& problem,
                                                  SchemeId scheme, int k_min,
                                                  int k_max, PNorm p,
                                                  const SchemeConfig& config_base) {
  if (!problem.exact)
    throw ConfigError("convergence_sweep: problem has no exact solution");
  if (k_min > k_max) throw ConfigError("convergence_sweep: empty k range");
  if (k_min < 0 || k_max > 26)
    throw ConfigError("convergence_sweep: k must lie in [0, 26]");

  const int count = k_max - k_min + 1;
  std::vector<ErrorReport> out(static_cast<std::size_t>(count));
  std::vector<std::exception_ptr> failed(static_cast<std::size_t>(count));

  const auto run_one = [&](int idx) {
    const int k = k_min + idx;
    const int N = 1 << k;
    SchemeConfig cfg = config_base;
    cfg.scheme = scheme;
    cfg.h = 1.0 / N;
    ErrorReport rep;
    rep.problem_id = problem.id;
    rep.scheme = scheme;
    rep.p = p;
    rep.N = N;
    rep.h = cfg.h;
    try {
      rep.E = accumulated_error(solve_ivp(problem, cfg), *problem.exact, p);
    } catch (const SolverError& e) {
      throw SolverError(std::string("scheme ") + scheme_name(scheme) + ", N = " +
                        std::to_string(N) + ": " + e.what());
    }
    out[static_cast<std::size_t>(idx)] = std::move(rep);
  };

  const unsigned workers =
      std::min<unsigned>(sweep_thread_cap(), static_cast<unsigned>(count));
  if (workers <= 1) {
    for (int idx = 0; idx < count; ++idx) run_one(idx);
  } else {
    std::atomic<int> cursor{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int idx = cursor.fetch_add(1); idx < count; idx = cursor.fetch_add(1)) {
          try {
            run_one(idx);
          } catch (...) {
            failed[static_cast<std::size_t>(idx)] = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  for (const std::exception_ptr& err : failed)
    if (err) std::rethrow_exception(err);

  for (int idx = 1; idx < count; ++idx) {
    const double prev = out[static_cast<std::size_t>(idx) - 1].E;
    const double cur = out[static_cast<std::size_t>(idx)].E;
    if (prev > 0.0 && cur > 0.0)
      out[static_cast<std::size_t>(idx)].R = error_ratio(prev, cur);
  }
  return out;
}

}  // namespace specdiff
