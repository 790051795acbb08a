#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace specdiff {

// f returned NaN or an infinity at a point the estimator needed
struct EvaluationError : std::runtime_error {
  explicit EvaluationError(const std::string& msg) : std::runtime_error(msg) {}
};

// difference quotients neither settled nor diverged within the schedule
struct NoLimitError : std::runtime_error {
  explicit NoLimitError(const std::string& msg) : std::runtime_error(msg) {}
};

// a probe needed a derivative value that does not exist at the point
struct NoDerivativeError : std::runtime_error {
  explicit NoDerivativeError(const std::string& msg) : std::runtime_error(msg) {}
};

struct BracketNotFoundError : std::runtime_error {
  explicit BracketNotFoundError(const std::string& msg) : std::runtime_error(msg) {}
};

// time stepping failed: diverged fixed point, tangent pole, non-finite state
struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// expression text rejected; position is a byte offset into the input
struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t offset)
      : std::runtime_error(msg), position(offset) {}
  std::size_t position;
};

}  // namespace specdiff
