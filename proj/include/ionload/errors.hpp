#pragma once

#include <stdexcept>
#include <string>

namespace ionload {

// Validation problems (bad inputs, bad config). CLI maps these to exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Config file problems carry the offending line number (0 = whole file).
class ConfigError : public ValidationError {
 public:
  ConfigError(int line, const std::string& msg)
      : ValidationError(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Numerical non-convergence (ODE tolerance not met, quadrature budget
// exhausted, fit failed). Carries the achieved error estimate where one
// exists. CLI maps these to exit code 2.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& msg, double achieved)
      : std::runtime_error(msg + " (achieved error estimate " +
                           std::to_string(achieved) + ")"),
        achieved_(achieved) {}
  explicit ConvergenceError(const std::string& msg)
      : std::runtime_error(msg), achieved_(-1.0) {}
  double achieved() const { return achieved_; }

 private:
  double achieved_;
};

}  // namespace ionload
