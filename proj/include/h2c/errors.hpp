#pragma once

#include <stdexcept>
#include <string>

namespace h2c {

// Exit-code families used by the command line tool.
enum class ErrorKind { bad_input = 2, not_converged = 3, not_immersed = 4 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& what)
      : std::runtime_error(what), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const { return kind_; }
  // Short machine-readable identifier, e.g. "fit-degenerate".
  const std::string& code() const { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

struct InvalidOrderError : Error {
  explicit InvalidOrderError(const std::string& what) : Error(ErrorKind::bad_input, "invalid-order", what) {}
};

struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(ErrorKind::bad_input, "out-of-domain", what) {}
};

struct ShapeError : Error {
  explicit ShapeError(const std::string& what) : Error(ErrorKind::bad_input, "shape-mismatch", what) {}
};

struct FitDegenerateError : Error {
  explicit FitDegenerateError(const std::string& what) : Error(ErrorKind::bad_input, "fit-degenerate", what) {}
};

struct InvalidParameterError : Error {
  explicit InvalidParameterError(const std::string& what) : Error(ErrorKind::bad_input, "invalid-parameter", what) {}
};

struct NotImmersedError : Error {
  NotImmersedError(const std::string& what, int time_node = -1, int space_node = -1)
      : Error(ErrorKind::not_immersed, "not-immersed", what), time_node(time_node), space_node(space_node) {}
  int time_node;
  int space_node;
};

struct InitDegenerateError : Error {
  explicit InitDegenerateError(const std::string& what) : Error(ErrorKind::not_immersed, "init-degenerate", what) {}
};

struct StepTooLargeError : Error {
  StepTooLargeError(const std::string& what, int step = -1)
      : Error(ErrorKind::not_converged, "step-too-large", what), step(step) {}
  int step;
};

// A boundary-value solve inside a population computation failed; `index` is the curve.
struct MeanIterationError : Error {
  MeanIterationError(const std::string& what, int index, int iteration)
      : Error(ErrorKind::not_converged, "mean-iteration", what), index(index), iteration(iteration) {}
  int index;
  int iteration;
};

struct NotConvergedError : Error {
  explicit NotConvergedError(const std::string& what) : Error(ErrorKind::not_converged, "not-converged", what) {}
};

}  // namespace h2c
