#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lexstat {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptyCorpusError : Error {
  EmptyCorpusError() : Error("corpus is empty after tokenization") {}
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct ResourceError : Error {
  using Error::Error;
};

// Nonlinear fit did not converge or the data is degenerate; carries diagnostics.
struct FitFailure : Error {
  using Error::Error;
};

struct DegenerateSignalError : Error {
  using Error::Error;
};

struct NoRootError : Error {
  using Error::Error;
};

struct InsufficientOccurrencesError : Error {
  using Error::Error;
};

// Death-model population hit zero; records the step at which it happened.
struct ExtinctionError : Error {
  explicit ExtinctionError(std::size_t step_index)
      : Error("population extinct at step " + std::to_string(step_index)),
        step(step_index) {}
  std::size_t step;
};

}  // namespace lexstat
