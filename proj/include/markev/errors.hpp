#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace markev {

using idx = std::int64_t;

// Base of all library errors. ValidationError covers malformed inputs
// (CLI exit code 2), NumericalError covers failures of the computation
// itself (CLI exit code 3).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class NonSquareError : public ValidationError {
 public:
  NonSquareError(idx rows, idx cols)
      : ValidationError("matrix is not square: " + std::to_string(rows) + "x" +
                        std::to_string(cols)) {}
};

class NegativeEntryError : public ValidationError {
 public:
  NegativeEntryError(idx i, idx j, double v)
      : ValidationError("negative entry at (" + std::to_string(i) + "," +
                        std::to_string(j) + "): " + std::to_string(v)),
        row(i),
        col(j) {}
  idx row, col;
};

class NonStochasticError : public ValidationError {
 public:
  NonStochasticError(idx j, double deviation)
      : ValidationError("column " + std::to_string(j) +
                        " is not stochastic, deviation " +
                        std::to_string(deviation)),
        column(j),
        deviation(deviation) {}
  idx column;
  double deviation;
};

class UnknownStateError : public ValidationError {
 public:
  explicit UnknownStateError(const std::string& name)
      : ValidationError("unknown state: " + name) {}
  explicit UnknownStateError(idx i)
      : ValidationError("state index out of range: " + std::to_string(i)) {}
};

class UnknownClassError : public ValidationError {
 public:
  explicit UnknownClassError(idx m)
      : ValidationError("unknown ergodic class: " + std::to_string(m)) {}
};

class NoTransientStatesError : public ValidationError {
 public:
  NoTransientStatesError()
      : ValidationError("chain has no transient states (t = 0)") {}
};

class NotAbsorbingError : public ValidationError {
 public:
  explicit NotAbsorbingError(const std::string& state)
      : ValidationError("state is not absorbing: " + state) {}
};

class NotCompositeError : public ValidationError {
 public:
  NotCompositeError(idx n, idx n0, int p)
      : ValidationError("chain size " + std::to_string(n) +
                        " is not a " + std::to_string(p) +
                        "-fold composite of base size " + std::to_string(n0)) {}
};

class MissingDistanceError : public ValidationError {
 public:
  MissingDistanceError(idx i, idx j)
      : ValidationError("no distance for structural transition (" +
                        std::to_string(j) + " -> " + std::to_string(i) + ")"),
        row(i),
        col(j) {}
  idx row, col;
};

class ZeroConditionError : public ValidationError {
 public:
  ZeroConditionError(idx i, idx j)
      : ValidationError(
            "mask violates the zero condition at ergodic transition (" +
            std::to_string(j) + " -> " + std::to_string(i) +
            "); the cumulative expectation may be infinite"),
        row(i),
        col(j) {}
  idx row, col;
};

class SchemaError : public ValidationError {
 public:
  explicit SchemaError(const std::string& what)
      : ValidationError("schema error: " + what) {}
};

class InvalidBoardError : public ValidationError {
 public:
  explicit InvalidBoardError(const std::string& what)
      : ValidationError("invalid board: " + what) {}
};

class SizeLimitError : public ValidationError {
 public:
  SizeLimitError(idx requested, idx limit)
      : ValidationError("composite chain size " + std::to_string(requested) +
                        " exceeds the configured maximum " +
                        std::to_string(limit)) {}
};

class SingularSystemError : public NumericalError {
 public:
  explicit SingularSystemError(double diag)
      : NumericalError(
            "I - A_T is numerically singular (factor diagonal " +
            std::to_string(diag) +
            "); a transient class may be numerically ergodic") {}
  explicit SingularSystemError(const std::string& what)
      : NumericalError("I - A_T is numerically singular: " + what) {}
};

class StationaryFailureError : public NumericalError {
 public:
  explicit StationaryFailureError(const std::string& what)
      : NumericalError("stationary vector solve failed: " + what) {}
};

class ResidualError : public NumericalError {
 public:
  ResidualError(double residual, double limit)
      : NumericalError("solve residual " + std::to_string(residual) +
                       " exceeds the acceptance limit " +
                       std::to_string(limit)),
        residual(residual) {}
  double residual;
};

class ExcessiveTruncationError : public NumericalError {
 public:
  ExcessiveTruncationError(std::uint64_t truncated, std::uint64_t total)
      : NumericalError("simulation truncated " + std::to_string(truncated) +
                       " of " + std::to_string(total) +
                       " paths at the step cap") {}
};

}  // namespace markev
