#pragma once

#include <stdexcept>
#include <string>

namespace wgif {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Input data problems (files, configuration, invalid ids).
class DataError : public Error {
public:
  using Error::Error;
};

class ParseError : public DataError {
public:
  ParseError(const std::string& what, std::size_t line)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class ValidationError : public DataError {
public:
  using DataError::DataError;
};

class TopologyError : public DataError {
public:
  using DataError::DataError;
};

class GenerationError : public DataError {
public:
  using DataError::DataError;
};

class WellPosednessError : public DataError {
public:
  using DataError::DataError;
};

class StudyError : public DataError {
public:
  using DataError::DataError;
};

// Numerical failures.
class NumericalError : public Error {
public:
  using Error::Error;
};

class ElementError : public NumericalError {
public:
  ElementError(const std::string& what, long triangle = -1)
      : NumericalError(triangle >= 0 ? "triangle " + std::to_string(triangle) + ": " + what : what),
        triangle_(triangle) {}
  long triangle() const noexcept { return triangle_; }

private:
  long triangle_;
};

class EvaluationError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class SolverError : public NumericalError {
public:
  SolverError(const std::string& what, long pivot = -1)
      : NumericalError(what), pivot_(pivot) {}
  /// Column of the failing pivot, -1 when unknown.
  long pivot() const noexcept { return pivot_; }

private:
  long pivot_;
};

class AccuracyError : public NumericalError {
public:
  AccuracyError(const std::string& what, double residual)
      : NumericalError(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

}  // namespace wgif
