#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace extrapkit {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value lies outside the domain of an exponent operation (p < 1 for a
/// conjugate, a zero summand in a harmonic sum, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Errors that describe a well-formed request whose exponents fail a
/// feasibility condition. The CLI maps these to exit status 2.
class PlanError : public Error {
 public:
  using Error::Error;
};

class InvalidRange : public PlanError {
 public:
  using PlanError::PlanError;
};

class OutOfRange : public PlanError {
 public:
  using PlanError::PlanError;
};

class CaseUnsupported : public PlanError {
 public:
  using PlanError::PlanError;
};

class Infeasible : public PlanError {
 public:
  Infeasible(std::string condition, const std::string& detail)
      : PlanError(condition + ": " + detail), condition_(std::move(condition)) {}

  /// Short identifier of the violated condition, e.g. "1/q < 3/2".
  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

class InfeasibleBase : public Infeasible {
 public:
  using Infeasible::Infeasible;
};

class GammaInvalid : public PlanError {
 public:
  using PlanError::PlanError;
};

class StepInvalid : public PlanError {
 public:
  StepInvalid(std::size_t index, const std::string& violated)
      : PlanError("step " + std::to_string(index) + ": " + violated), index_(index) {}

  /// One-based coordinate index of the failing step.
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class SearchFailed : public PlanError {
 public:
  using PlanError::PlanError;
};

class CertificationFailed : public PlanError {
 public:
  using PlanError::PlanError;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

class TruncationInvalid : public Error {
 public:
  using Error::Error;
};

class NormBoundTooSmall : public Error {
 public:
  using Error::Error;
};

class DivergentProbe : public Error {
 public:
  using Error::Error;
};

class UnknownSpec : public Error {
 public:
  using Error::Error;
};

class UnknownSurrogate : public Error {
 public:
  using Error::Error;
};

}  // namespace extrapkit
