#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "nep/types.hpp"

namespace nep {

/// Base class of every error raised by the library.
class NepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid sizes or option values.
class ArgumentError : public NepError {
 public:
  using NepError::NepError;
};

/// Evaluation point on a branch cut, pole or other declared singularity.
class DomainError : public NepError {
 public:
  using NepError::NepError;
};

/// A compute function has no native implementation and no fallback route.
class CapabilityError : public NepError {
 public:
  using NepError::NepError;
};

/// Factorization of M(lambda) detected exact or numerical singularity.
class SingularSystem : public NepError {
 public:
  SingularSystem(const std::string& what, Complex shift, double rcond)
      : NepError(what), shift_(shift), rcond_(rcond) {}
  Complex shift() const { return shift_; }
  double rcond() const { return rcond_; }

 private:
  Complex shift_;
  double rcond_;
};

/// Raised when a shift coincides with the spectrum of a deflated invariant pair.
class SingularShift : public NepError {
 public:
  using NepError::NepError;
};

/// A matrix function f_i could not be evaluated on the given argument.
class MatrixFunctionError : public NepError {
 public:
  MatrixFunctionError(const std::string& what, int term)
      : NepError(what + " (term " + std::to_string(term) + ")"), term_(term) {}
  int term() const { return term_; }

 private:
  int term_;
};

/// Iteration limit reached; carries the best iterate seen.
class NoConvergence : public NepError {
 public:
  NoConvergence(const std::string& what, Complex lambda, Vector v,
                std::vector<double> history, int iterations)
      : NepError(what),
        lambda_(lambda),
        v_(std::move(v)),
        history_(std::move(history)),
        iterations_(iterations) {}
  Complex lambda() const { return lambda_; }
  const Vector& vector() const { return v_; }
  const std::vector<double>& history() const { return history_; }
  int iterations() const { return iterations_; }

 private:
  Complex lambda_;
  Vector v_;
  std::vector<double> history_;
  int iterations_;
};

/// Contour method could not separate the enclosed spectrum with the given probes.
class RankTestFailed : public NepError {
 public:
  using NepError::NepError;
};

class UnknownName : public NepError {
 public:
  UnknownName(const std::string& name, const std::vector<std::string>& valid);
};

}  // namespace nep
