// Copyright 2026 The qprob Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qprob {

/**
 * Base class of every error raised by the library.
 *
 * Domain errors describe invalid inputs (non-Hermitian matrices, unknown
 * labels, states for which no outcome can be recorded). Internal
 * consistency errors signal that a numerical invariant broke and are
 * never expected for valid inputs.
 */
class QprobError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public QprobError {
 public:
  using QprobError::QprobError;
};

class DimensionMismatch : public DomainError {
 public:
  using DomainError::DomainError;
};

class NotHermitian : public DomainError {
 public:
  using DomainError::DomainError;
};

class NonFiniteEntry : public DomainError {
 public:
  using DomainError::DomainError;
};

class NotPositive : public DomainError {
 public:
  NotPositive(const std::string& what, double eigenvalue)
      : DomainError(what), eigenvalue_(eigenvalue) {}

  /** The offending (most negative) eigenvalue. */
  double eigenvalue() const { return eigenvalue_; }

 private:
  double eigenvalue_;
};

class NotNormalized : public DomainError {
 public:
  using DomainError::DomainError;
};

class NotUnitary : public DomainError {
 public:
  using DomainError::DomainError;
};

class UnknownLabel : public DomainError {
 public:
  using DomainError::DomainError;
};

class LabelCollision : public DomainError {
 public:
  using DomainError::DomainError;
};

class InvalidProcedure : public DomainError {
 public:
  using DomainError::DomainError;
};

/** Procedure whose outcome operators sum to (numerically) zero. */
class DegenerateProcedure : public InvalidProcedure {
 public:
  using InvalidProcedure::InvalidProcedure;
};

/** Raised when a POVM is requested from a procedure with X not ∝ I. */
class NonStandardProcedure : public DomainError {
 public:
  using DomainError::DomainError;
};

class InvalidEnsemble : public DomainError {
 public:
  using DomainError::DomainError;
};

/** Tr(X rho) fell below the denominator floor: nothing can be recorded. */
class IncompatibleState : public DomainError {
 public:
  using DomainError::DomainError;
};

/** Tr(M_j rho) fell below the denominator floor in a retrodiction. */
class OutcomeImpossible : public DomainError {
 public:
  using DomainError::DomainError;
};

class FrameViolation : public DomainError {
 public:
  using DomainError::DomainError;
};

class InvalidScenario : public DomainError {
 public:
  using DomainError::DomainError;
};

class ConvergenceError : public QprobError {
 public:
  using QprobError::QprobError;
};

class InternalConsistencyError : public QprobError {
 public:
  using QprobError::QprobError;
};

}  // namespace qprob
