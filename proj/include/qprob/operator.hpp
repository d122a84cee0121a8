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

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <vector>

namespace qprob {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

class StateVector;
class UnitaryOperator;

/** Largest |m_ij|. */
double max_abs(const Matrix& m);
/** Frobenius norm. */
double frobenius_norm(const Matrix& m);

/**
 * Finite-dimensional complex Hermitian operator.
 *
 * The stored matrix is exactly Hermitian: inputs within the hermiticity
 * tolerance are symmetrised as (A + A^dagger)/2 on construction, so the
 * diagonal is real and Tr(AB) of two such operators has no spurious
 * imaginary part beyond round-off.
 */
class HermitianOperator {
 public:
  /**
   * @throws NonFiniteEntry if any entry is NaN or infinite.
   * @throws NotHermitian if max|A - A^dagger| exceeds the tolerance.
   * @throws DimensionMismatch if the matrix is empty or not square.
   */
  explicit HermitianOperator(const Matrix& m);

  static HermitianOperator zero(std::size_t dim);
  static HermitianOperator identity(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  double trace() const { return m_.trace().real(); }

  HermitianOperator operator+(const HermitianOperator& other) const;
  HermitianOperator operator-(const HermitianOperator& other) const;
  HermitianOperator scaled(double factor) const;

 protected:
  struct Trusted {};
  HermitianOperator(Matrix m, Trusted) : m_(std::move(m)) {}
  Matrix m_;
};

/** Hermitian operator with non-negative spectrum (up to the PSD slack). */
class PositiveOperator : public HermitianOperator {
 public:
  /** Validating conversion; see check_positive(). */
  explicit PositiveOperator(const HermitianOperator& h);

  static PositiveOperator zero(std::size_t dim);
  static PositiveOperator identity(std::size_t dim);
  /** G G^dagger, positive by construction. */
  static PositiveOperator gram(const Matrix& g);

  PositiveOperator operator+(const PositiveOperator& other) const;
  /** @throws DomainError for negative factors. */
  PositiveOperator scaled(double factor) const;

  /** Ascending eigenvalues with values in [-tol, 0) clamped to zero. */
  std::vector<double> spectrum() const;
  double max_eigenvalue() const;

 protected:
  PositiveOperator(Matrix m, Trusted t) : HermitianOperator(std::move(m), t) {}

  friend PositiveOperator check_positive(const HermitianOperator& a);
  friend PositiveOperator projector(const StateVector& v);
  friend PositiveOperator tensor_product(const PositiveOperator& a,
                                         const PositiveOperator& b);
  friend PositiveOperator conjugate(const UnitaryOperator& u,
                                    const PositiveOperator& a);
  friend class DensityOperator;
};

/** Positive operator of unit trace. */
class DensityOperator : public PositiveOperator {
 public:
  /** @throws NotNormalized if |Tr - 1| exceeds the trace tolerance. */
  explicit DensityOperator(const PositiveOperator& p);

  static DensityOperator maximally_mixed(std::size_t dim);
  /**
   * p / Tr(p).
   * @throws DomainError if Tr(p) is below the trace floor.
   */
  static DensityOperator normalized(const PositiveOperator& p);

 private:
  DensityOperator(Matrix m, Trusted t) : PositiveOperator(std::move(m), t) {}
};

/** Unit-norm vector of amplitudes. */
class StateVector {
 public:
  /** @throws NotNormalized if | ||v|| - 1 | > 1e-12. */
  explicit StateVector(const Vector& amplitudes);

  /** Rescales a nonzero vector to unit norm. */
  static StateVector normalized(const Vector& v);
  /** Computational basis vector e_index. */
  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return static_cast<std::size_t>(v_.size()); }
  const Vector& amplitudes() const { return v_; }

 private:
  Vector v_;
};

class UnitaryOperator {
 public:
  /** @throws NotUnitary if max|U U^dagger - I| > 1e-12. */
  explicit UnitaryOperator(const Matrix& u);

  static UnitaryOperator identity(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(u_.rows()); }
  const Matrix& matrix() const { return u_; }
  /** The basis vector U e_index. */
  StateVector column(std::size_t index) const;

 private:
  Matrix u_;
};

struct EigenDecomposition {
  /// Ascending.
  std::vector<double> eigenvalues;
  /// Orthonormal; eigenvectors[l] belongs to eigenvalues[l].
  std::vector<StateVector> eigenvectors;

  /** sum_l lambda_l |l><l| */
  Matrix reconstruct() const;
};

/**
 * Re Tr(A B).
 * @throws DimensionMismatch for unequal dimensions.
 * @throws InternalConsistencyError if the imaginary part exceeds 1e-9.
 */
double trace_product(const HermitianOperator& a, const HermitianOperator& b);

/**
 * Eigendecomposition by cyclic complex Jacobi rotations.
 *
 * Sweeps until the off-diagonal Frobenius norm drops to 1e-14 ||A||_F.
 * @throws ConvergenceError after 100 sweeps without convergence.
 */
EigenDecomposition eigh(const HermitianOperator& a);

/** @throws NotPositive carrying the minimum eigenvalue. */
PositiveOperator check_positive(const HermitianOperator& a);

HermitianOperator tensor_product(const HermitianOperator& a,
                                 const HermitianOperator& b);
PositiveOperator tensor_product(const PositiveOperator& a,
                                const PositiveOperator& b);
DensityOperator tensor_product(const DensityOperator& a,
                               const DensityOperator& b);

/** |v><v| */
PositiveOperator projector(const StateVector& v);

/** U A U^dagger */
HermitianOperator conjugate(const UnitaryOperator& u,
                            const HermitianOperator& a);
PositiveOperator conjugate(const UnitaryOperator& u, const PositiveOperator& a);
DensityOperator conjugate(const UnitaryOperator& u, const DensityOperator& a);

}  // namespace qprob
