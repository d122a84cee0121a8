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

#include "qprob/operator.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "qprob/errors.hpp"
#include "qprob/tolerances.hpp"

namespace qprob {

namespace {

Tolerances& mutable_tolerances() {
  static Tolerances current;
  return current;
}

constexpr double kNormTolerance = 1e-12;
constexpr double kUnitaryTolerance = 1e-12;
constexpr double kImaginaryTraceLimit = 1e-9;

Eigen::Index as_index(std::size_t i) { return static_cast<Eigen::Index>(i); }

void require_same_dim(std::size_t a, std::size_t b, const char* where) {
  if (a != b) {
    std::ostringstream os;
    os << where << ": dimension mismatch (" << a << " vs " << b << ")";
    throw DimensionMismatch(os.str());
  }
}

}  // namespace

const Tolerances& tolerances() { return mutable_tolerances(); }

ScopedTolerances::ScopedTolerances(const Tolerances& t)
    : previous_(mutable_tolerances()) {
  mutable_tolerances() = t;
}

ScopedTolerances::~ScopedTolerances() { mutable_tolerances() = previous_; }

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double frobenius_norm(const Matrix& m) { return m.norm(); }

// HermitianOperator

HermitianOperator::HermitianOperator(const Matrix& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw DimensionMismatch("Hermitian operator must be a non-empty square matrix");
  }
  if (!m.allFinite()) {
    throw NonFiniteEntry("operator has a NaN or infinite entry");
  }
  const double deviation = max_abs(m - m.adjoint());
  if (deviation > tolerances().hermitian) {
    std::ostringstream os;
    os << "operator is not Hermitian (max |A - A^dagger| = " << deviation << ")";
    throw NotHermitian(os.str());
  }
  m_ = (m + m.adjoint()) / 2.0;
}

HermitianOperator HermitianOperator::zero(std::size_t dim) {
  return HermitianOperator(Matrix::Zero(as_index(dim), as_index(dim)), Trusted{});
}

HermitianOperator HermitianOperator::identity(std::size_t dim) {
  return HermitianOperator(Matrix::Identity(as_index(dim), as_index(dim)),
                           Trusted{});
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& other) const {
  require_same_dim(dim(), other.dim(), "operator sum");
  return HermitianOperator(m_ + other.m_, Trusted{});
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& other) const {
  require_same_dim(dim(), other.dim(), "operator difference");
  return HermitianOperator(m_ - other.m_, Trusted{});
}

HermitianOperator HermitianOperator::scaled(double factor) const {
  if (!std::isfinite(factor)) {
    throw NonFiniteEntry("scale factor must be finite");
  }
  return HermitianOperator(m_ * factor, Trusted{});
}

// PositiveOperator

PositiveOperator::PositiveOperator(const HermitianOperator& h)
    : HermitianOperator(check_positive(h)) {}

PositiveOperator PositiveOperator::zero(std::size_t dim) {
  return PositiveOperator(Matrix::Zero(as_index(dim), as_index(dim)), Trusted{});
}

PositiveOperator PositiveOperator::identity(std::size_t dim) {
  return PositiveOperator(Matrix::Identity(as_index(dim), as_index(dim)),
                          Trusted{});
}

PositiveOperator PositiveOperator::gram(const Matrix& g) {
  if (g.rows() == 0 || !g.allFinite()) {
    throw NonFiniteEntry("Gram factor must be non-empty and finite");
  }
  Matrix m = g * g.adjoint();
  m = (m + m.adjoint()) / 2.0;
  return PositiveOperator(std::move(m), Trusted{});
}

PositiveOperator PositiveOperator::operator+(const PositiveOperator& other) const {
  require_same_dim(dim(), other.dim(), "operator sum");
  return PositiveOperator(m_ + other.m_, Trusted{});
}

PositiveOperator PositiveOperator::scaled(double factor) const {
  if (!std::isfinite(factor) || factor < 0.0) {
    throw DomainError("positive operators may only be scaled by a finite non-negative factor");
  }
  return PositiveOperator(m_ * factor, Trusted{});
}

std::vector<double> PositiveOperator::spectrum() const {
  std::vector<double> values = eigh(*this).eigenvalues;
  for (double& v : values) v = std::max(v, 0.0);
  return values;
}

double PositiveOperator::max_eigenvalue() const { return spectrum().back(); }

// DensityOperator

DensityOperator::DensityOperator(const PositiveOperator& p) : PositiveOperator(p) {
  const double tr = trace();
  if (std::abs(tr - 1.0) > tolerances().trace) {
    std::ostringstream os;
    os.precision(17);
    os << "density operator must have unit trace (trace = " << tr << ")";
    throw NotNormalized(os.str());
  }
}

DensityOperator DensityOperator::maximally_mixed(std::size_t dim) {
  return DensityOperator(
      Matrix::Identity(as_index(dim), as_index(dim)) / static_cast<double>(dim),
      Trusted{});
}

DensityOperator DensityOperator::normalized(const PositiveOperator& p) {
  const double tr = p.trace();
  if (!(tr > tolerances().trace)) {
    throw DomainError("cannot normalise an operator with vanishing trace");
  }
  return DensityOperator(p.matrix() / tr, Trusted{});
}

// StateVector

StateVector::StateVector(const Vector& amplitudes) : v_(amplitudes) {
  if (v_.size() == 0) {
    throw DimensionMismatch("state vector must be non-empty");
  }
  if (!v_.allFinite()) {
    throw NonFiniteEntry("state vector has a NaN or infinite amplitude");
  }
  const double norm = v_.norm();
  if (std::abs(norm - 1.0) > kNormTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "state vector is not normalised (norm = " << norm << ")";
    throw NotNormalized(os.str());
  }
}

StateVector StateVector::normalized(const Vector& v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw NotNormalized("cannot normalise a zero or non-finite vector");
  }
  return StateVector(v / norm);
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) {
    throw DimensionMismatch("basis index out of range");
  }
  Vector v = Vector::Zero(as_index(dim));
  v(as_index(index)) = 1.0;
  return StateVector(v);
}

// UnitaryOperator

UnitaryOperator::UnitaryOperator(const Matrix& u) : u_(u) {
  if (u.rows() == 0 || u.rows() != u.cols()) {
    throw DimensionMismatch("unitary must be a non-empty square matrix");
  }
  if (!u.allFinite()) {
    throw NonFiniteEntry("unitary has a NaN or infinite entry");
  }
  const double deviation =
      max_abs(u * u.adjoint() - Matrix::Identity(u.rows(), u.cols()));
  if (deviation > kUnitaryTolerance) {
    std::ostringstream os;
    os << "matrix is not unitary (max |U U^dagger - I| = " << deviation << ")";
    throw NotUnitary(os.str());
  }
}

UnitaryOperator UnitaryOperator::identity(std::size_t dim) {
  return UnitaryOperator(Matrix::Identity(as_index(dim), as_index(dim)));
}

StateVector UnitaryOperator::column(std::size_t index) const {
  if (index >= dim()) {
    throw DimensionMismatch("column index out of range");
  }
  return StateVector::normalized(u_.col(as_index(index)));
}

Matrix EigenDecomposition::reconstruct() const {
  if (eigenvectors.empty()) return Matrix();
  const auto d = static_cast<Eigen::Index>(eigenvectors.front().dim());
  Matrix out = Matrix::Zero(d, d);
  for (std::size_t l = 0; l < eigenvalues.size(); ++l) {
    const Vector& v = eigenvectors[l].amplitudes();
    out += eigenvalues[l] * v * v.adjoint();
  }
  return out;
}

// Free functions

double trace_product(const HermitianOperator& a, const HermitianOperator& b) {
  require_same_dim(a.dim(), b.dim(), "trace_product");
  // Tr(AB) = sum_ij A_ij B_ji
  const Complex t = a.matrix().cwiseProduct(b.matrix().transpose()).sum();
  if (std::abs(t.imag()) > kImaginaryTraceLimit) {
    std::ostringstream os;
    os << "trace_product: imaginary part " << t.imag()
       << " of Tr(AB) for Hermitian operands";
    throw InternalConsistencyError(os.str());
  }
  return t.real();
}

PositiveOperator check_positive(const HermitianOperator& a) {
  const EigenDecomposition eig = eigh(a);
  const double min_eigenvalue = eig.eigenvalues.front();
  if (min_eigenvalue < -tolerances().positive) {
    std::ostringstream os;
    os << "operator is not positive (minimum eigenvalue " << min_eigenvalue << ")";
    throw NotPositive(os.str(), min_eigenvalue);
  }
  return PositiveOperator(a.matrix(), PositiveOperator::Trusted{});
}

HermitianOperator tensor_product(const HermitianOperator& a,
                                 const HermitianOperator& b) {
  return HermitianOperator(Matrix(Eigen::kroneckerProduct(a.matrix(), b.matrix())));
}

PositiveOperator tensor_product(const PositiveOperator& a,
                                const PositiveOperator& b) {
  return PositiveOperator(Matrix(Eigen::kroneckerProduct(a.matrix(), b.matrix())),
                          PositiveOperator::Trusted{});
}

DensityOperator tensor_product(const DensityOperator& a,
                               const DensityOperator& b) {
  return DensityOperator(
      tensor_product(static_cast<const PositiveOperator&>(a),
                     static_cast<const PositiveOperator&>(b)));
}

PositiveOperator projector(const StateVector& v) {
  const Vector& a = v.amplitudes();
  return PositiveOperator(Matrix(a * a.adjoint()), PositiveOperator::Trusted{});
}

HermitianOperator conjugate(const UnitaryOperator& u,
                            const HermitianOperator& a) {
  require_same_dim(u.dim(), a.dim(), "conjugate");
  const Matrix m = u.matrix() * a.matrix() * u.matrix().adjoint();
  return HermitianOperator(Matrix((m + m.adjoint()) / 2.0));
}

PositiveOperator conjugate(const UnitaryOperator& u, const PositiveOperator& a) {
  require_same_dim(u.dim(), a.dim(), "conjugate");
  const Matrix m = u.matrix() * a.matrix() * u.matrix().adjoint();
  return PositiveOperator(Matrix((m + m.adjoint()) / 2.0),
                          PositiveOperator::Trusted{});
}

DensityOperator conjugate(const UnitaryOperator& u, const DensityOperator& a) {
  return DensityOperator(conjugate(u, static_cast<const PositiveOperator&>(a)));
}

}  // namespace qprob
