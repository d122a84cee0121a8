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

#include "qprob/random.hpp"

#include <cmath>

#include "qprob/errors.hpp"

namespace qprob {

namespace {

constexpr double kRankDeficiencyFloor = 1e-12;

Eigen::Index as_index(std::size_t i) { return static_cast<Eigen::Index>(i); }

void require_positive_dim(std::size_t dim) {
  if (dim == 0) throw DimensionMismatch("dimension must be at least 1");
}

// Modified Gram-Schmidt with one re-orthogonalisation pass. Returns false
// when a column collapses.
bool orthonormalize(Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index k = 0; k < j; ++k) {
        const Complex overlap = m.col(k).dot(m.col(j));
        m.col(j) -= overlap * m.col(k);
      }
    }
    const double norm = m.col(j).norm();
    if (norm < kRankDeficiencyFloor) return false;
    m.col(j) /= norm;
  }
  return true;
}

void fix_phases(Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const double magnitude = std::abs(m(i, j));
      if (magnitude > 0.0) {
        m.col(j) *= std::conj(m(i, j)) / magnitude;
        m(i, j) = magnitude;
        break;
      }
    }
  }
}

}  // namespace

Rng make_rng(Seed seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

Matrix ginibre_matrix(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix g(as_index(dim), as_index(dim));
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

DensityOperator random_density(std::size_t dim, Rng& rng) {
  require_positive_dim(dim);
  return DensityOperator::normalized(PositiveOperator::gram(ginibre_matrix(dim, rng)));
}

DensityOperator random_density(std::size_t dim, Seed seed) {
  Rng rng = make_rng(seed);
  return random_density(dim, rng);
}

UnitaryOperator random_unitary(std::size_t dim, Rng& rng) {
  require_positive_dim(dim);
  for (;;) {
    Matrix m = ginibre_matrix(dim, rng);
    if (!orthonormalize(m)) continue;
    fix_phases(m);
    return UnitaryOperator(m);
  }
}

UnitaryOperator random_unitary(std::size_t dim, Seed seed) {
  Rng rng = make_rng(seed);
  return random_unitary(dim, rng);
}

PositiveOperator random_positive(std::size_t dim, Rng& rng) {
  require_positive_dim(dim);
  return PositiveOperator::gram(ginibre_matrix(dim, rng));
}

HermitianOperator random_hermitian(std::size_t dim, Rng& rng) {
  require_positive_dim(dim);
  const Matrix g = ginibre_matrix(dim, rng);
  return HermitianOperator(Matrix((g + g.adjoint()) / 2.0));
}

StateVector random_state_vector(std::size_t dim, Rng& rng) {
  require_positive_dim(dim);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (;;) {
    Vector v(as_index(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      v(i) = Complex(re, im);
    }
    if (v.norm() > kRankDeficiencyFloor) return StateVector::normalized(v);
  }
}

std::vector<PositiveOperator> random_povm_elements(std::size_t dim,
                                                   std::size_t outcomes,
                                                   Rng& rng) {
  require_positive_dim(dim);
  if (outcomes == 0) throw DomainError("a POVM needs at least one outcome");

  std::vector<Matrix> factors;
  factors.reserve(outcomes);
  PositiveOperator total = PositiveOperator::zero(dim);
  for (std::size_t i = 0; i < outcomes; ++i) {
    factors.push_back(ginibre_matrix(dim, rng));
    total = total + PositiveOperator::gram(factors.back());
  }

  // S^{-1/2} from the spectral decomposition of S.
  const EigenDecomposition eig = eigh(total);
  Matrix inv_sqrt = Matrix::Zero(as_index(dim), as_index(dim));
  for (std::size_t l = 0; l < dim; ++l) {
    const Vector& v = eig.eigenvectors[l].amplitudes();
    inv_sqrt += (1.0 / std::sqrt(eig.eigenvalues[l])) * v * v.adjoint();
  }

  // S^{-1/2} G G^dagger S^{-1/2} = (S^{-1/2} G)(S^{-1/2} G)^dagger
  std::vector<PositiveOperator> out;
  out.reserve(outcomes);
  for (const Matrix& g : factors) {
    out.push_back(PositiveOperator::gram(inv_sqrt * g));
  }
  return out;
}

std::vector<double> random_probabilities(std::size_t n, Rng& rng) {
  if (n == 0) return {};
  std::exponential_distribution<double> exponential(1.0);
  std::vector<double> p(n);
  double total = 0.0;
  for (double& x : p) {
    x = exponential(rng);
    total += x;
  }
  for (double& x : p) x /= total;
  return p;
}

}  // namespace qprob
