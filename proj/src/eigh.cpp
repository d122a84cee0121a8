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

// Cyclic Jacobi eigensolver for complex Hermitian matrices.
//
// Each rotation first removes the phase of a_pq with the diagonal unitary
// diag(1, e^{-i phi}) on the (p, q) plane, which turns the 2x2 block into a
// real symmetric one, then applies the classical real Jacobi rotation that
// annihilates it. The composite plane rotation is
//
//   v_p = c e_p - s e^{-i phi} e_q,   v_q = s e_p + c e^{-i phi} e_q.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qprob/errors.hpp"
#include "qprob/operator.hpp"

namespace qprob {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kRelativeOffDiagonalThreshold = 1e-14;

double off_diagonal_norm(const Matrix& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) sum += std::norm(a(i, j));
    }
  }
  return std::sqrt(sum);
}

void rotate(Matrix& a, Matrix& vectors, Eigen::Index p, Eigen::Index q) {
  const Complex apq = a(p, q);
  const double magnitude = std::abs(apq);
  if (magnitude == 0.0) return;

  const Complex phase = apq / magnitude;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * magnitude);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Complex phase_conj = std::conj(phase);

  // A <- A V (columns p, q).
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp - s * phase_conj * akq;
    a(k, q) = s * akp + c * phase_conj * akq;
  }
  // A <- V^dagger A (rows p, q).
  for (Eigen::Index k = 0; k < a.cols(); ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk - s * phase * aqk;
    a(q, k) = s * apk + c * phase * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (Eigen::Index k = 0; k < vectors.rows(); ++k) {
    const Complex vkp = vectors(k, p);
    const Complex vkq = vectors(k, q);
    vectors(k, p) = c * vkp - s * phase_conj * vkq;
    vectors(k, q) = s * vkp + c * phase_conj * vkq;
  }
}

}  // namespace

EigenDecomposition eigh(const HermitianOperator& op) {
  Matrix a = op.matrix();
  const Eigen::Index d = a.rows();
  Matrix vectors = Matrix::Identity(d, d);

  const double threshold = kRelativeOffDiagonalThreshold * a.norm();
  int sweep = 0;
  while (off_diagonal_norm(a) > threshold) {
    if (sweep == kMaxSweeps) {
      std::ostringstream os;
      os << "eigh: no convergence after " << kMaxSweeps
         << " Jacobi sweeps (off-diagonal norm " << off_diagonal_norm(a) << ")";
      throw ConvergenceError(os.str());
    }
    for (Eigen::Index p = 0; p < d - 1; ++p) {
      for (Eigen::Index q = p + 1; q < d; ++q) {
        rotate(a, vectors, p, q);
      }
    }
    ++sweep;
  }

  std::vector<std::size_t> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)).real() <
           a(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(y)).real();
  });

  EigenDecomposition out;
  out.eigenvalues.reserve(order.size());
  out.eigenvectors.reserve(order.size());
  for (std::size_t idx : order) {
    const auto l = static_cast<Eigen::Index>(idx);
    out.eigenvalues.push_back(a(l, l).real());
    out.eigenvectors.push_back(StateVector::normalized(vectors.col(l)));
  }
  return out;
}

}  // namespace qprob
