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

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qprob/operator.hpp"
#include "qprob/random.hpp"

namespace qprob {

/**
 * An opaque frame function w on positive operators of dimension `dim`.
 *
 * The evaluator is expected to be additive, non-negative and finite; the
 * verify_* functions below sample those promises. If the evaluator is
 * called from several threads it must be pure and thread-safe.
 */
struct FrameFunction {
  std::size_t dim = 0;
  std::function<double(const PositiveOperator&)> evaluator;

  /**
   * Evaluates w(a), rejecting negative (below -tolerances().positive) or
   * non-finite values.
   * @throws FrameViolation
   */
  double operator()(const PositiveOperator& a) const;
};

/** Test-harness frame w(A) = Tr(A R) for a known positive R. */
struct HiddenFrame {
  PositiveOperator r;

  FrameFunction frame_function() const;
};

/** One polarisation probe (e_i + phase e_j)/sqrt(2), or e_i when i == j. */
struct ProbeDescriptor {
  enum class Kind { kDiagonal, kReal, kImaginary };
  Kind kind;
  std::size_t i;
  std::size_t j;

  std::string describe() const;
};

struct ReconstructionResult {
  HermitianOperator r_hat;
  /// max over validation probes of |w(M) - Tr(M R_hat)|
  double residual = 0.0;
  /// Basis in which the probes were expressed; empty for the computational one.
  std::string frame;
  std::vector<ProbeDescriptor> bases_used;
  /// Frame-function evaluations spent on the reconstruction itself (d^2).
  std::size_t reconstruction_queries = 0;
  std::size_t validation_queries = 0;
};

struct ReconstructionOptions {
  std::size_t validation_probes = 25;
  Seed validation_seed = 0x5eed;
};

/** max |w(a + b) - w(a) - w(b)| */
double additivity_violation(const FrameFunction& w, const PositiveOperator& a,
                            const PositiveOperator& b);

/**
 * Samples `trials` pairs of random positive operators and returns the
 * largest additivity violation.
 * @throws DomainError if trials == 0; FrameViolation from the evaluator.
 */
double verify_additivity(const FrameFunction& w, std::size_t trials, Seed seed);

/** ((r/n) w(A), w((r/n) A)). @throws DomainError if n == 0. */
std::pair<double, double> verify_scaling(const FrameFunction& w, const PositiveOperator& a,
                                         unsigned r, unsigned n);

/** (alpha w(A), w(alpha A)) for a real alpha >= 0. */
std::pair<double, double> verify_real_scaling(const FrameFunction& w,
                                              const PositiveOperator& a, double alpha);

/**
 * Rebuilds R with w(M) = Tr(M R) from d diagonal and d(d-1) polarisation
 * queries, then validates it on random positive probes.
 *
 * With i < j, e_i, p+ = (e_i + e_j)/sqrt2 and pi = (e_i + i e_j)/sqrt2:
 *   R_ii = w(e_i e_i^dagger)
 *   Re R_ij = w(p+) - (R_ii + R_jj)/2
 *   Im R_ij = (R_ii + R_jj)/2 - w(pi)
 */
ReconstructionResult reconstruct(const FrameFunction& w,
                                 const ReconstructionOptions& options = {});

/**
 * Same algorithm with every probe conjugated by `frame`; the result is
 * rotated back, so it is directly comparable with reconstruct(w).
 */
ReconstructionResult reconstruct_in_frame(const FrameFunction& w,
                                          const UnitaryOperator& frame,
                                          const ReconstructionOptions& options = {});

/**
 * max over bases b and columns i of |<b_i|R1|b_i> - <b_i|R2|b_i>|.
 * @throws DimensionMismatch; DomainError for an empty basis list.
 */
double uniqueness_check(const HermitianOperator& r1, const HermitianOperator& r2,
                        const std::vector<UnitaryOperator>& bases);

/**
 * Unitaries whose columns contain the computational basis and every probe
 * (e_i + e_j)/sqrt2, (e_i + i e_j)/sqrt2 for i < j. A diagonal gap of eps on
 * this set bounds every entry of R1 - R2 by 4 eps.
 */
std::vector<UnitaryOperator> polarization_bases(std::size_t dim);

/** Minimum eigenvalue of R_hat. */
double positivity_of_reconstruction(const ReconstructionResult& result);

}  // namespace qprob
