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

// Shared fixtures for the test binaries.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "qprob/measurement.hpp"
#include "qprob/operator.hpp"
#include "qprob/probability.hpp"
#include "qprob/random.hpp"

namespace qprob::test {

inline Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline StateVector ket(std::initializer_list<Complex> amplitudes) {
  Vector v(static_cast<Eigen::Index>(amplitudes.size()));
  Eigen::Index i = 0;
  for (Complex a : amplitudes) v(i++) = a;
  return StateVector::normalized(v);
}

inline StateVector ket0() { return ket({1.0, 0.0}); }
inline StateVector ket1() { return ket({0.0, 1.0}); }
inline StateVector ket_plus() { return ket({1.0, 1.0}); }

inline PositiveOperator proj0() { return projector(ket0()); }
inline PositiveOperator proj1() { return projector(ket1()); }
inline PositiveOperator proj_plus() { return projector(ket_plus()); }

inline DensityOperator density(const PositiveOperator& p) { return DensityOperator(p); }

inline HermitianOperator pauli_x() { return HermitianOperator(mat2(0, 1, 1, 0)); }
inline HermitianOperator pauli_z() { return HermitianOperator(mat2(1, 0, 0, -1)); }

inline MeasurementProcedure procedure(
    std::vector<std::pair<std::string, PositiveOperator>> items) {
  std::vector<Outcome> outcomes;
  for (auto& [label, op] : items) outcomes.push_back(Outcome{label, op});
  return MeasurementProcedure(std::move(outcomes));
}

inline StandardPOVM povm(std::vector<std::pair<std::string, PositiveOperator>> items) {
  std::vector<Outcome> outcomes;
  for (auto& [label, op] : items) outcomes.push_back(Outcome{label, op});
  return StandardPOVM(std::move(outcomes));
}

inline std::vector<Outcome> labelled(const std::vector<PositiveOperator>& ops,
                                     const std::string& prefix = "m") {
  std::vector<Outcome> out;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    out.push_back(Outcome{prefix + std::to_string(i), ops[i]});
  }
  return out;
}

inline StandardPOVM random_povm(std::size_t dim, std::size_t outcomes, Rng& rng) {
  return StandardPOVM(labelled(random_povm_elements(dim, outcomes, rng)));
}

/** Random non-standard procedure: independent random positive operators. */
inline MeasurementProcedure random_procedure(std::size_t dim, std::size_t outcomes, Rng& rng) {
  std::vector<PositiveOperator> ops;
  for (std::size_t i = 0; i < outcomes; ++i) ops.push_back(random_positive(dim, rng));
  return MeasurementProcedure(labelled(ops));
}

inline PreparationEnsemble random_ensemble(std::size_t dim, std::size_t size, Rng& rng) {
  const std::vector<double> priors = random_probabilities(size, rng);
  std::vector<Preparation> entries;
  for (std::size_t k = 0; k < size; ++k) {
    entries.push_back(Preparation{"s" + std::to_string(k), priors[k], random_density(dim, rng)});
  }
  return PreparationEnsemble(std::move(entries));
}

inline PreparationEnsemble ensemble(
    std::vector<std::tuple<std::string, double, PositiveOperator>> items) {
  std::vector<Preparation> entries;
  for (auto& [label, prior, state] : items) {
    entries.push_back(Preparation{label, prior, DensityOperator(state)});
  }
  return PreparationEnsemble(std::move(entries));
}

}  // namespace qprob::test
