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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qprob/measurement.hpp"
#include "qprob/operator.hpp"

namespace qprob {

using PreparationLabel = std::string;

struct Preparation {
  PreparationLabel label;
  double prior;
  DensityOperator state;
};

/** Candidate preparations s_k with priors p_k and states rho_k. */
class PreparationEnsemble {
 public:
  /**
   * @throws InvalidEnsemble for an empty list, empty or repeated labels,
   *         negative priors, priors not summing to 1 within 1e-12, or
   *         mismatched dimensions.
   */
  explicit PreparationEnsemble(std::vector<Preparation> entries);

  /** Single preparation with prior 1. */
  static PreparationEnsemble single(const PreparationLabel& label,
                                    const DensityOperator& state);

  std::size_t dim() const { return entries_.front().state.dim(); }
  std::size_t size() const { return entries_.size(); }
  const std::vector<Preparation>& entries() const { return entries_; }

 private:
  std::vector<Preparation> entries_;
};

/** Ordered label -> value pairs; order follows the input that produced it. */
template <typename Label>
using LabeledValues = std::vector<std::pair<Label, double>>;

/** Value for `label`. @throws UnknownLabel */
double value_of(const LabeledValues<std::string>& values, const std::string& label);

struct ProbabilityReport {
  /// p(m_i|s,x) in procedure order.
  LabeledValues<OutcomeLabel> probabilities;
  /// Tr(X rho)
  double denominator = 0.0;
  /// X proportional to the identity.
  bool standard = false;
  /// Proportionality constant K when standard.
  std::optional<double> k;
};

struct PosteriorEntry {
  PreparationLabel label;
  /// P(s_k|x)
  double posterior;
  /// l(s_k|x) = Tr(X rho_k)/Tr(X rho)
  double likelihood;
};

struct PosteriorReport {
  std::vector<PosteriorEntry> entries;
};

/** The unit-trace operator M_j / Tr(M_j) assigned from an observed outcome. */
struct RetrodictiveState {
  DensityOperator state;
};

/** rho = sum_k p_k rho_k */
DensityOperator average_state(const PreparationEnsemble& e);

/**
 * p(m|s,x) = Tr(M_m rho)/Tr(X rho).
 * @throws IncompatibleState when Tr(X rho) is at or below the denominator
 *         floor; UnknownLabel.
 */
double general_probability(const MeasurementProcedure& x, const DensityOperator& rho,
                           const OutcomeLabel& m);

ProbabilityReport general_distribution(const MeasurementProcedure& x,
                                       const DensityOperator& rho);

/**
 * P(s_k|x) = p_k Tr(X rho_k)/Tr(X rho) with its likelihood.
 * @throws IncompatibleState for a vanishing Tr(X rho).
 */
PosteriorReport posterior(const PreparationEnsemble& e, const MeasurementProcedure& x);

/**
 * Both sides of the Bayesian decomposition
 *   p(m|s,x) = sum_k p(m|s_k,x) P(s_k|x).
 * Preparations that cannot yield a recorded outcome contribute zero.
 */
std::pair<double, double> bayes_consistency(const PreparationEnsemble& e,
                                            const MeasurementProcedure& x,
                                            const OutcomeLabel& m);

/**
 * P(s_k|m_j) = p_k Tr(M_j rho_k)/Tr(M_j rho).
 * @throws OutcomeImpossible when Tr(M_j rho) is below the floor.
 */
LabeledValues<PreparationLabel> retrodict(const PreparationEnsemble& e,
                                          const PositiveOperator& observed);

/** @throws DomainError for a (numerically) zero operator. */
RetrodictiveState retrodictive_state(const PositiveOperator& observed);

/**
 * Retrodiction computed predictively: the retrodictive state M_j/Tr(M_j)
 * is "measured" with the dual procedure {p_k rho_k}, labelled by the
 * preparation labels in ensemble order.
 */
LabeledValues<PreparationLabel> retrodict_via_duality(const PreparationEnsemble& e,
                                                      const PositiveOperator& observed);

/**
 * Probability of the shared effect E computed in each POVM as one minus
 * the probabilities of the other elements.
 * @throws UnknownLabel if E is not (within 1e-10) an element of a POVM.
 */
std::pair<double, double> born_noncontextuality_check(const PositiveOperator& effect,
                                                      const StandardPOVM& povm_a,
                                                      const StandardPOVM& povm_b,
                                                      const DensityOperator& rho);

}  // namespace qprob
