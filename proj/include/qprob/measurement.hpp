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
#include <optional>
#include <string>
#include <vector>

#include "qprob/operator.hpp"

namespace qprob {

using OutcomeLabel = std::string;

struct Outcome {
  OutcomeLabel label;
  PositiveOperator op;
};

/**
 * A measurement procedure: the recorded events m_i and their positive
 * measurement operators M_i.
 *
 * The operators need not be effects and need not sum to the identity.
 * Outcome order is kept as given; labels are the stable identity used by
 * merge_outcomes() and restrict().
 */
class MeasurementProcedure {
 public:
  /**
   * @throws InvalidProcedure if empty, a label is empty or repeated, or
   *         dimensions disagree.
   * @throws DegenerateProcedure if Tr(X) is at or below the trace floor.
   */
  explicit MeasurementProcedure(std::vector<Outcome> outcomes);

  std::size_t dim() const { return outcomes_.front().op.dim(); }
  std::size_t size() const { return outcomes_.size(); }
  const std::vector<Outcome>& outcomes() const { return outcomes_; }
  std::vector<OutcomeLabel> labels() const;

  bool contains(const OutcomeLabel& label) const;
  /** @throws UnknownLabel */
  const PositiveOperator& op(const OutcomeLabel& label) const;

 private:
  std::vector<Outcome> outcomes_;
};

/** A standard POVM: effects summing to the identity. */
class StandardPOVM {
 public:
  /**
   * @throws InvalidProcedure if sum E_i deviates from I by more than 1e-10
   *         (max-abs), or some effect has an eigenvalue above 1 + 1e-10.
   */
  explicit StandardPOVM(std::vector<Outcome> effects);

  std::size_t dim() const { return effects_.front().op.dim(); }
  std::size_t size() const { return effects_.size(); }
  const std::vector<Outcome>& effects() const { return effects_; }
  std::vector<OutcomeLabel> labels() const;
  /** @throws UnknownLabel */
  const PositiveOperator& effect(const OutcomeLabel& label) const;

  MeasurementProcedure as_procedure() const;

 private:
  std::vector<Outcome> effects_;
};

/** Slack used by the proportional-to-identity test and the POVM checks. */
inline constexpr double kStandardTolerance = 1e-10;

/** X = sum_i M_i, summed in outcome order. */
PositiveOperator procedure_sum(const MeasurementProcedure& x);

/**
 * Records the listed outcomes as the single event `new_label` with
 * operator sum. The merged outcome takes the position of the first listed
 * outcome in procedure order.
 *
 * @throws UnknownLabel, LabelCollision, InvalidProcedure (empty label set).
 */
MeasurementProcedure merge_outcomes(const MeasurementProcedure& x,
                                    const std::vector<OutcomeLabel>& labels,
                                    const OutcomeLabel& new_label);

/**
 * Keeps only the recorded outcomes (in procedure order).
 * @throws InvalidProcedure for an empty set, UnknownLabel, and
 *         DegenerateProcedure when every retained operator is zero.
 */
MeasurementProcedure restrict(const MeasurementProcedure& x,
                              const std::vector<OutcomeLabel>& recorded);

/** K = Tr(X)/d when max|X - K I| <= 1e-10, else empty. */
std::optional<double> is_standard(const MeasurementProcedure& x);

/**
 * E_i = M_i / K.
 * @throws NonStandardProcedure when X is not proportional to I.
 */
StandardPOVM to_povm(const MeasurementProcedure& x);

}  // namespace qprob
