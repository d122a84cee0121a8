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
#include <cstdint>
#include <string>
#include <vector>

#include "qprob/measurement.hpp"
#include "qprob/probability.hpp"
#include "qprob/random.hpp"

namespace qprob {

/** Label of the sink outcome added by completion_of(). */
inline const OutcomeLabel kCompletionLabel = "⊥";
/** Label of the herald-failure outcome added by herald_scenario(). */
inline const OutcomeLabel kNoHeraldLabel = "no-herald";

/**
 * A prepare-measure-record experiment: draw s_k from the ensemble, measure
 * the complete POVM, keep the trial only if the outcome is recorded.
 */
class Scenario {
 public:
  /**
   * @throws InvalidScenario for an empty or unknown recorded set, zero
   *         samples, or an ensemble/POVM dimension mismatch.
   */
  Scenario(PreparationEnsemble ensemble, StandardPOVM full_povm,
           std::vector<OutcomeLabel> recorded, std::uint64_t samples, Seed seed);

  const PreparationEnsemble& ensemble() const { return ensemble_; }
  const StandardPOVM& full_povm() const { return full_povm_; }
  /// Recorded labels in POVM order.
  const std::vector<OutcomeLabel>& recorded() const { return recorded_; }
  std::uint64_t samples() const { return samples_; }
  Seed seed() const { return seed_; }

  /** The full POVM restricted to the recorded outcomes. */
  MeasurementProcedure recorded_procedure() const;

 private:
  PreparationEnsemble ensemble_;
  StandardPOVM full_povm_;
  std::vector<OutcomeLabel> recorded_;
  std::uint64_t samples_;
  Seed seed_;
};

struct Estimate {
  std::string label;
  std::uint64_t count = 0;
  double frequency = 0.0;
  /// Binomial plug-in; 3/N_acc (rule of three) when the count is 0 or N_acc.
  double std_error = 0.0;
};

struct Comparison {
  /// e.g. "p(m0)" or "P(s1|x)"
  std::string quantity;
  double analytic = 0.0;
  double empirical = 0.0;
  double std_error = 0.0;
  double gap = 0.0;
  /// gap / stderr
  double z = 0.0;

  bool consistent(double sigmas = 4.0) const { return gap <= sigmas * std_error; }
};

struct SimulationReport {
  std::uint64_t trials = 0;
  std::uint64_t accepted = 0;
  /// No trial survived post-selection; frequencies and comparisons empty.
  bool inconclusive = false;
  std::vector<Estimate> outcome_frequencies;
  std::vector<Estimate> preparation_frequencies;
  /// counts[k][j]: preparation k, recorded outcome j (accepted trials only).
  std::vector<std::vector<std::uint64_t>> joint_counts;
  std::vector<Comparison> analytic_comparison;

  /** Every comparison within `sigmas` standard errors. */
  bool consistent(double sigmas = 4.0) const;
};

struct SimulationOptions {
  /// Trials per substream; batch b draws from make_rng(seed, b).
  std::uint64_t batch_size = 1u << 14;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/**
 * Runs the experiment. Tallies depend only on the scenario and batch size,
 * never on the thread count.
 * @throws InternalConsistencyError if some Born distribution fails to sum
 *         to 1 within 1e-10.
 */
SimulationReport run(const Scenario& sc, const SimulationOptions& options = {});

/**
 * Embeds a procedure in a complete POVM: E_i = M_i / lambda_max(X) plus the
 * sink I - X / lambda_max(X). A procedure that already is a POVM (K = 1) is
 * kept as is with a zero sink.
 * @throws LabelCollision if x already uses the sink label.
 */
StandardPOVM completion_of(const MeasurementProcedure& x);

/**
 * Joint-space scenario {herald (x) E_j} + {(I - herald) (x) I} recording only
 * heralded outcomes, with the joint state as the sole preparation.
 * @throws DimensionMismatch; DomainError if the herald is not an effect.
 */
Scenario herald_scenario(const StandardPOVM& signal_povm, const DensityOperator& joint_state,
                         const PositiveOperator& herald_effect, std::uint64_t samples,
                         Seed seed);

/** Bob's retrodiction of Alice's preparation after observing `observed`. */
LabeledValues<PreparationLabel> communication_scenario(const PreparationEnsemble& e,
                                                       const StandardPOVM& bob_povm,
                                                       const OutcomeLabel& observed);

/** Scenario whose conditioned preparation frequencies estimate the same map. */
Scenario communication_simulation(const PreparationEnsemble& e, const StandardPOVM& bob_povm,
                                  const OutcomeLabel& observed, std::uint64_t samples,
                                  Seed seed);

}  // namespace qprob
