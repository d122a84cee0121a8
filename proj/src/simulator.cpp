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

#include "qprob/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "qprob/errors.hpp"
#include "qprob/tolerances.hpp"

namespace qprob {

namespace {

constexpr double kBornSumTolerance = 1e-10;
constexpr int kNotRecorded = -1;

using Tally = std::vector<std::vector<std::uint64_t>>;

// Inverse-CDF sampler over fixed non-negative weights.
class Categorical {
 public:
  explicit Categorical(const std::vector<double>& weights) : cdf_(weights.size()) {
    double total = 0.0;
    for (double w : weights) total += w;
    double running = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      running += weights[i];
      cdf_[i] = running / total;
      if (weights[i] > 0.0) last_positive_ = i;
    }
    positive_ = weights;
  }

  std::size_t sample(Rng& rng) const {
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    for (std::size_t i = 0; i < cdf_.size(); ++i) {
      if (u < cdf_[i] && positive_[i] > 0.0) return i;
    }
    return last_positive_;
  }

 private:
  std::vector<double> cdf_;
  std::vector<double> positive_;
  std::size_t last_positive_ = 0;
};

double binomial_stderr(std::uint64_t count, std::uint64_t total) {
  if (count == 0 || count == total) return 3.0 / static_cast<double>(total);
  const double p = static_cast<double>(count) / static_cast<double>(total);
  return std::sqrt(p * (1.0 - p) / static_cast<double>(total));
}

Estimate make_estimate(const std::string& label, std::uint64_t count, std::uint64_t total) {
  return Estimate{label, count, static_cast<double>(count) / static_cast<double>(total),
                  binomial_stderr(count, total)};
}

Comparison compare(std::string quantity, double analytic, const Estimate& e) {
  Comparison c;
  c.quantity = std::move(quantity);
  c.analytic = analytic;
  c.empirical = e.frequency;
  c.std_error = e.std_error;
  c.gap = std::abs(e.frequency - analytic);
  c.z = c.gap == 0.0 ? 0.0 : c.gap / c.std_error;
  return c;
}

}  // namespace

Scenario::Scenario(PreparationEnsemble ensemble, StandardPOVM full_povm,
                   std::vector<OutcomeLabel> recorded, std::uint64_t samples, Seed seed)
    : ensemble_(std::move(ensemble)),
      full_povm_(std::move(full_povm)),
      samples_(samples),
      seed_(seed) {
  if (samples_ == 0) throw InvalidScenario("scenario needs at least one sample");
  if (ensemble_.dim() != full_povm_.dim()) {
    throw InvalidScenario("ensemble and POVM dimensions differ");
  }
  if (recorded.empty()) throw InvalidScenario("recorded outcome set must be non-empty");
  const std::set<OutcomeLabel> wanted(recorded.begin(), recorded.end());
  const std::vector<OutcomeLabel> all = full_povm_.labels();
  for (const OutcomeLabel& l : wanted) {
    if (std::find(all.begin(), all.end(), l) == all.end()) {
      throw InvalidScenario("recorded label '" + l + "' is not a POVM outcome");
    }
  }
  for (const OutcomeLabel& l : all) {
    if (wanted.count(l) != 0) recorded_.push_back(l);
  }
}

MeasurementProcedure Scenario::recorded_procedure() const {
  return restrict(full_povm_.as_procedure(), recorded_);
}

bool SimulationReport::consistent(double sigmas) const {
  if (inconclusive) return false;
  return std::all_of(analytic_comparison.begin(), analytic_comparison.end(),
                     [&](const Comparison& c) { return c.consistent(sigmas); });
}

SimulationReport run(const Scenario& sc, const SimulationOptions& options) {
  const auto& preparations = sc.ensemble().entries();
  const auto& effects = sc.full_povm().effects();

  std::vector<double> priors;
  for (const Preparation& p : preparations) priors.push_back(p.prior);
  const Categorical prior_sampler(priors);

  std::vector<Categorical> born_samplers;
  for (const Preparation& p : preparations) {
    std::vector<double> weights;
    double total = 0.0;
    for (const Outcome& e : effects) {
      weights.push_back(std::max(0.0, trace_product(e.op, p.state)));
      total += weights.back();
    }
    if (std::abs(total - 1.0) > kBornSumTolerance) {
      std::ostringstream os;
      os.precision(17);
      os << "Born weights for '" << p.label << "' sum to " << total;
      throw InternalConsistencyError(os.str());
    }
    born_samplers.emplace_back(weights);
  }

  std::vector<int> slot(effects.size(), kNotRecorded);
  for (std::size_t j = 0; j < effects.size(); ++j) {
    const auto& rec = sc.recorded();
    const auto it = std::find(rec.begin(), rec.end(), effects[j].label);
    if (it != rec.end()) slot[j] = static_cast<int>(it - rec.begin());
  }

  const std::uint64_t batch_size = std::max<std::uint64_t>(1, options.batch_size);
  const std::uint64_t batches = (sc.samples() + batch_size - 1) / batch_size;
  const std::size_t n_prep = preparations.size();
  const std::size_t n_rec = sc.recorded().size();

  Tally tally(n_prep, std::vector<std::uint64_t>(n_rec, 0));
  std::mutex merge_mutex;
  std::atomic<std::uint64_t> next_batch{0};

  auto worker = [&] {
    Tally local(n_prep, std::vector<std::uint64_t>(n_rec, 0));
    for (std::uint64_t b = next_batch++; b < batches; b = next_batch++) {
      Rng rng = make_rng(sc.seed(), b);
      const std::uint64_t trials = std::min(batch_size, sc.samples() - b * batch_size);
      for (std::uint64_t t = 0; t < trials; ++t) {
        const std::size_t k = prior_sampler.sample(rng);
        const std::size_t j = born_samplers[k].sample(rng);
        if (slot[j] != kNotRecorded) ++local[k][static_cast<std::size_t>(slot[j])];
      }
    }
    std::lock_guard<std::mutex> lock(merge_mutex);
    for (std::size_t k = 0; k < n_prep; ++k) {
      for (std::size_t j = 0; j < n_rec; ++j) tally[k][j] += local[k][j];
    }
  };

  unsigned threads = options.threads != 0 ? options.threads
                                          : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, batches));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }

  SimulationReport report;
  report.trials = sc.samples();
  report.joint_counts = tally;
  for (const auto& row : tally) {
    for (std::uint64_t c : row) report.accepted += c;
  }
  if (report.accepted == 0) {
    report.inconclusive = true;
    return report;
  }

  for (std::size_t j = 0; j < n_rec; ++j) {
    std::uint64_t count = 0;
    for (std::size_t k = 0; k < n_prep; ++k) count += tally[k][j];
    report.outcome_frequencies.push_back(
        make_estimate(sc.recorded()[j], count, report.accepted));
  }
  for (std::size_t k = 0; k < n_prep; ++k) {
    std::uint64_t count = 0;
    for (std::uint64_t c : tally[k]) count += c;
    report.preparation_frequencies.push_back(
        make_estimate(preparations[k].label, count, report.accepted));
  }

  const MeasurementProcedure recorded = sc.recorded_procedure();
  const ProbabilityReport predicted = general_distribution(recorded, average_state(sc.ensemble()));
  for (std::size_t j = 0; j < n_rec; ++j) {
    report.analytic_comparison.push_back(compare("p(" + sc.recorded()[j] + ")",
                                                 predicted.probabilities[j].second,
                                                 report.outcome_frequencies[j]));
  }
  const PosteriorReport post = posterior(sc.ensemble(), recorded);
  for (std::size_t k = 0; k < n_prep; ++k) {
    report.analytic_comparison.push_back(compare("P(" + preparations[k].label + "|x)",
                                                 post.entries[k].posterior,
                                                 report.preparation_frequencies[k]));
  }
  return report;
}

StandardPOVM completion_of(const MeasurementProcedure& x) {
  if (x.contains(kCompletionLabel)) {
    throw LabelCollision("completion_of: procedure already uses the sink label");
  }
  const PositiveOperator total = procedure_sum(x);
  std::vector<Outcome> effects;
  effects.reserve(x.size() + 1);

  const std::optional<double> k = is_standard(x);
  if (k && std::abs(*k - 1.0) <= kStandardTolerance) {
    effects = x.outcomes();
    effects.push_back(Outcome{kCompletionLabel, PositiveOperator::zero(x.dim())});
    return StandardPOVM(std::move(effects));
  }

  const double lambda_max = total.max_eigenvalue();
  if (!(lambda_max > 0.0) || !std::isfinite(lambda_max)) {
    throw DegenerateProcedure("completion_of: X has no positive eigenvalue");
  }
  for (const Outcome& o : x.outcomes()) {
    effects.push_back(Outcome{o.label, o.op.scaled(1.0 / lambda_max)});
  }
  const HermitianOperator sink = HermitianOperator::identity(x.dim()) - total.scaled(1.0 / lambda_max);
  effects.push_back(Outcome{kCompletionLabel, check_positive(sink)});
  return StandardPOVM(std::move(effects));
}

Scenario herald_scenario(const StandardPOVM& signal_povm, const DensityOperator& joint_state,
                         const PositiveOperator& herald_effect, std::uint64_t samples,
                         Seed seed) {
  const std::size_t d_a = herald_effect.dim();
  const std::size_t d_b = signal_povm.dim();
  if (joint_state.dim() != d_a * d_b) {
    throw DimensionMismatch("herald_scenario: joint state must live on d_herald * d_signal");
  }
  if (herald_effect.max_eigenvalue() > 1.0 + kStandardTolerance) {
    throw DomainError("herald_scenario: herald operator is not an effect");
  }
  std::vector<Outcome> joint;
  std::vector<OutcomeLabel> recorded;
  for (const Outcome& e : signal_povm.effects()) {
    joint.push_back(Outcome{e.label, tensor_product(herald_effect, e.op)});
    recorded.push_back(e.label);
  }
  const PositiveOperator no_herald =
      check_positive(HermitianOperator::identity(d_a) - herald_effect);
  joint.push_back(
      Outcome{kNoHeraldLabel, tensor_product(no_herald, PositiveOperator::identity(d_b))});

  return Scenario(PreparationEnsemble::single("joint", joint_state),
                  StandardPOVM(std::move(joint)), std::move(recorded), samples, seed);
}

LabeledValues<PreparationLabel> communication_scenario(const PreparationEnsemble& e,
                                                       const StandardPOVM& bob_povm,
                                                       const OutcomeLabel& observed) {
  return retrodict(e, bob_povm.effect(observed));
}

Scenario communication_simulation(const PreparationEnsemble& e, const StandardPOVM& bob_povm,
                                  const OutcomeLabel& observed, std::uint64_t samples,
                                  Seed seed) {
  return Scenario(e, bob_povm, {observed}, samples, seed);
}

}  // namespace qprob
