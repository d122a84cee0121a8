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

#include "qprob/probability.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "qprob/errors.hpp"
#include "qprob/tolerances.hpp"

namespace qprob {

namespace {

constexpr double kPriorSumTolerance = 1e-12;
// Raw probabilities further than this outside [0, 1] indicate a bug.
constexpr double kProbabilityRangeSlack = 1e-9;

double checked_probability(double raw, const char* where) {
  if (!(raw >= -kProbabilityRangeSlack && raw <= 1.0 + kProbabilityRangeSlack)) {
    std::ostringstream os;
    os << where << ": probability " << raw << " outside [0, 1]";
    throw InternalConsistencyError(os.str());
  }
  return std::clamp(raw, 0.0, 1.0);
}

double checked_denominator(const MeasurementProcedure& x, const DensityOperator& rho) {
  if (x.dim() != rho.dim()) {
    throw DimensionMismatch("procedure and state dimensions differ");
  }
  const double den = trace_product(procedure_sum(x), rho);
  if (!(den > tolerances().denominator)) {
    std::ostringstream os;
    os << "no recordable outcome possible for this state (Tr(X rho) = " << den << ")";
    throw IncompatibleState(os.str());
  }
  return den;
}

}  // namespace

PreparationEnsemble::PreparationEnsemble(std::vector<Preparation> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) {
    throw InvalidEnsemble("ensemble needs at least one preparation");
  }
  std::set<PreparationLabel> seen;
  double total = 0.0;
  for (const Preparation& p : entries_) {
    if (p.label.empty()) throw InvalidEnsemble("preparation labels must be non-empty");
    if (!seen.insert(p.label).second) {
      throw InvalidEnsemble("duplicate preparation label '" + p.label + "'");
    }
    if (!std::isfinite(p.prior) || p.prior < 0.0) {
      throw InvalidEnsemble("prior of '" + p.label + "' must be finite and non-negative");
    }
    if (p.state.dim() != entries_.front().state.dim()) {
      throw InvalidEnsemble("preparation '" + p.label + "' has a different dimension");
    }
    total += p.prior;
  }
  if (std::abs(total - 1.0) > kPriorSumTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "priors must sum to 1 (sum = " << total << ")";
    throw InvalidEnsemble(os.str());
  }
  // Absorb the admitted slack so the average state has unit trace.
  for (Preparation& p : entries_) p.prior /= total;
}

PreparationEnsemble PreparationEnsemble::single(const PreparationLabel& label,
                                                const DensityOperator& state) {
  return PreparationEnsemble({Preparation{label, 1.0, state}});
}

double value_of(const LabeledValues<std::string>& values, const std::string& label) {
  for (const auto& [l, v] : values) {
    if (l == label) return v;
  }
  throw UnknownLabel("no value for label '" + label + "'");
}

DensityOperator average_state(const PreparationEnsemble& e) {
  PositiveOperator total = PositiveOperator::zero(e.dim());
  for (const Preparation& p : e.entries()) {
    total = total + p.state.scaled(p.prior);
  }
  return DensityOperator(total);
}

double general_probability(const MeasurementProcedure& x, const DensityOperator& rho,
                           const OutcomeLabel& m) {
  const PositiveOperator& op = x.op(m);
  const double den = checked_denominator(x, rho);
  return checked_probability(trace_product(op, rho) / den, "general_probability");
}

ProbabilityReport general_distribution(const MeasurementProcedure& x,
                                       const DensityOperator& rho) {
  ProbabilityReport report;
  report.denominator = checked_denominator(x, rho);
  report.k = is_standard(x);
  report.standard = report.k.has_value();
  report.probabilities.reserve(x.size());
  for (const Outcome& o : x.outcomes()) {
    report.probabilities.emplace_back(
        o.label, checked_probability(trace_product(o.op, rho) / report.denominator,
                                     "general_distribution"));
  }
  return report;
}

PosteriorReport posterior(const PreparationEnsemble& e, const MeasurementProcedure& x) {
  const PositiveOperator total = procedure_sum(x);
  const double den = checked_denominator(x, average_state(e));
  PosteriorReport report;
  report.entries.reserve(e.size());
  for (const Preparation& p : e.entries()) {
    const double likelihood = trace_product(total, p.state) / den;
    report.entries.push_back(PosteriorEntry{
        p.label, checked_probability(p.prior * likelihood, "posterior"), likelihood});
  }
  return report;
}

std::pair<double, double> bayes_consistency(const PreparationEnsemble& e,
                                            const MeasurementProcedure& x,
                                            const OutcomeLabel& m) {
  const double lhs = general_probability(x, average_state(e), m);
  const PosteriorReport post = posterior(e, x);
  const PositiveOperator total = procedure_sum(x);
  const PositiveOperator& op = x.op(m);

  double rhs = 0.0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    const DensityOperator& rho_k = e.entries()[k].state;
    const double den_k = trace_product(total, rho_k);
    if (!(den_k > tolerances().denominator)) continue;
    rhs += (trace_product(op, rho_k) / den_k) * post.entries[k].posterior;
  }
  return {lhs, rhs};
}

LabeledValues<PreparationLabel> retrodict(const PreparationEnsemble& e,
                                          const PositiveOperator& observed) {
  if (observed.dim() != e.dim()) {
    throw DimensionMismatch("retrodict: outcome operator and ensemble dimensions differ");
  }
  const double den = trace_product(observed, average_state(e));
  if (!(den > tolerances().denominator)) {
    std::ostringstream os;
    os << "observed outcome is impossible for this ensemble (Tr(M rho) = " << den << ")";
    throw OutcomeImpossible(os.str());
  }
  LabeledValues<PreparationLabel> out;
  out.reserve(e.size());
  for (const Preparation& p : e.entries()) {
    out.emplace_back(p.label, checked_probability(
                                  p.prior * trace_product(observed, p.state) / den,
                                  "retrodict"));
  }
  return out;
}

RetrodictiveState retrodictive_state(const PositiveOperator& observed) {
  if (!(observed.trace() > tolerances().trace)) {
    throw DomainError("retrodictive state undefined for a zero outcome operator");
  }
  return RetrodictiveState{DensityOperator::normalized(observed)};
}

LabeledValues<PreparationLabel> retrodict_via_duality(const PreparationEnsemble& e,
                                                      const PositiveOperator& observed) {
  if (observed.dim() != e.dim()) {
    throw DimensionMismatch("retrodict: outcome operator and ensemble dimensions differ");
  }
  if (!(trace_product(observed, average_state(e)) > tolerances().denominator)) {
    throw OutcomeImpossible("observed outcome is impossible for this ensemble");
  }
  const RetrodictiveState retro = retrodictive_state(observed);

  std::vector<Outcome> dual;
  dual.reserve(e.size());
  for (const Preparation& p : e.entries()) {
    dual.push_back(Outcome{p.label, p.state.scaled(p.prior)});
  }

  ProbabilityReport report;
  try {
    report = general_distribution(MeasurementProcedure(std::move(dual)), retro.state);
  } catch (const IncompatibleState& err) {
    throw OutcomeImpossible(err.what());
  }
  return report.probabilities;
}

std::pair<double, double> born_noncontextuality_check(const PositiveOperator& effect,
                                                      const StandardPOVM& povm_a,
                                                      const StandardPOVM& povm_b,
                                                      const DensityOperator& rho) {
  auto through_complement = [&](const StandardPOVM& povm, const char* name) {
    if (povm.dim() != effect.dim() || rho.dim() != effect.dim()) {
      throw DimensionMismatch("born_noncontextuality_check: dimension mismatch");
    }
    std::optional<std::size_t> position;
    for (std::size_t i = 0; i < povm.size(); ++i) {
      if (max_abs(povm.effects()[i].op.matrix() - effect.matrix()) <= kStandardTolerance) {
        position = i;
        break;
      }
    }
    if (!position) {
      throw UnknownLabel(std::string("effect is not an element of POVM ") + name);
    }
    double others = 0.0;
    for (std::size_t i = 0; i < povm.size(); ++i) {
      if (i != *position) others += trace_product(povm.effects()[i].op, rho);
    }
    return checked_probability(1.0 - others, "born_noncontextuality_check");
  };
  return {through_complement(povm_a, "A"), through_complement(povm_b, "B")};
}

}  // namespace qprob
