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

#include "qprob/measurement.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "qprob/errors.hpp"
#include "qprob/tolerances.hpp"

namespace qprob {

namespace {

void validate_outcome_list(const std::vector<Outcome>& outcomes, const char* what) {
  if (outcomes.empty()) {
    throw InvalidProcedure(std::string(what) + " needs at least one outcome");
  }
  std::set<OutcomeLabel> seen;
  const std::size_t d = outcomes.front().op.dim();
  for (const Outcome& o : outcomes) {
    if (o.label.empty()) {
      throw InvalidProcedure(std::string(what) + ": outcome labels must be non-empty");
    }
    if (!seen.insert(o.label).second) {
      throw InvalidProcedure(std::string(what) + ": duplicate outcome label '" +
                             o.label + "'");
    }
    if (o.op.dim() != d) {
      throw InvalidProcedure(std::string(what) + ": outcome '" + o.label +
                             "' has a different dimension");
    }
  }
}

PositiveOperator sum_of(const std::vector<Outcome>& outcomes) {
  PositiveOperator total = outcomes.front().op;
  for (std::size_t i = 1; i < outcomes.size(); ++i) {
    total = total + outcomes[i].op;
  }
  return total;
}

const PositiveOperator& find_op(const std::vector<Outcome>& outcomes,
                                const OutcomeLabel& label) {
  for (const Outcome& o : outcomes) {
    if (o.label == label) return o.op;
  }
  throw UnknownLabel("unknown outcome label '" + label + "'");
}

std::vector<OutcomeLabel> labels_of(const std::vector<Outcome>& outcomes) {
  std::vector<OutcomeLabel> out;
  out.reserve(outcomes.size());
  for (const Outcome& o : outcomes) out.push_back(o.label);
  return out;
}

}  // namespace

MeasurementProcedure::MeasurementProcedure(std::vector<Outcome> outcomes)
    : outcomes_(std::move(outcomes)) {
  validate_outcome_list(outcomes_, "measurement procedure");
  const double tr = sum_of(outcomes_).trace();
  if (!(tr > tolerances().trace)) {
    std::ostringstream os;
    os << "measurement procedure is degenerate: Tr(X) = " << tr;
    throw DegenerateProcedure(os.str());
  }
}

std::vector<OutcomeLabel> MeasurementProcedure::labels() const {
  return labels_of(outcomes_);
}

bool MeasurementProcedure::contains(const OutcomeLabel& label) const {
  return std::any_of(outcomes_.begin(), outcomes_.end(),
                     [&](const Outcome& o) { return o.label == label; });
}

const PositiveOperator& MeasurementProcedure::op(const OutcomeLabel& label) const {
  return find_op(outcomes_, label);
}

StandardPOVM::StandardPOVM(std::vector<Outcome> effects) : effects_(std::move(effects)) {
  validate_outcome_list(effects_, "POVM");
  const std::size_t d = effects_.front().op.dim();
  const double deviation =
      max_abs(sum_of(effects_).matrix() -
              Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)));
  if (deviation > kStandardTolerance) {
    std::ostringstream os;
    os << "POVM effects do not sum to the identity (max deviation " << deviation << ")";
    throw InvalidProcedure(os.str());
  }
  for (const Outcome& e : effects_) {
    const double top = e.op.max_eigenvalue();
    if (top > 1.0 + kStandardTolerance) {
      std::ostringstream os;
      os << "POVM element '" << e.label << "' is not an effect (max eigenvalue "
         << top << ")";
      throw InvalidProcedure(os.str());
    }
  }
}

std::vector<OutcomeLabel> StandardPOVM::labels() const { return labels_of(effects_); }

const PositiveOperator& StandardPOVM::effect(const OutcomeLabel& label) const {
  return find_op(effects_, label);
}

MeasurementProcedure StandardPOVM::as_procedure() const {
  return MeasurementProcedure(effects_);
}

PositiveOperator procedure_sum(const MeasurementProcedure& x) {
  return sum_of(x.outcomes());
}

MeasurementProcedure merge_outcomes(const MeasurementProcedure& x,
                                    const std::vector<OutcomeLabel>& labels,
                                    const OutcomeLabel& new_label) {
  if (labels.empty()) {
    throw InvalidProcedure("merge_outcomes: no outcomes to merge");
  }
  const std::set<OutcomeLabel> merged(labels.begin(), labels.end());
  for (const OutcomeLabel& l : merged) {
    if (!x.contains(l)) throw UnknownLabel("merge_outcomes: unknown label '" + l + "'");
  }

  std::vector<Outcome> out;
  std::optional<std::size_t> merged_slot;
  for (const Outcome& o : x.outcomes()) {
    if (merged.count(o.label) == 0) {
      if (o.label == new_label) {
        throw LabelCollision("merge_outcomes: label '" + new_label +
                             "' is already used by a remaining outcome");
      }
      out.push_back(o);
    } else if (!merged_slot) {
      merged_slot = out.size();
      out.push_back(Outcome{new_label, o.op});
    } else {
      Outcome& slot = out[*merged_slot];
      slot.op = slot.op + o.op;
    }
  }
  return MeasurementProcedure(std::move(out));
}

MeasurementProcedure restrict(const MeasurementProcedure& x,
                              const std::vector<OutcomeLabel>& recorded) {
  if (recorded.empty()) {
    throw InvalidProcedure("restrict: the recorded set must be non-empty");
  }
  const std::set<OutcomeLabel> keep(recorded.begin(), recorded.end());
  for (const OutcomeLabel& l : keep) {
    if (!x.contains(l)) throw UnknownLabel("restrict: unknown label '" + l + "'");
  }
  std::vector<Outcome> out;
  for (const Outcome& o : x.outcomes()) {
    if (keep.count(o.label) != 0) out.push_back(o);
  }
  return MeasurementProcedure(std::move(out));
}

std::optional<double> is_standard(const MeasurementProcedure& x) {
  const PositiveOperator total = procedure_sum(x);
  const auto d = static_cast<Eigen::Index>(x.dim());
  const double k = total.trace() / static_cast<double>(d);
  if (max_abs(total.matrix() - k * Matrix::Identity(d, d)) <= kStandardTolerance) {
    return k;
  }
  return std::nullopt;
}

StandardPOVM to_povm(const MeasurementProcedure& x) {
  const std::optional<double> k = is_standard(x);
  if (!k) {
    throw NonStandardProcedure(
        "procedure is not standard (X is not proportional to the identity); "
        "use the general probability law Tr(M rho)/Tr(X rho) instead");
  }
  std::vector<Outcome> effects;
  effects.reserve(x.size());
  for (const Outcome& o : x.outcomes()) {
    effects.push_back(Outcome{o.label, o.op.scaled(1.0 / *k)});
  }
  return StandardPOVM(std::move(effects));
}

}  // namespace qprob
