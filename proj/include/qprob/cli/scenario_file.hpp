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
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qprob/errors.hpp"
#include "qprob/measurement.hpp"
#include "qprob/probability.hpp"
#include "qprob/random.hpp"

namespace qprob::cli {

/**
 * Malformed scenario text. `where()` is either "line N" for a syntax error
 * or a JSON pointer such as "/ensemble/1/prior" for a field error.
 */
class ParseError : public QprobError {
 public:
  ParseError(std::string where, const std::string& what)
      : QprobError(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/**
 * One scenario document.
 *
 * Top-level keys: "dimension"; either "state" (an object holding "matrix"
 * or "ket") or "ensemble" (a list of {label, prior, matrix|ket});
 * "procedure" (a list of {label, matrix|ket}); optional "recorded",
 * "observed", "samples", "seed". A ket is an amplitude list and stands for
 * its normalized projector. Matrices are row-major nested lists whose
 * entries are bare reals or [re, im] pairs.
 */
struct ScenarioFile {
  std::size_t dimension = 0;
  std::optional<PreparationEnsemble> ensemble;
  std::optional<MeasurementProcedure> procedure;
  /// Empty means every procedure outcome.
  std::vector<OutcomeLabel> recorded;
  std::optional<OutcomeLabel> observed;
  std::optional<std::uint64_t> samples;
  std::optional<Seed> seed;
  /// Test-fixture hook: shifts the analytic target of the first recorded
  /// outcome by this many standard errors before comparison.
  std::optional<double> analytic_offset_sigmas;
};

/**
 * @throws ParseError for syntax, missing fields or wrong types; DomainError
 *         subclasses when well-formed data violates an operator invariant.
 */
ScenarioFile parse_scenario(const std::string& text);

/** Reads a whole file. @throws ParseError if it cannot be opened. */
std::string read_file(const std::string& path);

}  // namespace qprob::cli
