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
#include <vector>

#include <json.hpp>

#include "qprob/frame.hpp"
#include "qprob/random.hpp"

namespace qprob::cli {

/** Builds the frame function under test from a hidden positive operator. */
using FrameFactory = std::function<FrameFunction(const PositiveOperator& hidden)>;

struct VerifyOptions {
  Seed seed = 20260101;
  std::vector<std::size_t> dims = {2, 3, 4};
  /// Random instances per property and dimension.
  std::size_t trials = 20;
  /// Defaults to HiddenFrame. Tests inject non-additive evaluators here.
  FrameFactory frame_factory;
};

struct PropertyResult {
  std::string property;
  std::size_t dim = 0;
  double max_violation = 0.0;
  double threshold = 0.0;
  bool passed = true;
  /// Worst instance, with enough data to replay it; null when passed.
  nlohmann::ordered_json counterexample;
};

/**
 * Runs additivity, scaling, reconstruction, uniqueness, positivity,
 * duality, Born reduction and merging invariance at every dimension.
 * @throws DomainError for a zero dimension.
 */
std::vector<PropertyResult> run_verify(const VerifyOptions& options);

}  // namespace qprob::cli
