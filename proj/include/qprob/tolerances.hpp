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

namespace qprob {

/** Numerical slack used by validation throughout the library. */
struct Tolerances {
  /// Max-abs deviation of A from A^dagger.
  double hermitian = 1e-12;
  /// Most negative eigenvalue still accepted (and clamped to zero).
  double positive = 1e-10;
  /// Unit-trace slack for density operators; also the zero-trace floor.
  double trace = 1e-12;
  /// Floor below which Tr(X rho) counts as zero.
  double denominator = 1e-12;
};

/** Tolerances currently in effect (defaults unless overridden). */
const Tolerances& tolerances();

/**
 * Replaces the process-wide tolerances for the lifetime of the object.
 *
 * Intended to be installed once at program start (the CLI does this for
 * --tolerance-overrides) or inside a single test. Not thread-safe with
 * respect to concurrent library calls.
 */
class ScopedTolerances {
 public:
  explicit ScopedTolerances(const Tolerances& t);
  ~ScopedTolerances();
  ScopedTolerances(const ScopedTolerances&) = delete;
  ScopedTolerances& operator=(const ScopedTolerances&) = delete;

 private:
  Tolerances previous_;
};

}  // namespace qprob
