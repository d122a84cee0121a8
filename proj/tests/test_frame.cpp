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

#include <catch_amalgamated.hpp>

#include <atomic>
#include <cmath>

#include "qprob/errors.hpp"
#include "qprob/frame.hpp"
#include "support.hpp"

using Catch::Matchers::WithinAbs;

namespace qprob {
namespace test_frame {

using test::mat2;

static FrameFunction squared_trace_frame(std::size_t dim) {
  return FrameFunction{dim, [](const PositiveOperator& a) { return a.trace() * a.trace(); }};
}

static FrameFunction counting(const FrameFunction& w, std::atomic<std::size_t>& calls) {
  return FrameFunction{w.dim, [w, &calls](const PositiveOperator& a) {
                         ++calls;
                         return w.evaluator(a);
                       }};
}

SCENARIO("Frame function evaluation guards") {
  const FrameFunction negative{2, [](const PositiveOperator&) { return -1.0; }};
  const FrameFunction nan{2, [](const PositiveOperator&) { return NAN; }};
  REQUIRE_THROWS_AS(negative(test::proj0()), FrameViolation);
  REQUIRE_THROWS_AS(nan(test::proj0()), FrameViolation);
  REQUIRE_THROWS_AS(verify_additivity(negative, 3, 1), FrameViolation);
  REQUIRE_THROWS_AS(reconstruct(nan), FrameViolation);
}

SCENARIO("verify_additivity") {
  Rng rng = make_rng(1);
  const HiddenFrame hidden{random_positive(3, rng)};
  REQUIRE(verify_additivity(hidden.frame_function(), 50, 2) <= 1e-12 * 10);

  GIVEN("the adversarial w(A) = (Tr A)^2") {
    const FrameFunction bad = squared_trace_frame(3);
    REQUIRE(verify_additivity(bad, 5, 3) > 0.1);
    THEN("the violation is 2 Tr A Tr B") {
      const auto a = random_positive(3, rng);
      const auto b = random_positive(3, rng);
      REQUIRE_THAT(additivity_violation(bad, a, b),
                   WithinAbs(2.0 * a.trace() * b.trace(), 1e-10));
    }
  }
  GIVEN("A = B = 0") {
    const auto zero = PositiveOperator::zero(3);
    REQUIRE(additivity_violation(squared_trace_frame(3), zero, zero) == 0.0);
    REQUIRE(additivity_violation(hidden.frame_function(), zero, zero) == 0.0);
  }
  REQUIRE_THROWS_AS(verify_additivity(hidden.frame_function(), 0, 1), DomainError);
}

SCENARIO("verify_scaling") {
  Rng rng = make_rng(4);
  const auto w = HiddenFrame{random_positive(4, rng)}.frame_function();
  const auto a = random_positive(4, rng);

  auto [lhs, rhs] = verify_scaling(w, a, 0, 5);
  REQUIRE(lhs == 0.0);
  REQUIRE(rhs == 0.0);

  std::tie(lhs, rhs) = verify_scaling(w, a, 7, 7);
  REQUIRE(lhs == w(a));
  REQUIRE(rhs == w(a));

  std::tie(lhs, rhs) = verify_scaling(w, a, 3, 7);
  REQUIRE_THAT(lhs, WithinAbs(rhs, 1e-12 * std::max(1.0, lhs)));

  for (double alpha : {M_SQRT2, M_PI, 1e-3, 17.25}) {
    std::tie(lhs, rhs) = verify_real_scaling(w, a, alpha);
    REQUIRE_THAT(lhs, WithinAbs(rhs, 1e-10 * std::max(1.0, lhs)));
  }
  REQUIRE_THROWS_AS(verify_scaling(w, a, 1, 0), DomainError);
}

SCENARIO("Linearity over non-negative combinations") {
  Rng rng = make_rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = 1 + static_cast<std::size_t>(trial % 6);
    const auto w = HiddenFrame{random_positive(d, rng)}.frame_function();
    PositiveOperator combo = PositiveOperator::zero(d);
    double expected = 0.0;
    std::uniform_real_distribution<double> coefficient(0.0, 3.0);
    for (int i = 0; i < 4; ++i) {
      const auto m = random_positive(d, rng);
      const double alpha = coefficient(rng);
      combo = combo + m.scaled(alpha);
      expected += alpha * w(m);
    }
    REQUIRE_THAT(w(combo), WithinAbs(expected, 1e-10 * std::max(1.0, expected)));
  }
}

SCENARIO("reconstruct on exact cases") {
  GIVEN("hidden R = I/2") {
    const auto res =
        reconstruct(HiddenFrame{PositiveOperator::identity(2).scaled(0.5)}.frame_function());
    REQUIRE(max_abs(res.r_hat.matrix() - Matrix::Identity(2, 2) / 2.0) <= 1e-15);
    REQUIRE(res.residual <= 1e-12);
  }
  GIVEN("hidden R = |0><0|") {
    const auto res = reconstruct(HiddenFrame{test::proj0()}.frame_function());
    // w(p+) = w(pi) = 1/2, so both parts of R01 are 1/2 - 1/2 = 0.
    REQUIRE(max_abs(res.r_hat.matrix() - mat2(1, 0, 0, 0)) <= 1e-15);
    REQUIRE_THAT(positivity_of_reconstruction(res), WithinAbs(0.0, 1e-12));
  }
  GIVEN("hidden R = I") {
    const auto res = reconstruct(HiddenFrame{PositiveOperator::identity(3)}.frame_function());
    REQUIRE_THAT(positivity_of_reconstruction(res), WithinAbs(1.0, 1e-12));
  }
  GIVEN("a complex off-diagonal") {
    const PositiveOperator r(HermitianOperator(mat2(0.6, Complex(0.1, -0.2), Complex(0.1, 0.2), 0.4)));
    const auto res = reconstruct(HiddenFrame{r}.frame_function());
    REQUIRE(max_abs(res.r_hat.matrix() - r.matrix()) <= 1e-15);
  }
  GIVEN("dimension 1") {
    Matrix m(1, 1);
    m << 2.5;
    const auto res = reconstruct(HiddenFrame{PositiveOperator(HermitianOperator(m))}.frame_function());
    REQUIRE(res.reconstruction_queries == 1);
    REQUIRE(res.r_hat(0, 0) == Complex(2.5));
  }
}

SCENARIO("reconstruct random hidden operators") {
  GIVEN("the seeded d = 6 case") {
    Rng rng = make_rng(13);
    const PositiveOperator r = random_positive(6, rng);
    const auto res = reconstruct(HiddenFrame{r}.frame_function());
    REQUIRE(frobenius_norm(res.r_hat.matrix() - r.matrix()) <= 1e-8);
  }
  GIVEN("d = 5") {
    Rng rng = make_rng(14);
    const auto res = reconstruct(HiddenFrame{random_positive(5, rng)}.frame_function());
    REQUIRE(positivity_of_reconstruction(res) >= -1e-10);
  }
  GIVEN("many dimensions and a query counter") {
    Rng rng = make_rng(15);
    for (std::size_t d = 1; d <= 8; ++d) {
      for (int trial = 0; trial < 10; ++trial) {
        const PositiveOperator r = random_positive(d, rng);
        std::atomic<std::size_t> calls{0};
        ReconstructionOptions options;
        options.validation_probes = 7;
        const auto res = reconstruct(counting(HiddenFrame{r}.frame_function(), calls), options);
        REQUIRE(calls == d * d + 7);
        REQUIRE(res.reconstruction_queries == d * d);
        REQUIRE(res.bases_used.size() == d * d);
        REQUIRE(frobenius_norm(res.r_hat.matrix() - r.matrix()) <= 1e-8);
        REQUIRE(res.residual <= 1e-10 * std::max(1.0, r.trace()) * d);
      }
    }
  }
  GIVEN("a rotated probe frame") {
    Rng rng = make_rng(16);
    for (std::size_t d = 2; d <= 6; ++d) {
      const auto w = HiddenFrame{random_positive(d, rng)}.frame_function();
      const auto plain = reconstruct(w);
      const auto rotated = reconstruct_in_frame(w, random_unitary(d, rng));
      REQUIRE(frobenius_norm(rotated.r_hat.matrix() - plain.r_hat.matrix()) <= 1e-8);
    }
  }
  GIVEN("a non-additive evaluator") {
    const auto res = reconstruct(squared_trace_frame(3));
    THEN("the residual exposes it") { REQUIRE(res.residual > 1e-3); }
  }
}

SCENARIO("uniqueness_check") {
  const auto bases = polarization_bases(2);
  REQUIRE(bases.size() == 3);
  const HermitianOperator half = HermitianOperator::identity(2).scaled(0.5);
  REQUIRE(uniqueness_check(half, half, bases) == 0.0);
  REQUIRE_THAT(uniqueness_check(half, test::proj0(), {UnitaryOperator::identity(2)}),
               WithinAbs(0.5, 1e-15));

  GIVEN("operators differing only in Im R01") {
    const double delta = 1e-3;
    const HermitianOperator r1(mat2(0.5, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.5));
    const HermitianOperator r2(
        mat2(0.5, Complex(0.1, 0.2 + delta), Complex(0.1, -0.2 - delta), 0.5));
    REQUIRE(uniqueness_check(r1, r2, {UnitaryOperator::identity(2)}) == 0.0);
    // bases[2] holds (e0 + i e1)/sqrt2 as its first column.
    REQUIRE_THAT(uniqueness_check(r1, r2, {bases[2]}), WithinAbs(delta, 1e-12));
  }
  GIVEN("random perturbations") {
    Rng rng = make_rng(17);
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t d = 2 + static_cast<std::size_t>(trial % 5);
      const auto r1 = random_hermitian(d, rng);
      const auto r2 = r1 + random_hermitian(d, rng).scaled(std::pow(10.0, -(trial % 7)));
      const double eps = uniqueness_check(r1, r2, polarization_bases(d));
      REQUIRE(max_abs(r1.matrix() - r2.matrix()) <= 4.0 * eps + 1e-15);
    }
  }
  REQUIRE_THROWS_AS(uniqueness_check(half, HermitianOperator::identity(3), bases),
                    DimensionMismatch);
  REQUIRE_THROWS_AS(uniqueness_check(half, half, {}), DomainError);
}

}  // namespace test_frame
}  // namespace qprob
