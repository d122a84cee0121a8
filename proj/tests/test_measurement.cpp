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

#include <algorithm>
#include <cmath>

#include "qprob/errors.hpp"
#include "qprob/measurement.hpp"
#include "qprob/random.hpp"
#include "support.hpp"

using Catch::Matchers::WithinAbs;

namespace qprob {
namespace test_measurement {

using test::mat2;
using test::proj0;
using test::proj1;
using test::proj_plus;

SCENARIO("Procedure construction") {
  REQUIRE_THROWS_AS(MeasurementProcedure({}), InvalidProcedure);
  REQUIRE_THROWS_AS(test::procedure({{"a", proj0()}, {"a", proj1()}}), InvalidProcedure);
  REQUIRE_THROWS_AS(test::procedure({{"", proj0()}}), InvalidProcedure);
  REQUIRE_THROWS_AS(test::procedure({{"a", proj0()}, {"b", PositiveOperator::identity(3)}}),
                    InvalidProcedure);
  GIVEN("only zero operators") {
    REQUIRE_THROWS_AS(test::procedure({{"a", PositiveOperator::zero(2)}}), DegenerateProcedure);
  }
  GIVEN("a zero operator beside a nonzero one") {
    const auto x = test::procedure({{"never", PositiveOperator::zero(2)}, {"a", proj0()}});
    REQUIRE(x.size() == 2);
  }
  GIVEN("operators that are not effects") {
    const auto x = test::procedure({{"big", proj0().scaled(5.0)}});
    REQUIRE(x.op("big").max_eigenvalue() == 5.0);
    REQUIRE_THROWS_AS(x.op("missing"), UnknownLabel);
  }
}

SCENARIO("procedure_sum") {
  REQUIRE(procedure_sum(test::procedure({{"m0", proj0()}, {"m1", proj1()}})).matrix() ==
          Matrix::Identity(2, 2));
  REQUIRE(procedure_sum(test::procedure({{"m0", proj0()}})).matrix() == proj0().matrix());
  // Direct matrix addition oracle: [[1,0],[0,0]] + [[.5,.5],[.5,.5]].
  REQUIRE(max_abs(procedure_sum(test::procedure({{"m0", proj0()}, {"m1", proj_plus()}}))
                      .matrix() -
                  mat2(1.5, 0.5, 0.5, 0.5)) <= 1e-15);
}

SCENARIO("merge_outcomes") {
  const auto x = test::procedure({{"m0", proj0()}, {"m1", proj1()}});

  GIVEN("a full merge") {
    const auto merged = merge_outcomes(x, {"m0", "m1"}, "any");
    REQUIRE(merged.size() == 1);
    REQUIRE(merged.op("any").matrix() == Matrix::Identity(2, 2));
  }
  GIVEN("a merge of disjoint projectors") {
    Rng rng = make_rng(8);
    const UnitaryOperator u = random_unitary(4, rng);
    std::vector<Outcome> outcomes;
    for (std::size_t i = 0; i < 4; ++i) {
      outcomes.push_back(Outcome{"p" + std::to_string(i), projector(u.column(i))});
    }
    const MeasurementProcedure y(outcomes);
    const auto merged = merge_outcomes(y, {"p1", "p3"}, "p13");
    THEN("the merged operator's spectrum is the union of the originals") {
      // Two rank-one orthogonal projectors: spectrum {0, 0, 1, 1}.
      const auto spectrum = eigh(merged.op("p13")).eigenvalues;
      REQUIRE_THAT(spectrum[0], WithinAbs(0.0, 1e-12));
      REQUIRE_THAT(spectrum[1], WithinAbs(0.0, 1e-12));
      REQUIRE_THAT(spectrum[2], WithinAbs(1.0, 1e-12));
      REQUIRE_THAT(spectrum[3], WithinAbs(1.0, 1e-12));
    }
    THEN("the merged outcome takes the first merged position") {
      REQUIRE(merged.labels() == std::vector<OutcomeLabel>{"p0", "p13", "p2"});
    }
  }
  GIVEN("bad arguments") {
    const auto three = test::procedure({{"a", proj0()}, {"b", proj1()}, {"c", proj_plus()}});
    REQUIRE_THROWS_AS(merge_outcomes(three, {"a", "zz"}, "ab"), UnknownLabel);
    REQUIRE_THROWS_AS(merge_outcomes(three, {"a", "b"}, "c"), LabelCollision);
    REQUIRE_THROWS_AS(merge_outcomes(three, {}, "c"), InvalidProcedure);
    REQUIRE_NOTHROW(merge_outcomes(three, {"a", "b"}, "a"));
  }
  GIVEN("random procedures") {
    Rng rng = make_rng(21);
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t d = 1 + static_cast<std::size_t>(trial % 6);
      const auto y = test::random_procedure(d, 4, rng);
      const auto merged = merge_outcomes(y, {"m1", "m3"}, "m13");
      REQUIRE(max_abs(procedure_sum(merged).matrix() - procedure_sum(y).matrix()) <= 1e-15 *
              std::max(1.0, max_abs(procedure_sum(y).matrix())));
    }
  }
}

SCENARIO("procedure_sum ignores outcome order") {
  Rng rng = make_rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const auto y = test::random_procedure(3, 5, rng);
    std::vector<Outcome> reversed(y.outcomes().rbegin(), y.outcomes().rend());
    const MeasurementProcedure z(reversed);
    REQUIRE(max_abs(procedure_sum(z).matrix() - procedure_sum(y).matrix()) <= 1e-14);
  }
}

SCENARIO("restrict") {
  const auto x = test::procedure({{"m0", proj0()}, {"m1", proj1()}});
  const auto only0 = restrict(x, {"m0"});
  REQUIRE(only0.size() == 1);
  REQUIRE(procedure_sum(only0).matrix() == proj0().matrix());

  const auto all = restrict(x, {"m1", "m0"});
  REQUIRE(all.labels() == x.labels());
  REQUIRE(procedure_sum(all).matrix() == procedure_sum(x).matrix());

  REQUIRE_THROWS_AS(restrict(x, {}), InvalidProcedure);
  REQUIRE_THROWS_AS(restrict(x, {"m7"}), UnknownLabel);
  GIVEN("only zero operators retained") {
    const auto z = test::procedure({{"zero", PositiveOperator::zero(2)}, {"a", proj0()}});
    REQUIRE_THROWS_AS(restrict(z, {"zero"}), DegenerateProcedure);
  }
  GIVEN("a qutrit POVM restricted to two outcomes") {
    Rng rng = make_rng(31);
    const StandardPOVM p = test::random_povm(3, 3, rng);
    const auto r = restrict(p.as_procedure(), {"m0", "m1"});
    const Matrix expected = p.effect("m0").matrix() + p.effect("m1").matrix();
    REQUIRE(max_abs(procedure_sum(r).matrix() - expected) <= 1e-15);
    REQUIRE(max_abs(procedure_sum(r).matrix() - Matrix::Identity(3, 3)) > 1e-3);
    REQUIRE_FALSE(is_standard(r).has_value());
  }
  GIVEN("restriction followed by a full merge") {
    Rng rng = make_rng(32);
    const auto y = test::random_procedure(3, 4, rng);
    const auto r = restrict(y, {"m0", "m2", "m3"});
    const auto merged = merge_outcomes(r, r.labels(), "all");
    REQUIRE(merged.size() == 1);
    REQUIRE(merged.op("all").matrix() == procedure_sum(r).matrix());
  }
}

SCENARIO("is_standard") {
  REQUIRE(is_standard(test::procedure({{"m0", proj0()}, {"m1", proj1()}})) == 1.0);
  REQUIRE(is_standard(test::procedure({{"m0", proj0().scaled(2)}, {"m1", proj1().scaled(2)}})) ==
          2.0);
  GIVEN("{|0><0|, |+><+|}") {
    const auto x = test::procedure({{"m0", proj0()}, {"m1", proj_plus()}});
    REQUIRE_FALSE(is_standard(x).has_value());
    THEN("the spectrum of X is 1 +- 1/sqrt2") {
      const auto spectrum = eigh(procedure_sum(x)).eigenvalues;
      REQUIRE_THAT(spectrum[0], WithinAbs(1.0 - 1.0 / std::sqrt(2.0), 1e-15));
      REQUIRE_THAT(spectrum[1], WithinAbs(1.0 + 1.0 / std::sqrt(2.0), 1e-15));
    }
  }
  GIVEN("uniform scaling") {
    Rng rng = make_rng(41);
    for (int trial = 0; trial < 20; ++trial) {
      const bool standard = trial % 2 == 0;
      const auto y = standard ? test::random_povm(3, 4, rng).as_procedure()
                              : test::random_procedure(3, 4, rng);
      const double c = 0.25 + trial;
      std::vector<Outcome> scaled;
      for (const Outcome& o : y.outcomes()) scaled.push_back(Outcome{o.label, o.op.scaled(c)});
      const auto k = is_standard(y);
      const auto kc = is_standard(MeasurementProcedure(scaled));
      REQUIRE(k.has_value() == standard);
      REQUIRE(kc.has_value() == standard);
      if (standard) REQUIRE_THAT(*kc, WithinAbs(c * *k, 1e-12 * c));
    }
  }
}

SCENARIO("to_povm") {
  const auto x = test::procedure({{"m0", proj0().scaled(2)}, {"m1", proj1().scaled(2)}});
  const StandardPOVM p = to_povm(x);
  REQUIRE(p.effect("m0").matrix() == proj0().matrix());
  REQUIRE(p.effect("m1").matrix() == proj1().matrix());

  GIVEN("a POVM viewed as a procedure") {
    Rng rng = make_rng(51);
    const StandardPOVM q = test::random_povm(2, 3, rng);
    const StandardPOVM back = to_povm(q.as_procedure());
    for (std::size_t i = 0; i < q.size(); ++i) {
      REQUIRE(max_abs(back.effects()[i].op.matrix() - q.effects()[i].op.matrix()) <= 1e-15);
    }
  }
  GIVEN("a random qubit POVM scaled by pi") {
    Rng rng = make_rng(52);
    const StandardPOVM q = test::random_povm(2, 3, rng);
    std::vector<Outcome> scaled;
    for (const Outcome& o : q.effects()) scaled.push_back(Outcome{o.label, o.op.scaled(M_PI)});
    const StandardPOVM back = to_povm(MeasurementProcedure(scaled));
    REQUIRE(back.labels() == q.labels());
    for (std::size_t i = 0; i < q.size(); ++i) {
      REQUIRE(max_abs(back.effects()[i].op.matrix() - q.effects()[i].op.matrix()) <= 1e-12);
    }
  }
  GIVEN("a non-standard procedure") {
    const auto y = test::procedure({{"m0", proj0()}, {"m1", proj_plus()}});
    REQUIRE_THROWS_AS(to_povm(y), NonStandardProcedure);
  }
  GIVEN("random procedures") {
    Rng rng = make_rng(53);
    for (int trial = 0; trial < 20; ++trial) {
      const auto y = trial % 3 == 0 ? test::random_procedure(2, 3, rng)
                                    : test::random_povm(2 + trial % 4, 3, rng).as_procedure();
      const bool standard = is_standard(y).has_value();
      if (standard) {
        const StandardPOVM q = to_povm(y);
        PositiveOperator total = PositiveOperator::zero(q.dim());
        for (const Outcome& e : q.effects()) total = total + e.op;
        REQUIRE(max_abs(total.matrix() - Matrix::Identity(total.matrix().rows(),
                                                          total.matrix().cols())) <= 1e-10);
      } else {
        REQUIRE_THROWS_AS(to_povm(y), NonStandardProcedure);
      }
    }
  }
}

SCENARIO("StandardPOVM validation") {
  REQUIRE_THROWS_AS(test::povm({{"a", proj0()}}), InvalidProcedure);
  // Sums to I but the first element exceeds the effect bound.
  const HermitianOperator over(mat2(1.5, 0, 0, 0));
  const HermitianOperator under(mat2(-0.5, 0, 0, 1));
  REQUIRE_THROWS_AS(check_positive(under), NotPositive);
  REQUIRE_THROWS_AS(test::povm({{"a", PositiveOperator(over)}, {"b", proj1()}}),
                    InvalidProcedure);
  REQUIRE_NOTHROW(test::povm({{"a", proj0()}, {"b", proj1()}, {"z", PositiveOperator::zero(2)}}));
}

}  // namespace test_measurement
}  // namespace qprob
