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

#include <cmath>

#include "qprob/errors.hpp"
#include "qprob/simulator.hpp"
#include "support.hpp"

using Catch::Matchers::WithinAbs;

namespace qprob {
namespace test_simulator {

using test::mat2;

static StandardPOVM computational() {
  return test::povm({{"0", test::proj0()}, {"1", test::proj1()}});
}

static PositiveOperator half_of(const PositiveOperator& p) { return p.scaled(0.5); }

static StandardPOVM three_outcome() {
  const PositiveOperator e0 = half_of(test::proj0());
  const PositiveOperator e1 = half_of(test::proj_plus());
  return test::povm({{"m0", e0},
                     {"m1", e1},
                     {"m2", check_positive(HermitianOperator::identity(2) - (e0 + e1))}});
}

static DensityOperator bell_state() {
  Vector v = Vector::Zero(4);
  v(0) = 1.0;
  v(3) = 1.0;
  return DensityOperator(projector(StateVector::normalized(v)));
}

static double joint_total(const SimulationReport& r) {
  double total = 0.0;
  for (const auto& row : r.joint_counts) {
    for (auto c : row) total += static_cast<double>(c);
  }
  return total;
}

SCENARIO("Scenario validation") {
  const auto e = PreparationEnsemble::single("s", test::density(test::proj0()));
  REQUIRE_THROWS_AS(Scenario(e, computational(), {}, 10, 1), InvalidScenario);
  REQUIRE_THROWS_AS(Scenario(e, computational(), {"2"}, 10, 1), InvalidScenario);
  REQUIRE_THROWS_AS(Scenario(e, computational(), {"0"}, 0, 1), InvalidScenario);
  const auto e3 = PreparationEnsemble::single("s", DensityOperator::maximally_mixed(3));
  REQUIRE_THROWS_AS(Scenario(e3, computational(), {"0"}, 10, 1), InvalidScenario);
  const Scenario sc(e, computational(), {"1", "0"}, 10, 1);
  REQUIRE(sc.recorded() == std::vector<OutcomeLabel>{"0", "1"});
}

SCENARIO("Recording every outcome reproduces the Born rule") {
  GIVEN("a random qutrit ensemble and POVM") {
    Rng rng = make_rng(21);
    const auto e = test::random_ensemble(3, 3, rng);
    const auto m = test::random_povm(3, 4, rng);
    const Scenario sc(e, m, m.labels(), 100000, 5);
    const auto report = run(sc);
    REQUIRE(report.accepted == 100000);
    REQUIRE_FALSE(report.inconclusive);
    THEN("every frequency is within four standard errors") {
      for (const auto& c : report.analytic_comparison) {
        INFO(c.quantity << " analytic " << c.analytic << " empirical " << c.empirical);
        REQUIRE(c.consistent(4.0));
      }
    }
    THEN("the posterior of a complete POVM is the prior") {
      for (std::size_t k = 0; k < e.size(); ++k) {
        REQUIRE_THAT(report.analytic_comparison[m.size() + k].analytic,
                     WithinAbs(e.entries()[k].prior, 1e-12));
      }
    }
  }
}

SCENARIO("A single recorded outcome") {
  Rng rng = make_rng(22);
  const auto e = test::random_ensemble(2, 2, rng);
  const auto report = run(Scenario(e, three_outcome(), {"m1"}, 20000, 3));
  REQUIRE(report.outcome_frequencies.size() == 1);
  REQUIRE(report.outcome_frequencies[0].frequency == 1.0);
  REQUIRE(report.outcome_frequencies[0].count == report.accepted);
  REQUIRE(report.outcome_frequencies[0].std_error == 3.0 / static_cast<double>(report.accepted));
  REQUIRE(report.analytic_comparison[0].analytic == 1.0);
  REQUIRE(report.consistent());
}

SCENARIO("Post-selection matches the general probability law") {
  GIVEN("E0 = |0><0|/2, E1 = |+><+|/2, recorded {m0, m1}") {
    const auto e = test::ensemble({{"zero", 0.5, test::proj0()}, {"one", 0.5, test::proj1()}});
    const Scenario sc(e, three_outcome(), {"m0", "m1"}, 200000, 1);
    const auto report = run(sc);
    THEN("the analytic targets are the post-selected values") {
      // Tr(X rho) = 1/2 with rho = I/2, Tr(E0 rho) = 1/4, Tr(E1 rho) = 1/4.
      REQUIRE_THAT(report.analytic_comparison[0].analytic, WithinAbs(0.5, 1e-12));
      REQUIRE_THAT(report.analytic_comparison[1].analytic, WithinAbs(0.5, 1e-12));
      // Tr(X |0><0|) = 3/4, Tr(X |1><1|) = 1/4.
      REQUIRE_THAT(report.analytic_comparison[2].analytic, WithinAbs(0.75, 1e-12));
      REQUIRE_THAT(report.analytic_comparison[3].analytic, WithinAbs(0.25, 1e-12));
    }
    THEN("the acceptance rate is Tr(X rho)") {
      const double rate = static_cast<double>(report.accepted) / 200000.0;
      REQUIRE(std::abs(rate - 0.5) <= 4.0 * std::sqrt(0.25 / 200000.0));
    }
    THEN("the estimates agree with the posterior") {
      REQUIRE(report.consistent());
      const auto post = posterior(e, sc.recorded_procedure());
      REQUIRE_THAT(post.entries[0].posterior, WithinAbs(0.75, 1e-12));
    }
    REQUIRE(joint_total(report) == static_cast<double>(report.accepted));
  }
}

SCENARIO("completion_of") {
  GIVEN("{|0><0|, |+><+|}") {
    const auto x = test::procedure({{"a", test::proj0()}, {"b", test::proj_plus()}});
    const StandardPOVM c = completion_of(x);
    const double lambda = 1.0 + 1.0 / std::sqrt(2.0);
    REQUIRE(c.size() == 3);
    REQUIRE(c.labels().back() == kCompletionLabel);
    REQUIRE(max_abs(c.effect("a").matrix() - test::proj0().matrix() / lambda) <= 1e-12);
    REQUIRE(max_abs(c.effect("b").matrix() - test::proj_plus().matrix() / lambda) <= 1e-12);
    THEN("the sink is rank deficient and positive") {
      const auto spectrum = c.effect(kCompletionLabel).spectrum();
      REQUIRE_THAT(spectrum.front(), WithinAbs(0.0, 1e-12));
      REQUIRE(spectrum.back() > 0.1);
    }
    THEN("post-selected statistics are unchanged") {
      const DensityOperator rho = test::density(test::proj1());
      const auto restricted = restrict(c.as_procedure(), {"a", "b"});
      REQUIRE_THAT(general_probability(restricted, rho, "b"),
                   WithinAbs(general_probability(x, rho, "b"), 1e-12));
    }
  }
  GIVEN("a POVM") {
    const StandardPOVM c = completion_of(computational().as_procedure());
    REQUIRE(c.size() == 3);
    REQUIRE(max_abs(c.effect(kCompletionLabel).matrix()) == 0.0);
    REQUIRE(c.effect("0").matrix() == test::proj0().matrix());
  }
  GIVEN("a standard procedure with K = 2") {
    const auto x = test::procedure({{"a", test::proj0().scaled(2.0)}, {"b", test::proj1().scaled(2.0)}});
    const StandardPOVM c = completion_of(x);
    REQUIRE(max_abs(c.effect(kCompletionLabel).matrix()) <= 1e-12);
    REQUIRE(max_abs(c.effect("a").matrix() - test::proj0().matrix()) <= 1e-12);
  }
  GIVEN("random procedures") {
    Rng rng = make_rng(23);
    for (int trial = 0; trial < 20; ++trial) {
      const auto x = test::random_procedure(3, 3, rng);
      const StandardPOVM c = completion_of(x);
      REQUIRE(max_abs(procedure_sum(c.as_procedure()).matrix() - Matrix::Identity(3, 3)) <= 1e-10);
    }
  }
  REQUIRE_THROWS_AS(completion_of(test::procedure({{kCompletionLabel, test::proj0()}})),
                    LabelCollision);
}

SCENARIO("Heralded preparation") {
  GIVEN("a Bell pair heralded on |0><0|") {
    const auto sc = herald_scenario(computational(), bell_state(), test::proj0(), 50000, 7);
    const auto report = run(sc);
    REQUIRE(report.outcome_frequencies[0].frequency == 1.0);
    REQUIRE(report.outcome_frequencies[1].count == 0);
    REQUIRE(std::abs(static_cast<double>(report.accepted) / 50000.0 - 0.5) < 0.02);
    REQUIRE(report.consistent());
  }
  GIVEN("a trivial herald") {
    const auto sc =
        herald_scenario(computational(), bell_state(), PositiveOperator::identity(2), 50000, 8);
    const auto report = run(sc);
    REQUIRE(report.accepted == 50000);
    REQUIRE_THAT(report.analytic_comparison[0].analytic, WithinAbs(0.5, 1e-12));
    REQUIRE(report.consistent());
  }
  GIVEN("a herald that never fires") {
    const auto sc =
        herald_scenario(computational(), bell_state(), PositiveOperator::zero(2), 1000, 9);
    const auto report = run(sc);
    REQUIRE(report.inconclusive);
    REQUIRE(report.accepted == 0);
    REQUIRE(report.outcome_frequencies.empty());
    REQUIRE_FALSE(report.consistent());
  }
  REQUIRE_THROWS_AS(herald_scenario(computational(), DensityOperator::maximally_mixed(3),
                                    test::proj0(), 10, 1),
                    DimensionMismatch);
  REQUIRE_THROWS_AS(herald_scenario(computational(), bell_state(),
                                    PositiveOperator::identity(2).scaled(2.0), 10, 1),
                    DomainError);
}

SCENARIO("Communication by retrodiction") {
  const auto e = test::ensemble({{"a0", 0.5, test::proj0()}, {"a1", 0.5, test::proj_plus()}});
  const auto map = communication_scenario(e, computational(), "0");
  REQUIRE_THAT(value_of(map, "a0"), WithinAbs(2.0 / 3.0, 1e-12));
  REQUIRE_THAT(value_of(map, "a1"), WithinAbs(1.0 / 3.0, 1e-12));

  const auto report = run(communication_simulation(e, computational(), "0", 100000, 11));
  REQUIRE(std::abs(report.preparation_frequencies[0].frequency - 2.0 / 3.0) <=
          4.0 * report.preparation_frequencies[0].std_error);
  REQUIRE(report.consistent());

  GIVEN("an outcome no preparation can produce") {
    const auto sure = test::ensemble({{"a0", 1.0, test::proj0()}});
    REQUIRE_THROWS_AS(communication_scenario(sure, computational(), "1"), OutcomeImpossible);
    REQUIRE(run(communication_simulation(sure, computational(), "1", 1000, 1)).inconclusive);
  }
}

SCENARIO("Simulation is deterministic") {
  Rng rng = make_rng(24);
  const auto e = test::random_ensemble(3, 2, rng);
  const auto m = test::random_povm(3, 3, rng);
  const Scenario sc(e, m, {"m0", "m2"}, 60000, 42);
  SimulationOptions options;
  options.batch_size = 4096;
  options.threads = 1;
  const auto serial = run(sc, options);
  for (unsigned threads : {2u, 3u, 8u}) {
    options.threads = threads;
    const auto parallel = run(sc, options);
    REQUIRE(parallel.joint_counts == serial.joint_counts);
    REQUIRE(parallel.accepted == serial.accepted);
  }
  options.threads = 1;
  REQUIRE(run(sc, options).joint_counts == serial.joint_counts);
  const Scenario other(e, m, {"m0", "m2"}, 60000, 43);
  REQUIRE(run(other, options).joint_counts != serial.joint_counts);
}

SCENARIO("Four-sigma checks rarely fail on independent seeds") {
  Rng rng = make_rng(25);
  const auto e = test::random_ensemble(2, 2, rng);
  const auto m = test::random_povm(2, 3, rng);
  int failures = 0;
  for (Seed seed = 1000; seed < 1100; ++seed) {
    if (!run(Scenario(e, m, {"m0", "m1"}, 5000, seed)).consistent(4.0)) ++failures;
  }
  REQUIRE(failures <= 2);
}

}  // namespace test_simulator
}  // namespace qprob
