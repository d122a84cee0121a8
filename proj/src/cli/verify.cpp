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


#include "qprob/cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qprob/errors.hpp"
#include "qprob/measurement.hpp"
#include "qprob/probability.hpp"

namespace qprob::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kExact = 1e-12;
constexpr double kFrameRelative = 1e-10;
constexpr double kRecovery = 1e-8;
constexpr double kPositivity = 1e-10;

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

std::vector<OutcomeLabel> numbered(std::size_t n) {
  std::vector<OutcomeLabel> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("m" + std::to_string(i));
  return out;
}

MeasurementProcedure labelled_procedure(const std::vector<PositiveOperator>& ops) {
  const auto names = numbered(ops.size());
  std::vector<Outcome> outcomes;
  for (std::size_t i = 0; i < ops.size(); ++i) outcomes.push_back(Outcome{names[i], ops[i]});
  return MeasurementProcedure(std::move(outcomes));
}

PreparationEnsemble random_ensemble(std::size_t dim, std::size_t size, Rng& rng) {
  const std::vector<double> priors = random_probabilities(size, rng);
  std::vector<Preparation> entries;
  for (std::size_t k = 0; k < size; ++k) {
    entries.push_back(Preparation{"s" + std::to_string(k), priors[k], random_density(dim, rng)});
  }
  return PreparationEnsemble(std::move(entries));
}

Json ensemble_json(const PreparationEnsemble& e) {
  Json out = Json::array();
  for (const Preparation& p : e.entries()) {
    out.push_back({{"label", p.label}, {"prior", p.prior}, {"matrix", matrix_json(p.state.matrix())}});
  }
  return out;
}

Json procedure_json(const MeasurementProcedure& x) {
  Json out = Json::array();
  for (const Outcome& o : x.outcomes()) {
    out.push_back({{"label", o.label}, {"matrix", matrix_json(o.op.matrix())}});
  }
  return out;
}

// Tracks the worst trial of one property at one dimension.
class Tracker {
 public:
  Tracker(std::string property, std::size_t dim, double threshold, Seed seed)
      : seed_(seed) {
    result_.property = std::move(property);
    result_.dim = dim;
    result_.threshold = threshold;
  }

  template <typename MakeCase>
  void observe(double violation, std::size_t trial, MakeCase make_case) {
    if (!(violation <= result_.max_violation) || std::isnan(violation)) {
      result_.max_violation = std::isnan(violation) ? std::numeric_limits<double>::infinity()
                                                    : violation;
      if (!(violation <= result_.threshold)) {
        Json c = {{"property", result_.property},
                  {"dim", result_.dim},
                  {"seed", seed_},
                  {"trial", trial}};
        const Json details = make_case();
        for (const auto& [key, value] : details.items()) c[key] = value;
        result_.counterexample = std::move(c);
      }
    }
  }

  PropertyResult finish() {
    result_.passed = result_.max_violation <= result_.threshold;
    if (result_.passed) result_.counterexample = nullptr;
    return result_;
  }

 private:
  PropertyResult result_;
  Seed seed_;
};

std::uint64_t stream_of(std::size_t dim, std::uint64_t property) { return dim * 16 + property; }

PropertyResult check_additivity(const VerifyOptions& o, std::size_t d) {
  Tracker t("additivity", d, kFrameRelative, o.seed);
  Rng rng = make_rng(o.seed, stream_of(d, 0));
  for (std::size_t trial = 0; trial < o.trials; ++trial) {
    const PositiveOperator hidden = random_positive(d, rng);
    const PositiveOperator a = random_positive(d, rng);
    const PositiveOperator b = random_positive(d, rng);
    double v;
    std::string error;
    try {
      const FrameFunction w = o.frame_factory(hidden);
      v = additivity_violation(w, a, b) / std::max(1.0, std::abs(w(a + b)));
    } catch (const DomainError& e) {
      v = std::numeric_limits<double>::infinity();
      error = e.what();
    }
    t.observe(v, trial, [&] {
      Json c = {{"hidden", matrix_json(hidden.matrix())},
                {"a", matrix_json(a.matrix())},
                {"b", matrix_json(b.matrix())}};
      if (!error.empty()) c["error"] = error;
      return c;
    });
  }
  return t.finish();
}

PropertyResult check_scaling(const VerifyOptions& o, std::size_t d) {
  Tracker t("scaling", d, kFrameRelative, o.seed);
  Rng rng = make_rng(o.seed, stream_of(d, 1));
  std::uniform_int_distribution<unsigned> denominator(1, 9);
  std::uniform_real_distribution<double> real(0.0, 10.0);
  for (std::size_t trial = 0; trial < o.trials; ++trial) {
    const PositiveOperator hidden = random_positive(d, rng);
    const PositiveOperator a = random_positive(d, rng);
    const unsigned n = denominator(rng);
    const unsigned r = std::uniform_int_distribution<unsigned>(0, n)(rng);
    const double alpha = real(rng);
    double v;
    std::string error;
    try {
      const FrameFunction w = o.frame_factory(hidden);
      const auto [l1, r1] = verify_scaling(w, a, r, n);
      const auto [l2, r2] = verify_real_scaling(w, a, alpha);
      v = std::max(std::abs(l1 - r1) / std::max(1.0, std::abs(l1)),
                   std::abs(l2 - r2) / std::max(1.0, std::abs(l2)));
    } catch (const DomainError& e) {
      v = std::numeric_limits<double>::infinity();
      error = e.what();
    }
    t.observe(v, trial, [&] {
      Json c = {{"hidden", matrix_json(hidden.matrix())},
                {"a", matrix_json(a.matrix())},
                {"r", r},
                {"n", n},
                {"alpha", alpha}};
      if (!error.empty()) c["error"] = error;
      return c;
    });
  }
  return t.finish();
}

// Reconstruction and positivity share the same reconstructed operators.
std::pair<PropertyResult, PropertyResult> check_reconstruction(const VerifyOptions& o,
                                                               std::size_t d) {
  Tracker recovery("reconstruction", d, kRecovery, o.seed);
  Tracker positivity("positivity", d, kPositivity, o.seed);
  Rng rng = make_rng(o.seed, stream_of(d, 2));
  for (std::size_t trial = 0; trial < o.trials; ++trial) {
    const PositiveOperator hidden = random_positive(d, rng);
    double gap;
    double negativity;
    Json r_hat;
    std::string error;
    try {
      const ReconstructionResult res = reconstruct(o.frame_factory(hidden));
      gap = frobenius_norm(res.r_hat.matrix() - hidden.matrix());
      negativity = std::max(0.0, -positivity_of_reconstruction(res));
      r_hat = matrix_json(res.r_hat.matrix());
    } catch (const DomainError& e) {
      gap = negativity = std::numeric_limits<double>::infinity();
      error = e.what();
    }
    auto make_case = [&] {
      Json c = {{"hidden", matrix_json(hidden.matrix())}, {"r_hat", r_hat}};
      if (!error.empty()) c["error"] = error;
      return c;
    };
    recovery.observe(gap, trial, make_case);
    positivity.observe(negativity, trial, make_case);
  }
  return {recovery.finish(), positivity.finish()};
}

PropertyResult check_uniqueness(const VerifyOptions& o, std::size_t d) {
  Tracker t("uniqueness", d, kExact, o.seed);
  Rng rng = make_rng(o.seed, stream_of(d, 3));
  const auto bases = polarization_bases(d);
  for (std::size_t trial = 0; trial < o.trials; ++trial) {
    const HermitianOperator r1 = random_hermitian(d, rng);
    const double scale = std::pow(10.0, -static_cast<double>(trial % 7));
    const HermitianOperator r2 = r1 + random_hermitian(d, rng).scaled(scale);
    const double self = uniqueness_check(r1, r1, bases);
    const double eps = uniqueness_check(r1, r2, bases);
    const double v = std::max(self, max_abs(r1.matrix() - r2.matrix()) - 4.0 * eps);
    t.observe(std::max(0.0, v), trial, [&] {
      return Json{{"r1", matrix_json(r1.matrix())}, {"r2", matrix_json(r2.matrix())}};
    });
  }
  return t.finish();
}

PropertyResult check_duality(const VerifyOptions& o, std::size_t d) {
  Tracker t("duality", d, kExact, o.seed);
  Rng rng = make_rng(o.seed, stream_of(d, 4));
  for (std::size_t trial = 0; trial < o.trials; ++trial) {
    const PreparationEnsemble e = random_ensemble(d, 2 + trial % 3, rng);
    const PositiveOperator observed = random_povm_elements(d, 3, rng).front();
    const auto direct = retrodict(e, observed);
    const auto dual = retrodict_via_duality(e, observed);
    double v = 0.0;
    for (std::size_t k = 0; k < direct.size(); ++k) {
      v = std::max(v, std::abs(direct[k].second - dual[k].second));
    }
    t.observe(v, trial, [&] {
      return Json{{"ensemble", ensemble_json(e)}, {"observed", matrix_json(observed.matrix())}};
    });
  }
  return t.finish();
}

PropertyResult check_born(const VerifyOptions& o, std::size_t d) {
  Tracker t("born_reduction", d, kExact, o.seed);
  Rng rng = make_rng(o.seed, stream_of(d, 5));
  for (std::size_t trial = 0; trial < o.trials; ++trial) {
    const MeasurementProcedure povm =
        labelled_procedure(random_povm_elements(d, 2 + trial % 4, rng));
    const DensityOperator rho = random_density(d, rng);
    double v = 0.0;
    for (const Outcome& m : povm.outcomes()) {
      v = std::max(v, std::abs(general_probability(povm, rho, m.label) - trace_product(m.op, rho)));
    }
    t.observe(v, trial, [&] {
      return Json{{"procedure", procedure_json(povm)}, {"state", matrix_json(rho.matrix())}};
    });
  }
  return t.finish();
}

PropertyResult check_merging(const VerifyOptions& o, std::size_t d) {
  Tracker t("merging_invariance", d, kExact, o.seed);
  Rng rng = make_rng(o.seed, stream_of(d, 6));
  for (std::size_t trial = 0; trial < o.trials; ++trial) {
    std::vector<PositiveOperator> ops;
    for (std::size_t i = 0; i < 3 + trial % 3; ++i) ops.push_back(random_positive(d, rng));
    const MeasurementProcedure x = labelled_procedure(ops);
    const MeasurementProcedure merged = merge_outcomes(x, {"m0", "m1"}, "m01");
    const DensityOperator rho = random_density(d, rng);
    double v = 0.0;
    for (std::size_t i = 2; i < x.size(); ++i) {
      const OutcomeLabel& label = x.outcomes()[i].label;
      v = std::max(v, std::abs(general_probability(x, rho, label) -
                               general_probability(merged, rho, label)));
    }
    t.observe(v, trial, [&] {
      return Json{{"procedure", procedure_json(x)}, {"state", matrix_json(rho.matrix())}};
    });
  }
  return t.finish();
}

}  // namespace

std::vector<PropertyResult> run_verify(const VerifyOptions& options) {
  VerifyOptions o = options;
  if (!o.frame_factory) {
    o.frame_factory = [](const PositiveOperator& hidden) {
      return HiddenFrame{hidden}.frame_function();
    };
  }
  if (o.trials == 0) throw DomainError("verify: trials must be positive");
  std::vector<PropertyResult> out;
  for (std::size_t d : o.dims) {
    if (d == 0) throw DomainError("verify: dimensions must be at least 1");
    out.push_back(check_additivity(o, d));
    out.push_back(check_scaling(o, d));
    auto [recovery, positivity] = check_reconstruction(o, d);
    out.push_back(std::move(recovery));
    out.push_back(check_uniqueness(o, d));
    out.push_back(std::move(positivity));
    out.push_back(check_duality(o, d));
    out.push_back(check_born(o, d));
    out.push_back(check_merging(o, d));
  }
  return out;
}

}  // namespace qprob::cli
