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

#include "qprob/frame.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "qprob/errors.hpp"
#include "qprob/tolerances.hpp"

namespace qprob {

namespace {

Eigen::Index as_index(std::size_t i) { return static_cast<Eigen::Index>(i); }

Vector probe_vector(std::size_t dim, const ProbeDescriptor& probe) {
  Vector v = Vector::Zero(as_index(dim));
  if (probe.kind == ProbeDescriptor::Kind::kDiagonal) {
    v(as_index(probe.i)) = 1.0;
    return v;
  }
  const double amplitude = 1.0 / std::sqrt(2.0);
  v(as_index(probe.i)) = amplitude;
  v(as_index(probe.j)) = probe.kind == ProbeDescriptor::Kind::kReal
                             ? Complex(amplitude, 0.0)
                             : Complex(0.0, amplitude);
  return v;
}

ReconstructionResult reconstruct_impl(const FrameFunction& w,
                                      const std::optional<UnitaryOperator>& frame,
                                      const ReconstructionOptions& options) {
  const std::size_t d = w.dim;
  if (d == 0) throw DimensionMismatch("frame function has dimension 0");
  if (frame && frame->dim() != d) {
    throw DimensionMismatch("reconstruction frame has the wrong dimension");
  }

  std::size_t queries = 0;
  std::vector<ProbeDescriptor> probes;
  auto query = [&](const ProbeDescriptor& probe) {
    Vector v = probe_vector(d, probe);
    if (frame) v = frame->matrix() * v;
    probes.push_back(probe);
    ++queries;
    return w(projector(StateVector::normalized(v)));
  };

  Matrix r = Matrix::Zero(as_index(d), as_index(d));
  for (std::size_t i = 0; i < d; ++i) {
    r(as_index(i), as_index(i)) = query({ProbeDescriptor::Kind::kDiagonal, i, i});
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      const double mean_diag =
          (r(as_index(i), as_index(i)).real() + r(as_index(j), as_index(j)).real()) / 2.0;
      const double w_real = query({ProbeDescriptor::Kind::kReal, i, j});
      const double w_imag = query({ProbeDescriptor::Kind::kImaginary, i, j});
      const Complex entry(w_real - mean_diag, mean_diag - w_imag);
      r(as_index(i), as_index(j)) = entry;
      r(as_index(j), as_index(i)) = std::conj(entry);
    }
  }
  if (frame) r = frame->matrix() * r * frame->matrix().adjoint();

  HermitianOperator r_hat(Matrix((r + r.adjoint()) / 2.0));

  Rng rng = make_rng(options.validation_seed);
  double residual = 0.0;
  for (std::size_t v = 0; v < options.validation_probes; ++v) {
    const PositiveOperator m = random_positive(d, rng);
    residual = std::max(residual, std::abs(w(m) - trace_product(m, r_hat)));
  }

  std::string frame_name;
  if (frame) frame_name = "rotated";
  return ReconstructionResult{std::move(r_hat), residual,    std::move(frame_name),
                              std::move(probes), queries,    options.validation_probes};
}

}  // namespace

double FrameFunction::operator()(const PositiveOperator& a) const {
  if (a.dim() != dim) {
    throw DimensionMismatch("frame function evaluated on an operator of the wrong dimension");
  }
  const double value = evaluator(a);
  if (!std::isfinite(value)) {
    throw FrameViolation("frame function returned a non-finite value");
  }
  if (value < -tolerances().positive) {
    std::ostringstream os;
    os << "frame function returned a negative value (" << value << ")";
    throw FrameViolation(os.str());
  }
  return value;
}

FrameFunction HiddenFrame::frame_function() const {
  return FrameFunction{r.dim(), [r = r](const PositiveOperator& a) {
                         return trace_product(a, r);
                       }};
}

std::string ProbeDescriptor::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::kDiagonal:
      os << "e" << i;
      break;
    case Kind::kReal:
      os << "(e" << i << "+e" << j << ")/sqrt2";
      break;
    case Kind::kImaginary:
      os << "(e" << i << "+i*e" << j << ")/sqrt2";
      break;
  }
  return os.str();
}

double additivity_violation(const FrameFunction& w, const PositiveOperator& a,
                            const PositiveOperator& b) {
  return std::abs(w(a + b) - w(a) - w(b));
}

double verify_additivity(const FrameFunction& w, std::size_t trials, Seed seed) {
  if (trials == 0) throw DomainError("verify_additivity needs at least one trial");
  Rng rng = make_rng(seed);
  double worst = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const PositiveOperator a = random_positive(w.dim, rng);
    const PositiveOperator b = random_positive(w.dim, rng);
    worst = std::max(worst, additivity_violation(w, a, b));
  }
  return worst;
}

std::pair<double, double> verify_scaling(const FrameFunction& w, const PositiveOperator& a,
                                         unsigned r, unsigned n) {
  if (n == 0) throw DomainError("verify_scaling: n must be at least 1");
  const double ratio = static_cast<double>(r) / static_cast<double>(n);
  return {ratio * w(a), w(a.scaled(ratio))};
}

std::pair<double, double> verify_real_scaling(const FrameFunction& w,
                                              const PositiveOperator& a, double alpha) {
  if (!std::isfinite(alpha) || alpha < 0.0) {
    throw DomainError("verify_real_scaling: alpha must be finite and non-negative");
  }
  return {alpha * w(a), w(a.scaled(alpha))};
}

ReconstructionResult reconstruct(const FrameFunction& w,
                                 const ReconstructionOptions& options) {
  return reconstruct_impl(w, std::nullopt, options);
}

ReconstructionResult reconstruct_in_frame(const FrameFunction& w,
                                          const UnitaryOperator& frame,
                                          const ReconstructionOptions& options) {
  return reconstruct_impl(w, frame, options);
}

double uniqueness_check(const HermitianOperator& r1, const HermitianOperator& r2,
                        const std::vector<UnitaryOperator>& bases) {
  if (r1.dim() != r2.dim()) throw DimensionMismatch("uniqueness_check: dimension mismatch");
  if (bases.empty()) throw DomainError("uniqueness_check: no bases supplied");
  const Matrix diff = r1.matrix() - r2.matrix();
  double gap = 0.0;
  for (const UnitaryOperator& u : bases) {
    if (u.dim() != r1.dim()) throw DimensionMismatch("uniqueness_check: basis dimension");
    const Matrix rotated = u.matrix().adjoint() * diff * u.matrix();
    for (Eigen::Index i = 0; i < rotated.rows(); ++i) {
      gap = std::max(gap, std::abs(rotated(i, i).real()));
    }
  }
  return gap;
}

std::vector<UnitaryOperator> polarization_bases(std::size_t dim) {
  if (dim == 0) throw DimensionMismatch("dimension must be at least 1");
  std::vector<UnitaryOperator> out;
  out.push_back(UnitaryOperator::identity(dim));
  const double amplitude = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      for (const Complex phase : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
        Matrix u = Matrix::Identity(as_index(dim), as_index(dim));
        u(as_index(i), as_index(i)) = amplitude;
        u(as_index(j), as_index(i)) = amplitude * phase;
        u(as_index(i), as_index(j)) = amplitude;
        u(as_index(j), as_index(j)) = -amplitude * phase;
        out.emplace_back(u);
      }
    }
  }
  return out;
}

double positivity_of_reconstruction(const ReconstructionResult& result) {
  return eigh(result.r_hat).eigenvalues.front();
}

}  // namespace qprob
