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


#include "qprob/cli/scenario_file.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qprob::cli {

namespace {

using Json = nlohmann::json;

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

const Json& require(const Json& obj, const std::string& path, const std::string& key) {
  if (!obj.is_object()) throw ParseError(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(child(path, key), "missing required field");
  return *it;
}

double number(const Json& v, const std::string& path) {
  if (!v.is_number()) throw ParseError(path, "expected a number");
  return v.get<double>();
}

std::string text(const Json& v, const std::string& path) {
  if (!v.is_string()) throw ParseError(path, "expected a string");
  return v.get<std::string>();
}

std::uint64_t count(const Json& v, const std::string& path) {
  if (!v.is_number_unsigned()) throw ParseError(path, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

Complex scalar(const Json& v, const std::string& path) {
  if (v.is_number()) return Complex(v.get<double>(), 0.0);
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return Complex(v[0].get<double>(), v[1].get<double>());
  }
  throw ParseError(path, "expected a real or a [re, im] pair");
}

Matrix matrix(const Json& v, std::size_t dim, const std::string& path) {
  if (!v.is_array() || v.size() != dim) {
    throw ParseError(path, "expected " + std::to_string(dim) + " rows");
  }
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix m(d, d);
  for (std::size_t i = 0; i < dim; ++i) {
    const Json& row = v[i];
    if (!row.is_array() || row.size() != dim) {
      throw ParseError(child(path, i), "expected " + std::to_string(dim) + " entries");
    }
    for (std::size_t j = 0; j < dim; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          scalar(row[j], child(child(path, i), j));
    }
  }
  return m;
}

Vector amplitudes(const Json& v, std::size_t dim, const std::string& path) {
  if (!v.is_array() || v.size() != dim) {
    throw ParseError(path, "expected " + std::to_string(dim) + " amplitudes");
  }
  Vector out(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    out(static_cast<Eigen::Index>(i)) = scalar(v[i], child(path, i));
  }
  return out;
}

// An operator given either as "matrix" or as "ket" inside `obj`.
PositiveOperator positive(const Json& obj, std::size_t dim, const std::string& path) {
  const bool has_matrix = obj.contains("matrix");
  const bool has_ket = obj.contains("ket");
  if (has_matrix == has_ket) throw ParseError(path, "give exactly one of 'matrix' or 'ket'");
  if (has_ket) {
    return projector(StateVector::normalized(amplitudes(obj["ket"], dim, child(path, "ket"))));
  }
  return PositiveOperator(HermitianOperator(matrix(obj["matrix"], dim, child(path, "matrix"))));
}

DensityOperator state(const Json& obj, std::size_t dim, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path, "expected an object");
  return DensityOperator(positive(obj, dim, path));
}

std::vector<OutcomeLabel> labels(const Json& v, const std::string& path) {
  if (!v.is_array()) throw ParseError(path, "expected a list of labels");
  std::vector<OutcomeLabel> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(text(v[i], child(path, i)));
  return out;
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  const auto end = text.begin() + static_cast<std::ptrdiff_t>(std::min(byte, text.size()));
  return 1 + static_cast<std::size_t>(std::count(text.begin(), end, '\n'));
}

}  // namespace

ScenarioFile parse_scenario(const std::string& source) {
  Json doc;
  try {
    doc = Json::parse(source);
  } catch (const Json::parse_error& e) {
    throw ParseError("line " + std::to_string(line_of(source, e.byte == 0 ? 0 : e.byte - 1)),
                     e.what());
  }
  if (!doc.is_object()) throw ParseError("/", "expected a top-level object");

  static const char* const known[] = {"dimension", "state",   "ensemble", "procedure",
                                      "recorded",  "observed", "samples", "seed",
                                      "analytic_offset_sigmas"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      throw ParseError("/" + key, "unknown field");
    }
  }

  ScenarioFile out;
  out.dimension = count(require(doc, "", "dimension"), "/dimension");
  if (out.dimension == 0) throw ParseError("/dimension", "must be at least 1");
  const std::size_t d = out.dimension;

  if (doc.contains("state") && doc.contains("ensemble")) {
    throw ParseError("/", "give at most one of 'state' or 'ensemble'");
  }
  if (doc.contains("state")) {
    out.ensemble = PreparationEnsemble::single("state", state(doc["state"], d, "/state"));
  } else if (doc.contains("ensemble")) {
    const Json& list = doc["ensemble"];
    if (!list.is_array() || list.empty()) throw ParseError("/ensemble", "expected a non-empty list");
    std::vector<Preparation> entries;
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string path = child("/ensemble", k);
      const Json& item = list[k];
      entries.push_back(Preparation{text(require(item, path, "label"), child(path, "label")),
                                    number(require(item, path, "prior"), child(path, "prior")),
                                    state(item, d, path)});
    }
    out.ensemble = PreparationEnsemble(std::move(entries));
  }

  if (doc.contains("procedure")) {
    const Json& list = doc["procedure"];
    if (!list.is_array() || list.empty()) {
      throw ParseError("/procedure", "expected a non-empty list");
    }
    std::vector<Outcome> outcomes;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = child("/procedure", i);
      const Json& item = list[i];
      outcomes.push_back(Outcome{text(require(item, path, "label"), child(path, "label")),
                                 positive(item, d, path)});
    }
    out.procedure = MeasurementProcedure(std::move(outcomes));
  }

  if (doc.contains("recorded")) {
    out.recorded = labels(doc["recorded"], "/recorded");
    if (out.recorded.empty()) throw ParseError("/recorded", "expected at least one label");
    for (std::size_t i = 0; i < out.recorded.size(); ++i) {
      if (!out.procedure || !out.procedure->contains(out.recorded[i])) {
        throw ParseError(child("/recorded", i), "not a procedure outcome");
      }
    }
  }
  if (doc.contains("observed")) {
    out.observed = text(doc["observed"], "/observed");
    if (!out.procedure || !out.procedure->contains(*out.observed)) {
      throw ParseError("/observed", "not a procedure outcome");
    }
  }
  if (doc.contains("samples")) {
    out.samples = count(doc["samples"], "/samples");
    if (*out.samples == 0) throw ParseError("/samples", "must be at least 1");
  }
  if (doc.contains("seed")) out.seed = count(doc["seed"], "/seed");
  if (doc.contains("analytic_offset_sigmas")) {
    out.analytic_offset_sigmas =
        number(doc["analytic_offset_sigmas"], "/analytic_offset_sigmas");
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace qprob::cli
