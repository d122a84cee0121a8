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

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qprob/tolerances.hpp"

namespace qprob::cli {

/** A titled table for the human-readable rendering. */
struct Table {
  std::string title;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  std::string command;
  /// Hex SHA-256 of the input (file bytes, or the canonical argument string).
  std::string input_digest;
  nlohmann::ordered_json results;
  Tolerances tolerances;
  std::string version;
  std::vector<Table> tables;
  /// Free-form trailing lines such as a verdict.
  std::vector<std::string> notes;
};

std::string sha256_hex(std::string_view data);

/** 12 significant digits. */
std::string format_number(double x);

std::string render_human(const Report& r);

/** Single JSON document; doubles round-trip exactly. */
std::string render_machine(const Report& r);

const char* version();

}  // namespace qprob::cli
