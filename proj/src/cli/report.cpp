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


#include "qprob/cli/report.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "qprob/errors.hpp"

#ifndef QPROB_VERSION
#define QPROB_VERSION "0.0.0"
#endif

namespace qprob::cli {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw InternalConsistencyError("SHA-256 digest failed");
  }
  static const char* const hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

std::string format_number(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", x);
  return buffer;
}

const char* version() { return QPROB_VERSION; }

std::string render_human(const Report& r) {
  std::ostringstream os;
  os << "qprob " << r.version << "  " << r.command << "\n";
  os << "input sha256: " << r.input_digest << "\n";
  for (const Table& t : r.tables) {
    os << "\n" << t.title << "\n";
    std::vector<std::size_t> width(t.header.size(), 0);
    for (std::size_t c = 0; c < t.header.size(); ++c) width[c] = t.header[c].size();
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) {
        width[c] = std::max(width[c], row[c].size());
      }
    }
    auto emit = [&](const std::vector<std::string>& cells) {
      for (std::size_t c = 0; c < cells.size(); ++c) {
        os << "  " << cells[c];
        if (c + 1 < cells.size()) os << std::string(width[c] - cells[c].size(), ' ');
      }
      os << "\n";
    };
    emit(t.header);
    std::vector<std::string> rule;
    for (std::size_t w : width) rule.push_back(std::string(w, '-'));
    emit(rule);
    for (const auto& row : t.rows) emit(row);
  }
  if (!r.notes.empty()) os << "\n";
  for (const std::string& n : r.notes) os << n << "\n";
  os << "\ntolerances: hermitian=" << format_number(r.tolerances.hermitian)
     << " positive=" << format_number(r.tolerances.positive)
     << " trace=" << format_number(r.tolerances.trace)
     << " denominator=" << format_number(r.tolerances.denominator) << "\n";
  return os.str();
}

std::string render_machine(const Report& r) {
  nlohmann::ordered_json doc;
  doc["command"] = r.command;
  doc["input_digest"] = {{"algorithm", "sha256"}, {"hex", r.input_digest}};
  doc["results"] = r.results;
  doc["tolerances"] = {{"hermitian", r.tolerances.hermitian},
                       {"positive", r.tolerances.positive},
                       {"trace", r.tolerances.trace},
                       {"denominator", r.tolerances.denominator}};
  doc["version"] = r.version;
  return doc.dump(2) + "\n";
}

}  // namespace qprob::cli
