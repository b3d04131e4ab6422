// Copyright 2026 The mstl Authors.
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
#include <vector>

namespace mstl {

// Shortest decimal representation that round-trips; keeps file output
// byte-stable across runs.
std::string format_double(double v);

// Splits one CSV line on commas; no quoting, a trailing '\r' is stripped.
std::vector<std::string> split_csv_line(const std::string& line);

// Parses a full double token; throws std::runtime_error mentioning
// `context` when the token is empty, malformed or non-finite.
double parse_double_token(const std::string& token, const std::string& context);

// Opens `path` for writing, throws std::runtime_error on failure.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void raw(const std::string& line);  // writes line + '\n'
  void row(const std::vector<std::string>& cells);

 private:
  void* file_;
  std::string path_;
};

}  // namespace mstl
