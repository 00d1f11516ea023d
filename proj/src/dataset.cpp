//
// Copyright 2026 The puffercal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "puffercal/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "puffercal/errors.hpp"

namespace puffercal {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

bool parse_real(const std::string& token, double* out) {
  if (token.empty()) return false;
  const char* begin = token.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end != begin + token.size()) return false;
  if (!std::isfinite(v)) return false;
  *out = v;
  return true;
}

}  // namespace

int CsvTable::column_index(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) {
    throw DataError("column '" + name + "' not found in CSV header");
  }
  return static_cast<int>(it - columns.begin());
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open CSV file: " + path);
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError("CSV file is empty: " + path);
  }
  table.columns = split_csv_line(line);
  std::size_t row_number = 1;  // header is row 1
  while (std::getline(in, line)) {
    ++row_number;
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != table.columns.size()) {
      throw DataError(path + ": row " + std::to_string(row_number) + " has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(table.columns.size()));
    }
    table.rows.push_back(std::move(fields));
  }
  return table;
}

std::string format_double(double v) {
  char buf[32];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

GroupedDataset load_dataset(const DatasetSpec& spec) {
  GroupedDataset data;
  data.table = read_csv(spec.path);
  data.secret_index = data.table.column_index(spec.secret_column);
  data.value_index = data.table.column_index(spec.value_column);

  const std::set<std::string> allow(spec.secret_values.begin(),
                                    spec.secret_values.end());
  data.values.reserve(data.table.rows.size());
  for (std::size_t r = 0; r < data.table.rows.size(); ++r) {
    const auto& row = data.table.rows[r];
    double v = 0.0;
    if (!parse_real(row[data.value_index], &v)) {
      throw DataError(spec.path + ": row " + std::to_string(r + 2) +
                      ": value '" + row[data.value_index] +
                      "' in column '" + spec.value_column +
                      "' does not parse as a real number");
    }
    data.values.push_back(v);
    const std::string& secret = row[data.secret_index];
    if (allow.empty() || allow.count(secret) > 0) {
      data.groups[secret].push_back(v);
    }
  }

  for (const auto& pair : spec.pairs) {
    for (const std::string* s : {&pair.secret_i, &pair.secret_j}) {
      if (data.groups.find(*s) == data.groups.end()) {
        throw DataError("secret '" + *s +
                        "' from a discriminative pair does not appear in the "
                        "data" +
                        (allow.empty() ? "" : " (or is not in the allow-list)"));
      }
    }
  }
  return data;
}

std::string table_with_values_csv(const CsvTable& table, int value_index,
                                  const std::vector<double>& values) {
  if (values.size() != table.rows.size()) {
    throw DomainError("table_with_values_csv: row count mismatch");
  }
  std::ostringstream out;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out << ',';
    out << table.columns[c];
  }
  out << '\n';
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      if (static_cast<int>(c) == value_index) {
        out << format_double(values[r]);
      } else {
        out << row[c];
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace puffercal
