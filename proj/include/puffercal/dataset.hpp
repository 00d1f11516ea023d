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

#ifndef PUFFERCAL_DATASET_HPP
#define PUFFERCAL_DATASET_HPP

#include <map>
#include <string>
#include <vector>

#include "puffercal/calibrate.hpp"

namespace puffercal {

// Comma-separated, first row is header, UTF-8. Rows that fail numeric parse
// are rejected with their 1-based row number: silently dropping rows would
// bias the fitted priors.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  // Index of a named column; DataError naming the column when absent.
  int column_index(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);
std::string format_double(double v);  // shortest round-trip representation

struct DatasetSpec {
  std::string path;
  std::string secret_column;
  std::string value_column;
  std::vector<std::string> secret_values;  // optional allow-list
  std::vector<DiscriminativePair> pairs;
};

// The value column grouped by secret, with the parsed numeric column kept in
// row order for the privatization pass.
struct GroupedDataset {
  CsvTable table;
  int secret_index = -1;
  int value_index = -1;
  std::vector<double> values;                         // one per row
  std::map<std::string, std::vector<double>> groups;  // secret -> samples
};

// Loads and validates a dataset against the spec: columns exist, every value
// parses as a real (errors carry row numbers), every pair's secrets appear in
// the data or the allow-list.
GroupedDataset load_dataset(const DatasetSpec& spec);

// The table with the value column replaced, serialized back to CSV. All other
// cells are written back byte-identically.
std::string table_with_values_csv(const CsvTable& table, int value_index,
                                  const std::vector<double>& values);

}  // namespace puffercal

#endif  // PUFFERCAL_DATASET_HPP
