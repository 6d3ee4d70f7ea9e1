// Copyright 2026 The bnscore Authors
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

#include "bnscore/csv.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "bnscore/error.hpp"

namespace bnscore {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(cell);
      cell.clear();
    } else {
      cell.push_back(ch);
    }
  }
  cells.push_back(cell);
  return cells;
}

struct RawTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

RawTable parse_table(const std::string& text) {
  RawTable table;
  std::istringstream stream(text);
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(stream, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_number == 1) {
      table.header = split_line(line);
      continue;
    }
    if (line.empty()) continue;  // blank lines carry no row
    std::vector<std::string> cells = split_line(line);
    require(cells.size() == table.header.size(), ErrorKind::schema,
            "row " + std::to_string(line_number - 1) + " has " +
                std::to_string(cells.size()) + " cells, expected " +
                std::to_string(table.header.size()));
    for (std::size_t c = 0; c < cells.size(); ++c) {
      require(!cells[c].empty(), ErrorKind::schema,
              "missing value at row " + std::to_string(line_number - 1) + ", column " +
                  table.header[c] + " (incomplete data is not supported)");
    }
    table.rows.push_back(std::move(cells));
  }
  require(!table.header.empty(), ErrorKind::schema, "empty file: header line required");
  std::set<std::string> seen;
  for (const auto& name : table.header) {
    require(!name.empty(), ErrorKind::schema, "header names must be non-empty");
    require(seen.insert(name).second, ErrorKind::schema, "duplicate column name: " + name);
  }
  return table;
}

}  // namespace

DiscreteDataset parse_discrete_csv(const std::string& text,
                                   const std::optional<std::vector<int>>& declared) {
  const RawTable table = parse_table(text);
  const std::size_t n = table.header.size();
  if (declared) {
    require(declared->size() == n, ErrorKind::usage,
            "declared cardinalities must match the column count");
  }

  // Per column: lexicographically ordered category -> code map.
  std::vector<std::map<std::string, int>> codes(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::set<std::string> distinct;
    for (const auto& row : table.rows) distinct.insert(row[c]);
    int next = 0;
    for (const auto& category : distinct) codes[c][category] = next++;
  }

  std::vector<int> cards(n);
  for (std::size_t c = 0; c < n; ++c) {
    const int seen = static_cast<int>(codes[c].size());
    if (declared) {
      const int r = (*declared)[c];
      require(seen <= r, ErrorKind::schema,
              "column " + table.header[c] + " has " + std::to_string(seen) +
                  " categories but " + std::to_string(r) + " were declared");
      cards[c] = r;
    } else {
      cards[c] = std::max(2, seen);
    }
  }

  std::vector<int> cells;
  cells.reserve(table.rows.size() * n);
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < n; ++c) cells.push_back(codes[c].at(row[c]));
  }
  return DiscreteDataset(DiscreteScheme(std::move(cards)), table.header, std::move(cells));
}

GaussianDataset parse_continuous_csv(const std::string& text) {
  const RawTable table = parse_table(text);
  std::vector<double> cells;
  cells.reserve(table.rows.size() * table.header.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    for (std::size_t c = 0; c < table.header.size(); ++c) {
      const std::string& cell = table.rows[r][c];
      errno = 0;
      char* end = nullptr;
      const double value = std::strtod(cell.c_str(), &end);
      require(end == cell.c_str() + cell.size() && errno == 0, ErrorKind::schema,
              "cannot parse '" + cell + "' as a number at row " + std::to_string(r + 1) +
                  ", column " + table.header[c]);
      require(std::isfinite(value), ErrorKind::schema,
              "non-finite value at row " + std::to_string(r + 1) + ", column " +
                  table.header[c]);
      cells.push_back(value);
    }
  }
  return GaussianDataset(table.header, std::move(cells));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorKind::io, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorKind::io, "cannot write " + path);
  out << content;
  require(out.good(), ErrorKind::io, "write failed for " + path);
}

DiscreteDataset load_discrete_csv(const std::string& path,
                                  const std::optional<std::vector<int>>& declared) {
  return parse_discrete_csv(read_file(path), declared);
}

GaussianDataset load_continuous_csv(const std::string& path) {
  return parse_continuous_csv(read_file(path));
}

namespace {

std::vector<std::size_t> column_permutation(const std::vector<std::string>& from,
                                            const std::vector<std::string>& to) {
  require(from.size() == to.size(), ErrorKind::usage,
          "datasets and prior disagree on the variable count");
  std::vector<std::size_t> perm(to.size());
  for (std::size_t i = 0; i < to.size(); ++i) {
    const auto it = std::find(from.begin(), from.end(), to[i]);
    require(it != from.end(), ErrorKind::usage, "variable " + to[i] + " missing from data");
    perm[i] = static_cast<std::size_t>(it - from.begin());
  }
  return perm;
}

}  // namespace

DiscreteDataset reorder_columns(const DiscreteDataset& data,
                                const std::vector<std::string>& names) {
  if (data.names() == names) return data;
  const auto perm = column_permutation(data.names(), names);
  std::vector<int> cards(names.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    cards[i] = data.scheme().cardinality(static_cast<int>(perm[i]));
  }
  std::vector<int> cells;
  cells.reserve(data.case_count() * names.size());
  for (std::size_t l = 0; l < data.case_count(); ++l) {
    const auto row = data.row(l);
    for (std::size_t i = 0; i < perm.size(); ++i) cells.push_back(row[perm[i]]);
  }
  return DiscreteDataset(DiscreteScheme(std::move(cards)), names, std::move(cells));
}

GaussianDataset reorder_columns(const GaussianDataset& data,
                                const std::vector<std::string>& names) {
  if (data.names() == names) return data;
  const auto perm = column_permutation(data.names(), names);
  std::vector<double> cells;
  cells.reserve(data.case_count() * names.size());
  for (std::size_t l = 0; l < data.case_count(); ++l) {
    const auto row = data.row(l);
    for (std::size_t i = 0; i < perm.size(); ++i) cells.push_back(row[perm[i]]);
  }
  return GaussianDataset(names, std::move(cells));
}

DiscreteDataset with_scheme(const DiscreteDataset& data, DiscreteScheme scheme) {
  require(scheme.size() == data.scheme().size(), ErrorKind::usage,
          "replacement scheme has the wrong dimension");
  for (std::size_t l = 0; l < data.case_count(); ++l) {
    const auto row = data.row(l);
    for (int c = 0; c < scheme.size(); ++c) {
      require(row[static_cast<std::size_t>(c)] < scheme.cardinality(c), ErrorKind::schema,
              "column " + data.names()[static_cast<std::size_t>(c)] +
                  " has more categories than the prior declares");
    }
  }
  std::vector<int> cells;
  cells.reserve(data.case_count() * static_cast<std::size_t>(scheme.size()));
  for (std::size_t l = 0; l < data.case_count(); ++l) {
    const auto row = data.row(l);
    cells.insert(cells.end(), row.begin(), row.end());
  }
  return DiscreteDataset(std::move(scheme), data.names(), std::move(cells));
}

}  // namespace bnscore
