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

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bnscore/discrete_score.hpp"
#include "bnscore/gaussian_score.hpp"

namespace bnscore {

// CSV dialect: comma separator, first line is the header, UTF-8, cells
// taken verbatim (no quoting).  Rows must be rectangular and complete.
//
// Discrete: each column's distinct strings map to codes by lexicographic
// order.  With declared cardinalities, a column showing more categories
// than declared is a schema error; otherwise the declared cardinality
// wins.  Without a declaration the cardinality is max(2, distinct count).
DiscreteDataset parse_discrete_csv(const std::string& text,
                                   const std::optional<std::vector<int>>& declared = {});
DiscreteDataset load_discrete_csv(const std::string& path,
                                  const std::optional<std::vector<int>>& declared = {});

// Continuous: every cell must parse fully as a finite double.
GaussianDataset parse_continuous_csv(const std::string& text);
GaussianDataset load_continuous_csv(const std::string& path);

// Column reordering by name; the target names must be a permutation of
// the dataset's.
DiscreteDataset reorder_columns(const DiscreteDataset& data,
                                const std::vector<std::string>& names);
GaussianDataset reorder_columns(const GaussianDataset& data,
                                const std::vector<std::string>& names);

// Replace the scheme (schema error if any cell exceeds the new
// cardinalities); used to align a loaded dataset with a prior's scheme.
DiscreteDataset with_scheme(const DiscreteDataset& data, DiscreteScheme scheme);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace bnscore
