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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace bnscore {

struct Arc {
  int from = 0;
  int to = 0;

  friend bool operator==(const Arc& a, const Arc& b) {
    return a.from == b.from && a.to == b.to;
  }
  friend bool operator<(const Arc& a, const Arc& b) {
    return std::pair(a.from, a.to) < std::pair(b.from, b.to);
  }
};

// Directed acyclic graph over named variables.  Immutable after
// construction: edits go through the with_* copies, so instances are safe
// to share across threads without coordination.
//
// Parent sets are kept sorted ascending; together with the name list this
// gives every graph a canonical form, which the score cache and the JSON
// encoding rely on.
class Dag {
 public:
  // Empty graph over the given variables.  Names must be unique and
  // non-empty.
  explicit Dag(std::vector<std::string> names);

  // Validates indices, self-loops, duplicates, and acyclicity.
  Dag(std::vector<std::string> names, const std::vector<Arc>& arcs);

  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<int>& parents(int node) const;

  bool has_arc(int from, int to) const;
  int arc_count() const;
  std::vector<Arc> arcs() const;  // sorted by (from, to)

  Dag with_arc(int from, int to) const;       // structure error on cycle
  Dag without_arc(int from, int to) const;    // usage error if absent
  Dag with_arc_reversed(int from, int to) const;

  // Directed reachability from -> to (length >= 1).
  bool path_exists(int from, int to) const;

  // Adjacency bitmask usable as a hash key; only defined for n <= 8.
  std::uint64_t adjacency_key() const;

  friend bool operator==(const Dag& a, const Dag& b) {
    return a.names_ == b.names_ && a.parents_ == b.parents_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<int>> parents_;

  void check_node(int node) const;
};

// Kahn's algorithm with lowest-index-first tie-breaking, so the result is
// deterministic.  Throws a structure error if a cycle is present.
std::vector<int> topological_order(const Dag& dag);

// Unordered adjacencies {i, j} with i < j, sorted.
std::vector<std::pair<int, int>> skeleton(const Dag& dag);

// Triples (i, j, k), i < k, with arcs i->j and k->j and no arc between
// i and k in either direction.  Sorted; each v-structure appears once.
std::vector<std::tuple<int, int, int>> v_structures(const Dag& dag);

// Verma-Pearl criterion: same skeleton and same v-structures.  The two
// graphs must be over identical name lists.
bool independence_equivalent(const Dag& d1, const Dag& d2);

// An arc is covered when removing it would leave its endpoints with
// identical parent sets.  The arc must exist.
bool is_covered(const Dag& dag, const Arc& arc);

// Shortest sequence of covered-arc reversals transforming d1 into d2,
// found by breadth-first search over the reversal graph; nullopt when d2
// is unreachable.  Each returned arc is oriented as it appears in the
// graph at its turn.  BFS is exact and adequate at desk scale (n <= 8).
std::optional<std::vector<Arc>> covered_reversal_sequence(const Dag& d1, const Dag& d2);

// Complete DAG in which order[p] is a parent of order[q] whenever p < q.
Dag complete_dag(const std::vector<std::string>& names, std::span<const int> order);

}  // namespace bnscore
