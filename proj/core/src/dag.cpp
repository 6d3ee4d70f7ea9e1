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

#include "bnscore/dag.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

#include "bnscore/error.hpp"

namespace bnscore {

namespace {

std::string error_arc(int from, int to) {
  return std::to_string(from) + "->" + std::to_string(to);
}

}  // namespace

Dag::Dag(std::vector<std::string> names) : names_(std::move(names)) {
  std::set<std::string> seen;
  for (const auto& name : names_) {
    require(!name.empty(), ErrorKind::usage, "variable names must be non-empty");
    require(seen.insert(name).second, ErrorKind::usage,
            "duplicate variable name: " + name);
  }
  parents_.resize(names_.size());
}

Dag::Dag(std::vector<std::string> names, const std::vector<Arc>& arcs)
    : Dag(std::move(names)) {
  const int n = size();
  for (const Arc& arc : arcs) {
    require(arc.from >= 0 && arc.from < n && arc.to >= 0 && arc.to < n,
            ErrorKind::usage, "arc index out of range: " + error_arc(arc.from, arc.to));
    require(arc.from != arc.to, ErrorKind::usage,
            "self-loop not allowed: " + error_arc(arc.from, arc.to));
    auto& pa = parents_[static_cast<std::size_t>(arc.to)];
    require(std::find(pa.begin(), pa.end(), arc.from) == pa.end(), ErrorKind::usage,
            "duplicate arc: " + error_arc(arc.from, arc.to));
    pa.push_back(arc.from);
  }
  for (auto& pa : parents_) std::sort(pa.begin(), pa.end());
  topological_order(*this);  // throws on a cycle
}

void Dag::check_node(int node) const {
  require(node >= 0 && node < size(), ErrorKind::usage,
          "node index out of range: " + std::to_string(node));
}

const std::vector<int>& Dag::parents(int node) const {
  check_node(node);
  return parents_[static_cast<std::size_t>(node)];
}

bool Dag::has_arc(int from, int to) const {
  check_node(from);
  check_node(to);
  const auto& pa = parents_[static_cast<std::size_t>(to)];
  return std::binary_search(pa.begin(), pa.end(), from);
}

int Dag::arc_count() const {
  int count = 0;
  for (const auto& pa : parents_) count += static_cast<int>(pa.size());
  return count;
}

std::vector<Arc> Dag::arcs() const {
  std::vector<Arc> out;
  out.reserve(static_cast<std::size_t>(arc_count()));
  for (int to = 0; to < size(); ++to) {
    for (int from : parents_[static_cast<std::size_t>(to)]) out.push_back({from, to});
  }
  std::sort(out.begin(), out.end());
  return out;
}

Dag Dag::with_arc(int from, int to) const {
  check_node(from);
  check_node(to);
  require(from != to, ErrorKind::usage, "self-loop not allowed");
  require(!has_arc(from, to), ErrorKind::usage, "arc already present: " + error_arc(from, to));
  require(!path_exists(to, from), ErrorKind::structure,
          "adding arc would create a cycle: " + error_arc(from, to));
  Dag out = *this;
  auto& pa = out.parents_[static_cast<std::size_t>(to)];
  pa.insert(std::upper_bound(pa.begin(), pa.end(), from), from);
  return out;
}

Dag Dag::without_arc(int from, int to) const {
  require(has_arc(from, to), ErrorKind::usage, "arc not present: " + error_arc(from, to));
  Dag out = *this;
  auto& pa = out.parents_[static_cast<std::size_t>(to)];
  pa.erase(std::find(pa.begin(), pa.end(), from));
  return out;
}

Dag Dag::with_arc_reversed(int from, int to) const {
  return without_arc(from, to).with_arc(to, from);
}

bool Dag::path_exists(int from, int to) const {
  check_node(from);
  check_node(to);
  // children lists are not stored, so walk the parent sets backwards from
  // `to` instead.
  std::vector<bool> visited(static_cast<std::size_t>(size()), false);
  std::deque<int> queue{to};
  visited[static_cast<std::size_t>(to)] = true;
  while (!queue.empty()) {
    const int node = queue.front();
    queue.pop_front();
    for (int parent : parents_[static_cast<std::size_t>(node)]) {
      if (parent == from) return true;
      if (!visited[static_cast<std::size_t>(parent)]) {
        visited[static_cast<std::size_t>(parent)] = true;
        queue.push_back(parent);
      }
    }
  }
  return false;
}

std::uint64_t Dag::adjacency_key() const {
  require(size() <= 8, ErrorKind::capacity, "adjacency_key supports at most 8 nodes");
  std::uint64_t key = 0;
  for (int to = 0; to < size(); ++to) {
    for (int from : parents_[static_cast<std::size_t>(to)]) {
      key |= std::uint64_t{1} << (from * size() + to);
    }
  }
  return key;
}

std::vector<int> topological_order(const Dag& dag) {
  const int n = dag.size();
  std::vector<int> remaining_parents(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    remaining_parents[static_cast<std::size_t>(i)] = static_cast<int>(dag.parents(i).size());
  }
  std::set<int> ready;  // ordered, so the lowest index is emitted first
  for (int i = 0; i < n; ++i) {
    if (remaining_parents[static_cast<std::size_t>(i)] == 0) ready.insert(i);
  }
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  std::vector<bool> emitted(static_cast<std::size_t>(n), false);
  while (!ready.empty()) {
    const int node = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(node);
    emitted[static_cast<std::size_t>(node)] = true;
    for (int other = 0; other < n; ++other) {
      if (emitted[static_cast<std::size_t>(other)]) continue;
      const auto& pa = dag.parents(other);
      if (std::binary_search(pa.begin(), pa.end(), node)) {
        if (--remaining_parents[static_cast<std::size_t>(other)] == 0) ready.insert(other);
      }
    }
  }
  require(static_cast<int>(order.size()) == n, ErrorKind::structure,
          "graph contains a cycle");
  return order;
}

std::vector<std::pair<int, int>> skeleton(const Dag& dag) {
  std::vector<std::pair<int, int>> edges;
  for (const Arc& arc : dag.arcs()) {
    edges.emplace_back(std::min(arc.from, arc.to), std::max(arc.from, arc.to));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

std::vector<std::tuple<int, int, int>> v_structures(const Dag& dag) {
  std::vector<std::tuple<int, int, int>> out;
  for (int center = 0; center < dag.size(); ++center) {
    const auto& pa = dag.parents(center);
    for (std::size_t a = 0; a < pa.size(); ++a) {
      for (std::size_t b = a + 1; b < pa.size(); ++b) {
        const int i = pa[a];
        const int k = pa[b];  // i < k because parents are sorted
        if (!dag.has_arc(i, k) && !dag.has_arc(k, i)) out.emplace_back(i, center, k);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool independence_equivalent(const Dag& d1, const Dag& d2) {
  require(d1.names() == d2.names(), ErrorKind::usage,
          "independence_equivalent: graphs are over different variable sets");
  return skeleton(d1) == skeleton(d2) && v_structures(d1) == v_structures(d2);
}

bool is_covered(const Dag& dag, const Arc& arc) {
  require(dag.has_arc(arc.from, arc.to), ErrorKind::usage,
          "is_covered: arc not present: " + error_arc(arc.from, arc.to));
  const auto& pa_from = dag.parents(arc.from);
  std::vector<int> pa_to_minus;
  for (int p : dag.parents(arc.to)) {
    if (p != arc.from) pa_to_minus.push_back(p);
  }
  return pa_to_minus == pa_from;
}

std::optional<std::vector<Arc>> covered_reversal_sequence(const Dag& d1, const Dag& d2) {
  require(d1.names() == d2.names(), ErrorKind::usage,
          "covered_reversal_sequence: graphs are over different variable sets");
  require(d1.size() <= 8, ErrorKind::capacity,
          "covered_reversal_sequence supports at most 8 nodes");
  const std::uint64_t target = d2.adjacency_key();

  struct Step {
    std::uint64_t previous;
    Arc reversed;
  };
  std::unordered_map<std::uint64_t, Step> visited;
  std::unordered_map<std::uint64_t, Dag> graphs;
  std::deque<std::uint64_t> queue;

  const std::uint64_t start = d1.adjacency_key();
  visited.emplace(start, Step{start, Arc{}});
  graphs.emplace(start, d1);
  queue.push_back(start);

  while (!queue.empty()) {
    const std::uint64_t key = queue.front();
    queue.pop_front();
    if (key == target) {
      std::vector<Arc> sequence;
      for (std::uint64_t at = key; at != start; at = visited.at(at).previous) {
        sequence.push_back(visited.at(at).reversed);
      }
      std::reverse(sequence.begin(), sequence.end());
      return sequence;
    }
    const Dag& current = graphs.at(key);
    for (const Arc& arc : current.arcs()) {
      if (!is_covered(current, arc)) continue;
      Dag next = current.with_arc_reversed(arc.from, arc.to);
      const std::uint64_t next_key = next.adjacency_key();
      if (visited.contains(next_key)) continue;
      visited.emplace(next_key, Step{key, arc});
      graphs.emplace(next_key, std::move(next));
      queue.push_back(next_key);
    }
  }
  return std::nullopt;
}

Dag complete_dag(const std::vector<std::string>& names, std::span<const int> order) {
  require(order.size() == names.size(), ErrorKind::usage,
          "complete_dag: order length must match name count");
  std::vector<Arc> arcs;
  for (std::size_t q = 0; q < order.size(); ++q) {
    for (std::size_t p = 0; p < q; ++p) arcs.push_back({order[p], order[q]});
  }
  return Dag(names, arcs);
}

}  // namespace bnscore
