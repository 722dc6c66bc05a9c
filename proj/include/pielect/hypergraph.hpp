// Copyright 2026 The pielect Authors
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

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "pielect/name.hpp"

namespace pielect {

struct Edge {
  // Nodes connected by the edge.
  std::set<std::size_t> type;
  // Set for names that can only travel as values and never serve as channels.
  bool value = false;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Hypergraph {
  std::set<std::size_t> nodes;
  std::map<Name, Edge> edges;

  // Unordered node pairs {a, b}, a < b, sharing at least one edge.
  std::set<std::pair<std::size_t, std::size_t>> connected_pairs(bool ignore_value_edges = false) const;
  bool connected(std::size_t a, std::size_t b, bool ignore_value_edges = false) const;

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;
};

// Throws DomainError if an edge type leaves the node set or there are no nodes.
void validate(const Hypergraph& h);

// `node <i>` lines, then `edge <name>: <i,j,...> [value]` lines.
std::string format_hypergraph(const Hypergraph& h);
Hypergraph parse_hypergraph(const std::string& text);

}  // namespace pielect
