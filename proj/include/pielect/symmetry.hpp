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
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pielect/hypergraph.hpp"
#include "pielect/network.hpp"
#include "pielect/syntax.hpp"

namespace pielect {

// A pair of node and edge permutations.
struct Automorphism {
  std::map<std::size_t, std::size_t> nodes;
  NameMap edges;

  std::size_t node(std::size_t n) const;
  // Image of a name: `out` is fixed, edges use the edge map, numerals that
  // are nodes but not edges follow the node map. Throws DomainError otherwise.
  Name apply(const Name& n) const;
  bool is_identity() const;

  friend bool operator==(const Automorphism&, const Automorphism&) = default;
  friend bool operator<(const Automorphism& a, const Automorphism& b) {
    return std::tie(a.nodes, a.edges) < std::tie(b.nodes, b.edges);
  }
};

Automorphism identity_automorphism(const Hypergraph& h);
// a after b. Throws DomainError if the domains differ.
Automorphism compose(const Automorphism& a, const Automorphism& b);
Automorphism inverse(const Automorphism& a);
Automorphism power(const Automorphism& a, std::size_t e);

struct OrbitPartition {
  // Sorted by least element; each orbit lists n, σ(n), σ²(n), ...
  std::vector<std::vector<std::size_t>> orbits;
  // Least h > 0 with σ^h = id, over nodes and edges.
  std::size_t order = 1;
};

OrbitPartition orbits(const Automorphism& a);
bool is_well_balanced(const Automorphism& a);

bool is_automorphism(const Hypergraph& h, const Automorphism& a);
// Also requires numerals to follow the node map and restricted names to stay restricted.
bool is_network_automorphism(const Network& n, const Automorphism& a);

// Brute force over node permutations with edge completion. Throws BudgetError
// above `max_nodes` nodes or `max_results` automorphisms.
std::vector<Automorphism> all_automorphisms(const Hypergraph& h, std::size_t max_nodes = 8,
                                            std::size_t max_results = 200000);
std::vector<Automorphism> network_automorphisms(const Network& n, std::size_t max_nodes = 8);

// Cycle notation for nodes then the non-fixed edge pairs, e.g. "(0 1) {x0->x1,x1->x0}".
std::string format_automorphism(const Automorphism& a);
// Missing nodes and edges of `h` are fixed.
Automorphism parse_automorphism(const std::string& text, const Hypergraph& h);

Process sigma_rename(const Automorphism& a, const Process& p);
// Bound output objects are left alone.
ActionLabel sigma_rename(const Automorphism& a, const ActionLabel& mu);

// P_σ(i) α-equivalent to σ(P_i) for every node. Throws DomainError if `a` is not a network automorphism.
bool is_symmetric(const Network& n, const Automorphism& a);
bool is_fully_symmetric(const Network& n);
// Per node i: canonical form of σ(P_i), equal to that of P_σ(i) when symmetric.
std::vector<std::string> symmetry_witnesses(const Network& n, const Automorphism& a);

// Keeps the entries of `a` that are edges of `h`.
Automorphism restrict_to(const Automorphism& a, const Hypergraph& h);

// Maps each y_i to y_σ(i) and agrees with `a` on the other edges of `new_graph`.
// Throws PreconditionError when the pairs do not follow the orbit structure.
Automorphism extend_automorphism(const Automorphism& a, const std::vector<std::pair<std::size_t, Name>>& fresh_pairs,
                                 const Hypergraph& new_graph);

// Moves component i to perm[i], renaming numerals accordingly.
Network relabel_network(const Network& n, const std::vector<std::size_t>& perm);
Automorphism relabel_automorphism(const Automorphism& a, const std::vector<std::size_t>& perm);

struct Quotient {
  Network network;
  // One-orbit automorphism of the quotient.
  Automorphism theta;
  // Old node index to canonical index.
  std::vector<std::size_t> relabel;
  // Number of orbits and their common size.
  std::size_t p;
  std::size_t q;
  // Numeral renaming from the original network to the quotient.
  NameMap numerals;
};

// Throws PreconditionError unless `a` is well balanced and not the identity.
Quotient orbit_quotient(const Network& n, const Automorphism& a);

}  // namespace pielect
