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
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pielect/hypergraph.hpp"
#include "pielect/network.hpp"
#include "pielect/random.hpp"
#include "pielect/symmetry.hpp"

namespace pielect {

// Node indices of the four-node ring, with arithmetic modulo 4.
struct RingIndex {
  static constexpr std::size_t k = 4;
  std::size_t i;

  explicit RingIndex(std::size_t v) : i(v % k) {}
  RingIndex operator+(std::size_t d) const { return RingIndex(i + d); }
  RingIndex operator-(std::size_t d) const { return RingIndex(i + k - d % k); }
  friend bool operator==(RingIndex, RingIndex) = default;
};

struct Fixture {
  Network network;
  Automorphism automorphism;
};

// x_i!(y).out!(i) + x_{i+1}?(y).out!(i+1) over restricted x_0, x_1.
Fixture build_two_node();
// The same halves as two replicated parallel processes.
Fixture build_two_node_separate();
// The four-node ring election over restricted x_0..x_3, with the rotation.
Fixture build_ring4();
// Four-node ring in which every output argument is freshly restricted, with
// the automorphism (0 2)(1 3).
Fixture build_pii_ring();
// Four-node separate-choice network symmetric under (0 2)(1 3).
Fixture build_quotient_fixture();

// Components of the ring election, exposed for tests.
Process ring4_component(std::size_t i);
Process ring4_q(std::size_t i, std::size_t k);

std::map<std::string, Hypergraph> build_figure_hypergraphs();

// Names bound by each component's outermost restriction in the ring.
std::vector<Name> ring4_own_names(const Network& start);

struct RingRun {
  Computation computation;
  bool terminated = false;
  std::vector<std::pair<std::size_t, Name>> announcements;
  std::optional<std::uint64_t> winner;
  // Each component received the others' names in the order i-1, i-2, i-3.
  bool order_ok = false;
  std::size_t dominations = 0;
};

// Uniformly random scheduler until no step is left or `max_steps`.
RingRun run_ring4(std::uint64_t seed, std::size_t max_steps = 2000);
RingRun run_ring4(Rng& rng, std::size_t max_steps = 2000);

// True if every component received its neighbours' names in ring order.
bool ring4_arrival_order_ok(const Computation& c);
// Inputs on non-x channels carrying non-y values minus outputs on the node's
// own name, for component `i`.
std::size_t ring4_dominations(const Computation& c, std::size_t i);

// Runs the first phase only: steps on the y names are never taken.
Computation drive_ring4_phase1(const Network& start);

// Picks successors at random until the network is stuck or `max_steps`.
Computation random_run(const Network& start, Rng& rng, std::size_t max_steps);

}  // namespace pielect
