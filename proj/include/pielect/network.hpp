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
#include <vector>

#include "pielect/hypergraph.hpp"
#include "pielect/process.hpp"
#include "pielect/semantics.hpp"
#include "pielect/syntax.hpp"

namespace pielect {

// Globally restricted names and an ordered vector of components. The
// constructor enforces the bound-names convention by renaming clashing binders.
class Network {
 public:
  Network(std::vector<Name> restricted, std::vector<Process> components);

  const std::vector<Name>& restricted() const { return restricted_; }
  const std::vector<Process>& components() const { return components_; }
  std::size_t size() const { return components_.size(); }
  const Process& operator[](std::size_t i) const { return components_.at(i); }

  bool is_restricted(const Name& n) const;
  // Union of the components' free names, restricted ones included.
  NameSet component_free_names() const;
  // Free names of the whole network.
  NameSet free_names() const;
  NameSet all_names() const;
  // new x0 in new x1 in ... (P0 | P1 | ...).
  Process as_process() const;

  friend bool operator==(const Network& a, const Network& b) {
    return a.restricted_ == b.restricted_ && a.components_ == b.components_;
  }

 private:
  std::vector<Name> restricted_;
  std::vector<Process> components_;
};

// `net k=<K> restrict=<a,b>` then `comp <i>: <term>` lines.
std::string format_network(const Network& n);
Network parse_network(const std::string& text);

// α-canonical state key: binder indices, used restricted names numbered by
// first occurrence, unused ones dropped. Component order is kept.
std::string canonical_key(const Network& n);

SublanguageProfile classify(const Network& n);

// Nodes are component indices; edges are the free names of the components other than `out`.
// Value tags are set only for networks in the value-passing fragment.
Hypergraph hypergraph_of(const Network& n);

struct LocalMove {
  std::size_t component;
  // Communication partners report their own input or output.
  ActionLabel label;
  Process before;
  Process after;
  DerivationPtr derivation;
};

struct NetStep {
  ActionLabel label;
  // Sorted; one or two indices.
  std::vector<std::size_t> active;
  // Sorted by component.
  std::vector<LocalMove> local;
  // Names hoisted to the top level by a Close communication.
  std::vector<Name> new_restrictions;
  // Restricted names extruded to the environment by a bound output.
  std::vector<Name> opened;
  std::string rule;

  bool is_communication() const { return active.size() == 2; }
  const LocalMove* move_of(std::size_t component) const;
};

struct Successor {
  NetStep step;
  Network next;
};

// known = free names of the network, `out` and `extra`.
NameUniverse network_universe(const Network& n, std::size_t fresh_budget = 1, const NameSet& extra = {});

// Single moves first (by component), then communications by component pair.
std::vector<Successor> enumerate_net_steps(const Network& n, const NameUniverse& u,
                                           const TransitionOptions& opts = {});

struct Computation {
  explicit Computation(Network start, std::size_t fresh_budget = 1, NameSet extra_known = {});

  const Network& start() const { return states.front(); }
  const Network& end() const { return states.back(); }
  std::size_t length() const { return steps.size(); }
  // Universe used to enumerate successors of states[i].
  NameUniverse universe_at(std::size_t i) const;
  void push(const Successor& s);

  std::size_t fresh_budget;
  NameSet extra_known;
  std::vector<NetStep> steps;
  // states[i + 1] follows steps[i].
  std::vector<Network> states;
};

struct ProjectionEntry {
  std::size_t step;
  Process before;
  ActionLabel label;
  Process after;
};

struct Projection {
  std::size_t component;
  std::vector<ProjectionEntry> steps;
};

// Throws DomainError if `i` is out of range.
Projection project(const Computation& c, std::size_t i);

std::string format_step(std::size_t index, const NetStep& step, const Network& next);
// Header, start network and one line per step. notes[n] lines follow the n-th step
// (notes[0] precede the first).
std::string format_trace(const Computation& c, const std::map<std::size_t, std::vector<std::string>>& notes = {});
// Replays the recorded steps; throws ParseError if a step cannot be matched.
Computation read_trace(const std::string& text);
// Re-enumerates every step of `c` and checks it is reproduced name for name.
bool replays(const Computation& c);

}  // namespace pielect
