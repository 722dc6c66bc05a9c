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
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pielect/network.hpp"

namespace pielect {

enum class ElectionMode {
  // Every component announces exactly once, all with the same numeral.
  Strict,
  // At least one announcement and no two different ones.
  Permissive,
};

struct ExplorationBudget {
  std::size_t max_depth = 12;
  std::size_t max_states = 200000;
  std::size_t fresh_budget = 1;
  NameSet extra_known;
  ElectionMode mode = ElectionMode::Strict;
};

struct ExplorationStats {
  std::size_t states = 0;
  std::size_t edges = 0;
  std::size_t complete = 0;
  std::size_t terminal = 0;
  std::size_t frontier = 0;
  std::size_t extension_states = 0;
};

struct ElectionVerdict {
  enum class Status { Electoral, NotElectoral, Inconclusive };

  Status status = Status::Inconclusive;
  // Announced numerals over all complete states (Electoral only).
  std::set<std::uint64_t> winners;
  // divergence-lasso, conflicting-winners or missing-projection-output.
  std::string reason;
  // depth or states.
  std::string bound;
  std::optional<Computation> counterexample;
  // For a lasso: index into the counterexample where the loop starts.
  std::optional<std::size_t> loop_start;
  // A computation ending in a complete state, when one was found.
  std::optional<Computation> witness;
  ExplorationStats stats;

  std::string summary() const;
};

std::string status_name(ElectionVerdict::Status s);

ElectionVerdict check_electoral(const Network& n, const ExplorationBudget& b);

// Announcements per component, in component order then step order.
std::vector<std::pair<std::size_t, Name>> observe_winners(const Computation& c);

}  // namespace pielect
