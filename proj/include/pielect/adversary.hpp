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
#include <vector>

#include "pielect/network.hpp"
#include "pielect/random.hpp"
#include "pielect/symmetry.hpp"

namespace pielect {

enum class AdversaryMode {
  // One-orbit automorphism of a separate-choice network.
  Pis,
  // Well-balanced automorphism without intra-orbit edges, π_I network.
  Pii,
  // As Pii, for a CCS-style network with value passing only.
  Ccs,
};

AdversaryMode parse_adversary_mode(const std::string& text);
std::string mode_name(AdversaryMode m);

enum class RoundCase { TauMove, FreeOutput, BoundOutput, InputMove, ComCommunication, CloseCommunication };

std::string round_case_name(RoundCase c);

struct AdversaryOptions {
  std::size_t fresh_budget = 1;
  // Pick the first step at random instead of the least one.
  std::optional<std::uint64_t> seed;
  // Prefer steps of component (round mod k) and onwards.
  bool fair = false;
  // Cap on candidate steps tried while closing one round.
  std::size_t search_limit = 20000;
};

struct AdversaryRound {
  std::size_t index = 0;
  RoundCase kind = RoundCase::TauMove;
  std::vector<NetStep> steps;
  // states[0] is the network before the round.
  std::vector<Network> states;
  Automorphism before;
  Automorphism after;
  // One α-equivalence witness per node.
  std::vector<std::string> certificate;

  std::string certificate_line() const;
};

// Checks the mode's preconditions. Throws ModeMismatch or PreconditionError.
void check_adversary_preconditions(const Network& n, const Automorphism& a, AdversaryMode mode);

// Replays the first available non-`out` step around the orbits of `a` so the
// successor is symmetric again. Throws NoStepAvailable when nothing can move
// and SymmetryBroken if the replay cannot be certified.
AdversaryRound symmetric_round(const Network& n, const Automorphism& a, AdversaryMode mode,
                               const AdversaryOptions& opts = {}, std::size_t round_index = 0, Rng* rng = nullptr);

struct AdversaryRun {
  Computation computation;
  std::vector<AdversaryRound> rounds;
  bool stuck = false;
  // Certificate lines keyed by the number of steps they follow.
  std::map<std::size_t, std::vector<std::string>> notes;
  Automorphism final_automorphism;
};

AdversaryRun run_adversary(const Network& n, const Automorphism& a, std::size_t rounds, AdversaryMode mode,
                           const AdversaryOptions& opts = {});

struct ConnectivityViolation {
  std::size_t step;
  std::size_t a;
  std::size_t b;
  // An edge joining a and b after the step.
  Name edge;
  bool intra_orbit;
};

// Node pairs that share an edge after a step but shared none before it.
std::vector<ConnectivityViolation> connectivity_monitor(const Computation& c, const Automorphism& a,
                                                        bool ignore_value_edges = false);

}  // namespace pielect
