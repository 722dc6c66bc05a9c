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

#include <functional>
#include <vector>

#include "pielect/semantics.hpp"

namespace pielect::detail {

// A transition whose input value is not yet chosen. Outputs and silent moves
// carry their derivation; inputs carry an instantiation function that returns
// nullptr when a side condition rejects the value.
struct Proto {
  ActionLabel::Kind kind;
  Name channel;
  Name object;
  std::vector<int> path;
  DerivationPtr deriv;
  std::function<DerivationPtr(const Name&)> instantiate;
};

struct ProtoContext {
  // Supplies fresh binders for replicated copies.
  FreshSupply* supply;
  std::size_t max_replication_depth;
  std::size_t depth = 0;
};

std::vector<Proto> collect_protos(const Process& p, ProtoContext& ctx);

}  // namespace pielect::detail
