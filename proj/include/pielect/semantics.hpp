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
#include <memory>
#include <string>
#include <vector>

#include "pielect/name.hpp"
#include "pielect/process.hpp"

namespace pielect {

struct ActionLabel {
  enum class Kind { Input, FreeOutput, BoundOutput, Silent };

  static ActionLabel input(Name ch, Name v) { return {Kind::Input, std::move(ch), std::move(v)}; }
  static ActionLabel free_output(Name ch, Name v) { return {Kind::FreeOutput, std::move(ch), std::move(v)}; }
  static ActionLabel bound_output(Name ch, Name v) { return {Kind::BoundOutput, std::move(ch), std::move(v)}; }
  static ActionLabel silent() { return {Kind::Silent, Name(), Name()}; }

  bool is_input() const { return kind == Kind::Input; }
  bool is_output() const { return kind == Kind::FreeOutput || kind == Kind::BoundOutput; }
  bool is_silent() const { return kind == Kind::Silent; }
  // A free output on `out`.
  bool is_announcement() const { return kind == Kind::FreeOutput && channel.is_out(); }

  NameSet bound_names() const;
  NameSet names() const;
  // x?v, x!v, x!(v) or tau.
  std::string str() const;

  friend bool operator==(const ActionLabel& a, const ActionLabel& b) {
    if (a.kind != b.kind) return false;
    return a.kind == Kind::Silent || (a.channel == b.channel && a.value == b.value);
  }

  Kind kind;
  Name channel;
  Name value;
};

ActionLabel parse_label(const std::string& text);

enum class Rule { ISum, OTauSum, Open, Res, ParL, ParR, ComL, ComR, CloseL, CloseR, Rep, Cong };

// I-Sum, O/tau-Sum, Open, Res, Par-L, Par-R, Com-L, Com-R, Close-L, Close-R, Rep, Cong.
std::string rule_name(Rule r);

struct Derivation;
using DerivationPtr = std::shared_ptr<const Derivation>;

// One application of a rule. Com and Close list the input-side premise on the
// left for the -L variants and on the right for the -R variants.
struct Derivation {
  Rule rule;
  Process source;
  ActionLabel label;
  Process target;
  std::vector<DerivationPtr> premises;
  // Branch index for the sum rules.
  int branch = -1;
};

// Root rule, skipping Cong wrappers.
Rule effective_rule(const Derivation& d);

struct Transition {
  ActionLabel label;
  Process target;
  DerivationPtr derivation;
  // Position of the acting sum leaf (left premise for communications).
  std::vector<int> path;
};

struct NameUniverse {
  NameSet known{Name::out()};
  std::size_t fresh_budget = 1;
};

// known = free names of `p` plus `out`.
NameUniverse universe_for(const Process& p, std::size_t fresh_budget = 1);

// Values tried by early input instantiation: known and `free` names except `out`,
// then `fresh_budget` names f0, f1, ... avoiding `avoid`.
std::vector<Name> instantiation_values(const NameUniverse& u, const NameSet& free, const NameSet& avoid);

struct TransitionOptions {
  std::size_t max_replication_depth = 8;
};

std::vector<Transition> transitions(const Process& p, const NameUniverse& u, const TransitionOptions& opts = {});

// Normal form for the congruence: restrictions on left operands of | are pulled outward.
Process congruence_normal_form(const Process& p);
bool congruent(const Process& p, const Process& q);

// Re-checks every rule application and side condition; on failure fills `why`.
bool check_derivation(const Derivation& d, std::string* why = nullptr);

struct DiamondViolation {
  Transition output;
  Transition input;
  std::string reason;
};

// Throws PreconditionError unless `p` is in the separate-choice fragment.
std::vector<DiamondViolation> check_confluence_diamond(const Process& p, const NameUniverse& u);

}  // namespace pielect
