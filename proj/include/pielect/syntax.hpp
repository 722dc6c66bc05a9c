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

#include <map>
#include <string>
#include <vector>

#include "pielect/name.hpp"
#include "pielect/process.hpp"

namespace pielect {

using NameMap = std::map<Name, Name>;

NameSet free_names(const Process& p);
// Free names in order of first occurrence (pre-order, channel before object).
std::vector<Name> free_names_in_order(const Process& p);
// Binders of `p`: restriction names and input formals.
NameSet bound_names(const Process& p);
// Free and bound names.
NameSet all_names(const Process& p);

// P{replacement/target} with capture-avoiding renaming of binders.
Process substitute(const Process& p, const Name& replacement, const Name& target);
// Simultaneous capture-avoiding renaming of free names. Names outside the map are unchanged.
Process rename_free(const Process& p, const NameMap& map);
Process rename_free(const Process& p, const NameMap& map, FreshSupply& supply);

// Renames every binder that is already in `used` to a fresh name and records all binders in `used`.
Process uniquify_binders(const Process& p, NameSet& used, FreshSupply& supply);
// Renames every binder to a fresh name.
Process refresh_binders(const Process& p, FreshSupply& supply);

// Binder-index normal form: equal strings iff the terms are α-equivalent.
std::string canonical_form(const Process& p);
// As above, printing free names found in `alias` by their alias.
std::string canonical_form(const Process& p, const std::map<Name, std::string>& alias);
bool alpha_equivalent(const Process& p, const Process& q);

struct SublanguageProfile {
  bool pi_m = true;
  bool pi_s = false;
  bool pi_i = false;
  bool pi_nc = false;
  bool pi_a = false;
  bool pi_I = false;
  bool ccs_vp = false;

  std::string str() const;
  friend bool operator==(const SublanguageProfile&, const SublanguageProfile&) = default;
};

SublanguageProfile classify(const Process& p);

Process parse_process(const std::string& text);
// Line and column offsets are added to reported positions.
Process parse_process(const std::string& text, int line, int column);
std::string print(const Process& p);

}  // namespace pielect
