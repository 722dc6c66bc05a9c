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
#include <vector>

#include "pielect/name.hpp"

namespace pielect {

struct Prefix {
  enum class Kind { Input, Output, Tau };

  static Prefix input(Name channel, Name formal) { return {Kind::Input, std::move(channel), std::move(formal)}; }
  static Prefix output(Name channel, Name argument) { return {Kind::Output, std::move(channel), std::move(argument)}; }
  static Prefix tau() { return {Kind::Tau, Name(), Name()}; }

  bool is_input() const { return kind == Kind::Input; }
  bool is_output() const { return kind == Kind::Output; }
  bool is_tau() const { return kind == Kind::Tau; }

  friend bool operator==(const Prefix& a, const Prefix& b) {
    if (a.kind != b.kind) return false;
    return a.kind == Kind::Tau || (a.channel == b.channel && a.object == b.object);
  }

  Kind kind;
  Name channel;
  // The formal of an input or the argument of an output.
  Name object;
};

struct Branch;

// Immutable, shareable π-term. The empty sum is 0.
class Process {
 public:
  enum class Kind { Sum, Restriction, Parallel, Replication };

  Process();

  Kind kind() const;
  bool is_nil() const;
  const std::vector<Branch>& branches() const;
  // Restriction binder.
  const Name& name() const;
  // Restriction and replication body.
  const Process& body() const;
  const Process& left() const;
  const Process& right() const;

  // AST node count: one per sum branch, restriction, parallel and replication; 0 counts one.
  std::size_t size() const;
  const void* identity() const { return node_.get(); }

  friend bool operator==(const Process& a, const Process& b);

 private:
  struct Node;
  explicit Process(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;

  friend Process nil();
  friend Process sum(std::vector<Branch> branches);
  friend Process restrict(const Name& name, Process body);
  friend Process parallel(Process left, Process right);
  friend Process replicate(Process body);
};

struct Branch {
  Prefix prefix;
  Process cont;
  friend bool operator==(const Branch& a, const Branch& b) { return a.prefix == b.prefix && a.cont == b.cont; }
};

Process nil();
// Throws BindingError if an input formal is not bindable.
Process sum(std::vector<Branch> branches);
Process prefixed(Prefix prefix, Process cont = nil());
// Throws BindingError if `name` is not bindable.
Process restrict(const Name& name, Process body);
Process parallel(Process left, Process right);
// Left-associated parallel of one or more processes.
Process parallel(const std::vector<Process>& parts);
Process replicate(Process body);

}  // namespace pielect
