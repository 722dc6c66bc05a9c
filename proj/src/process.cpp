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

#include "pielect/process.hpp"

#include "pielect/error.hpp"

namespace pielect {

struct Process::Node {
  Kind kind = Kind::Sum;
  std::vector<Branch> branches;
  Name name;
  Process a;
  Process b;
  std::size_t size = 1;
};

Process::Process() : node_(nullptr) {}

Process::Kind Process::kind() const { return node_ ? node_->kind : Kind::Sum; }

bool Process::is_nil() const { return !node_ || (node_->kind == Kind::Sum && node_->branches.empty()); }

const std::vector<Branch>& Process::branches() const {
  static const std::vector<Branch> empty;
  return node_ ? node_->branches : empty;
}

const Name& Process::name() const {
  static const Name none;
  return node_ ? node_->name : none;
}

const Process& Process::body() const { return node_->a; }
const Process& Process::left() const { return node_->a; }
const Process& Process::right() const { return node_->b; }

std::size_t Process::size() const { return node_ ? node_->size : 1; }

bool operator==(const Process& a, const Process& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_nil() || b.is_nil()) return a.is_nil() && b.is_nil();
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case Process::Kind::Sum:
      return a.branches() == b.branches();
    case Process::Kind::Restriction:
      return a.name() == b.name() && a.body() == b.body();
    case Process::Kind::Parallel:
      return a.left() == b.left() && a.right() == b.right();
    case Process::Kind::Replication:
      return a.body() == b.body();
  }
  return false;
}

Process nil() { return Process(); }

Process sum(std::vector<Branch> branches) {
  if (branches.empty()) return nil();
  auto n = std::make_shared<Process::Node>();
  n->kind = Process::Kind::Sum;
  n->size = 0;
  for (const auto& br : branches) {
    if (br.prefix.is_input() && !br.prefix.object.bindable())
      throw BindingError("input formal '" + br.prefix.object.str() + "' cannot be bound");
    n->size += br.cont.is_nil() ? 1 : 1 + br.cont.size();
  }
  n->branches = std::move(branches);
  return Process(std::move(n));
}

Process prefixed(Prefix prefix, Process cont) { return sum({Branch{std::move(prefix), std::move(cont)}}); }

Process restrict(const Name& name, Process body) {
  if (!name.bindable()) throw BindingError("restriction of '" + name.str() + "' is not allowed");
  auto n = std::make_shared<Process::Node>();
  n->kind = Process::Kind::Restriction;
  n->name = name;
  n->size = 1 + body.size();
  n->a = std::move(body);
  return Process(std::move(n));
}

Process parallel(Process left, Process right) {
  auto n = std::make_shared<Process::Node>();
  n->kind = Process::Kind::Parallel;
  n->size = 1 + left.size() + right.size();
  n->a = std::move(left);
  n->b = std::move(right);
  return Process(std::move(n));
}

Process parallel(const std::vector<Process>& parts) {
  if (parts.empty()) return nil();
  Process acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) acc = parallel(acc, parts[i]);
  return acc;
}

Process replicate(Process body) {
  auto n = std::make_shared<Process::Node>();
  n->kind = Process::Kind::Replication;
  n->size = 1 + body.size();
  n->a = std::move(body);
  return Process(std::move(n));
}

}  // namespace pielect
