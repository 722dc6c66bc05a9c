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

#include "pielect/election.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "pielect/error.hpp"
#include "pielect/syntax.hpp"

namespace pielect {

namespace {

// Announcements seen so far, per component. Counts saturate at 2.
struct Record {
  std::vector<int> count;
  std::vector<std::optional<Name>> value;

  std::string key() const {
    std::string s;
    for (std::size_t i = 0; i < count.size(); ++i) {
      s += std::to_string(count[i]);
      if (value[i]) s += "=" + value[i]->str();
      s += ";";
    }
    return s;
  }
};

struct Node {
  Network net;
  Record rec;
  std::size_t depth = 0;
  std::size_t parent = 0;
  bool expanded = false;
  bool complete = false;
  std::vector<std::size_t> succ;
};

// Drops inert parallel 0s and unused restrictions. Both are strong
// bisimilarities, so states differing only by them share a future.
Process collect(const Process& p) {
  switch (p.kind()) {
    case Process::Kind::Sum: {
      if (p.is_nil()) return p;
      std::vector<Branch> bs;
      for (const Branch& b : p.branches()) bs.push_back({b.prefix, collect(b.cont)});
      return sum(std::move(bs));
    }
    case Process::Kind::Restriction: {
      Process body = collect(p.body());
      if (!free_names(body).count(p.name())) return body;
      return restrict(p.name(), std::move(body));
    }
    case Process::Kind::Parallel: {
      Process l = collect(p.left());
      Process r = collect(p.right());
      if (l.is_nil()) return r;
      if (r.is_nil()) return l;
      return parallel(std::move(l), std::move(r));
    }
    case Process::Kind::Replication:
      return replicate(collect(p.body()));
  }
  return p;
}

std::string state_key(const Network& n) {
  std::vector<Process> comps;
  NameSet used;
  for (const Process& c : n.components()) {
    comps.push_back(collect(c));
    for (const Name& x : free_names(comps.back())) used.insert(x);
  }
  std::vector<Name> restricted;
  for (const Name& x : n.restricted())
    if (used.count(x)) restricted.push_back(x);
  return canonical_key(Network(std::move(restricted), std::move(comps)));
}

Record advance(const Record& r, const NetStep& step) {
  Record out = r;
  for (const LocalMove& m : step.local) {
    if (!m.label.is_output() || !m.label.channel.is_out()) continue;
    if (out.count[m.component] < 2) ++out.count[m.component];
    if (!out.value[m.component]) out.value[m.component] = m.label.value;
  }
  return out;
}

// Strict mode also rejects a second announcement by one component.
bool conflicting(const Record& before, const Record& r, const NetStep& step, ElectionMode mode) {
  std::optional<Name> seen;
  for (std::size_t i = 0; i < r.count.size(); ++i) {
    if (mode == ElectionMode::Strict && r.count[i] > 1) return true;
    if (!r.value[i]) continue;
    if (seen && *seen != *r.value[i]) return true;
    seen = r.value[i];
  }
  // A component repeating itself with a different value.
  for (const LocalMove& m : step.local) {
    if (!m.label.is_output() || !m.label.channel.is_out()) continue;
    const auto& prev = before.value[m.component];
    if (prev && *prev != m.label.value) return true;
    if (seen && *seen != m.label.value) return true;
  }
  return false;
}

bool is_complete(const Record& r, ElectionMode mode) {
  std::optional<Name> seen;
  bool any = false;
  for (std::size_t i = 0; i < r.count.size(); ++i) {
    if (mode == ElectionMode::Strict && r.count[i] != 1) return false;
    if (!r.value[i]) continue;
    any = true;
    if (seen && *seen != *r.value[i]) return false;
    seen = r.value[i];
  }
  return any;
}

class Explorer {
 public:
  Explorer(const ExplorationBudget& b) : budget_(b) {}

  std::size_t add(Network net, Record rec, std::size_t depth, std::size_t parent, bool* fresh) {
    std::string key = state_key(net) + "@" + rec.key();
    auto it = index_.find(key);
    if (it != index_.end()) {
      *fresh = false;
      return it->second;
    }
    *fresh = true;
    Node n{std::move(net), std::move(rec), depth, parent, false, false, {}};
    n.complete = is_complete(n.rec, budget_.mode);
    nodes_.push_back(std::move(n));
    index_.emplace(std::move(key), nodes_.size() - 1);
    return nodes_.size() - 1;
  }

  std::vector<Successor> successors(const Network& n) const {
    return enumerate_net_steps(n, network_universe(n, budget_.fresh_budget, budget_.extra_known));
  }

  // Expands breadth first from `roots` until depth `limit` relative to each
  // root's depth or the state cap. Returns the index of a conflicting child,
  // stored as a fresh node, or npos.
  std::size_t explore(std::deque<std::size_t> queue, std::size_t limit, std::size_t state_cap) {
    while (!queue.empty()) {
      std::size_t cur = queue.front();
      queue.pop_front();
      if (nodes_[cur].expanded || nodes_[cur].depth >= limit) continue;
      if (nodes_.size() >= state_cap) {
        truncated_ = true;
        continue;
      }
      nodes_[cur].expanded = true;
      std::vector<Successor> next = successors(nodes_[cur].net);
      for (Successor& s : next) {
        Record rec = advance(nodes_[cur].rec, s.step);
        bool bad = conflicting(nodes_[cur].rec, rec, s.step, budget_.mode);
        bool fresh = false;
        std::size_t id = add(std::move(s.next), std::move(rec), nodes_[cur].depth + 1, cur, &fresh);
        nodes_[cur].succ.push_back(id);
        ++edges_;
        if (bad) {
          // The conflicting node keeps this parent for path recovery.
          nodes_[id].parent = cur;
          return id;
        }
        if (fresh) queue.push_back(id);
      }
    }
    return npos;
  }

  // States reaching a complete state through explored edges.
  std::vector<bool> good() const {
    std::vector<std::vector<std::size_t>> pred(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      for (std::size_t j : nodes_[i].succ) pred[j].push_back(i);
    std::vector<bool> g(nodes_.size(), false);
    std::deque<std::size_t> q;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (nodes_[i].complete) {
        g[i] = true;
        q.push_back(i);
      }
    while (!q.empty()) {
      std::size_t v = q.front();
      q.pop_front();
      for (std::size_t u : pred[v])
        if (!g[u]) {
          g[u] = true;
          q.push_back(u);
        }
    }
    return g;
  }

  std::vector<std::size_t> tree_path(std::size_t id) const {
    std::vector<std::size_t> path{id};
    while (path.back() != 0) path.push_back(nodes_[path.back()].parent);
    std::reverse(path.begin(), path.end());
    return path;
  }

  // Re-executes a node path from the start network.
  Computation rebuild(const std::vector<std::size_t>& path) const {
    Computation c(nodes_[path.front()].net, budget_.fresh_budget, budget_.extra_known);
    Record rec = nodes_[path.front()].rec;
    for (std::size_t k = 1; k < path.size(); ++k) {
      const Node& target = nodes_[path[k]];
      std::string want = state_key(target.net) + "@" + target.rec.key();
      bool found = false;
      for (const Successor& s : successors(c.end())) {
        Record r = advance(rec, s.step);
        if (state_key(s.next) + "@" + r.key() != want) continue;
        c.push(s);
        rec = r;
        found = true;
        break;
      }
      if (!found) throw Error("internal: counterexample path does not replay");
    }
    return c;
  }

  std::vector<Node>& nodes() { return nodes_; }
  std::size_t edges() const { return edges_; }
  bool truncated() const { return truncated_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  const ExplorationBudget& budget_;
  std::vector<Node> nodes_;
  std::map<std::string, std::size_t> index_;
  std::size_t edges_ = 0;
  bool truncated_ = false;
};

}  // namespace

std::string status_name(ElectionVerdict::Status s) {
  switch (s) {
    case ElectionVerdict::Status::Electoral:
      return "electoral";
    case ElectionVerdict::Status::NotElectoral:
      return "not-electoral";
    case ElectionVerdict::Status::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::string ElectionVerdict::summary() const {
  std::ostringstream os;
  os << status_name(status);
  if (status == Status::Electoral) {
    os << " winners=";
    bool first = true;
    for (std::uint64_t w : winners) {
      os << (first ? "" : ",") << w;
      first = false;
    }
  }
  if (!reason.empty()) os << " reason=" << reason;
  if (!bound.empty()) os << " bound=" << bound;
  os << " states=" << stats.states << " edges=" << stats.edges;
  return os.str();
}

ElectionVerdict check_electoral(const Network& n, const ExplorationBudget& b) {
  if (b.max_states == 0) throw PreconditionError("state budget must be positive");
  ElectionVerdict v;
  Explorer ex(b);
  Record rec{std::vector<int>(n.size(), 0), std::vector<std::optional<Name>>(n.size())};
  bool fresh = false;
  ex.add(n, rec, 0, 0, &fresh);

  auto fill_stats = [&] {
    auto& nodes = ex.nodes();
    v.stats.states = nodes.size();
    v.stats.edges = ex.edges();
    v.stats.complete = v.stats.terminal = v.stats.frontier = 0;
    for (const Node& x : nodes) {
      if (x.complete) ++v.stats.complete;
      if (x.expanded && x.succ.empty()) ++v.stats.terminal;
      if (!x.expanded) ++v.stats.frontier;
    }
  };
  auto refute = [&](const std::string& reason, std::vector<std::size_t> path, std::optional<std::size_t> loop) {
    v.status = ElectionVerdict::Status::NotElectoral;
    v.reason = reason;
    v.counterexample = ex.rebuild(path);
    v.loop_start = loop;
    fill_stats();
    return v;
  };

  std::size_t bad = ex.explore({0}, b.max_depth, b.max_states);
  if (bad != Explorer::npos) return refute("conflicting-winners", ex.tree_path(bad), std::nullopt);

  auto& nodes = ex.nodes();
  std::vector<bool> good = ex.good();

  // A fully explored dead end that never elected anyone.
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (!good[i] && nodes[i].expanded && nodes[i].succ.empty())
      return refute("missing-projection-output", ex.tree_path(i), std::nullopt);

  // States whose explored futures include an unexpanded leaf.
  auto open_states = [&] {
    std::vector<std::vector<std::size_t>> pred(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
      for (std::size_t j : nodes[i].succ) pred[j].push_back(i);
    std::vector<bool> open(nodes.size(), false);
    std::deque<std::size_t> q;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (!nodes[i].expanded) {
        open[i] = true;
        q.push_back(i);
      }
    while (!q.empty()) {
      std::size_t x = q.front();
      q.pop_front();
      for (std::size_t u : pred[x])
        if (!open[u]) {
          open[u] = true;
          q.push_back(u);
        }
    }
    return open;
  };

  std::vector<bool> open = open_states();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (good[i] || open[i]) continue;
    // Every successor is explored and none can elect: walk to a repeat.
    std::vector<std::size_t> walk{i};
    std::map<std::size_t, std::size_t> pos{{i, 0}};
    while (true) {
      std::size_t nxt = nodes[walk.back()].succ.front();
      auto it = pos.find(nxt);
      if (it != pos.end()) {
        std::vector<std::size_t> path = ex.tree_path(i);
        std::size_t loop = path.size() - 1 + it->second;
        path.insert(path.end(), walk.begin() + 1, walk.end());
        path.push_back(nxt);
        return refute("divergence-lasso", path, loop);
      }
      pos.emplace(nxt, walk.size());
      walk.push_back(nxt);
    }
  }

  // Leaves cut by the budget: search further from each one that matters.
  std::size_t before = nodes.size();
  std::deque<std::size_t> leaves;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (!good[i] && !nodes[i].expanded) leaves.push_back(i);
  if (!leaves.empty()) {
    std::size_t cap = before + b.max_states;
    std::size_t limit = b.max_depth * 2;
    bad = ex.explore(leaves, limit, cap);
    if (bad != Explorer::npos) return refute("conflicting-winners", ex.tree_path(bad), std::nullopt);
    good = ex.good();
  }
  v.stats.extension_states = nodes.size() - before;

  bool unresolved = false;
  for (std::size_t i = 0; i < before; ++i)
    if (!good[i]) unresolved = true;
  fill_stats();

  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].complete) {
      if (!v.witness) v.witness = ex.rebuild(ex.tree_path(i));
      for (const auto& val : nodes[i].rec.value)
        if (val && val->numeric()) v.winners.insert(val->value());
    }

  if (unresolved) {
    v.status = ElectionVerdict::Status::Inconclusive;
    v.bound = ex.truncated() ? "states" : "depth";
    v.winners.clear();
    return v;
  }
  v.status = ElectionVerdict::Status::Electoral;
  return v;
}

std::vector<std::pair<std::size_t, Name>> observe_winners(const Computation& c) {
  std::vector<std::pair<std::size_t, Name>> out;
  for (std::size_t i = 0; i < c.start().size(); ++i)
    for (const ProjectionEntry& e : project(c, i).steps)
      if (e.label.is_output() && e.label.channel.is_out()) out.emplace_back(i, e.label.value);
  return out;
}

}  // namespace pielect
