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

#include "pielect/protocols.hpp"

#include <algorithm>

#include "pielect/election.hpp"
#include "pielect/error.hpp"
#include "pielect/syntax.hpp"

namespace pielect {

namespace {

Name sym(const std::string& s) { return Name::sym(s); }
Name sub(const std::string& stem, std::size_t i) { return Name::sym(stem + std::to_string(i)); }
Name num(std::size_t i) { return Name::num(i); }

Process snd(const Name& ch, const Name& v, Process cont = nil()) { return prefixed(Prefix::output(ch, v), std::move(cont)); }
Process rcv(const Name& ch, const Name& v, Process cont = nil()) { return prefixed(Prefix::input(ch, v), std::move(cont)); }

// Node permutation plus an edge map computed from the network's hypergraph.
template <typename F>
Automorphism automorphism_for(const Network& n, const std::vector<std::size_t>& perm, F edge_image) {
  Automorphism a;
  for (std::size_t i = 0; i < perm.size(); ++i) a.nodes[i] = perm[i];
  for (const auto& [x, e] : hypergraph_of(n).edges) a.edges[x] = x.numeric() ? num(perm.at(x.value())) : edge_image(x);
  return a;
}

// Maps stem<j> to stem<perm[j]> for names with a numeric suffix.
Name shift_indexed(const Name& x, const std::vector<std::size_t>& perm) {
  std::string t = x.text();
  std::size_t cut = t.find_last_not_of("0123456789");
  if (cut == std::string::npos || cut + 1 == t.size()) return x;
  std::size_t j = std::stoul(t.substr(cut + 1));
  if (j >= perm.size()) return x;
  return Name::sym(t.substr(0, cut + 1) + std::to_string(perm[j]));
}

Process ring4_r(std::size_t i, std::size_t k, const Name& s, const Name& z);

Process ring4_s(std::size_t i, std::size_t d, const Name& z) {
  Name s = sym("s");
  Process tail = snd(z, s, rcv(sub("y", i), sym("n"), snd(Name::out(), sym("n"))));
  for (std::size_t c = 0; c < d; ++c) tail = snd(s, s, tail);
  return restrict(s, snd(z, s, tail));
}

Process ring4_r(std::size_t i, std::size_t k, const Name& s, const Name& z) {
  if (k == 0) return nil();
  Name w = sym("w");
  return sum({Branch{Prefix::input(s, w), ring4_r(i, k - 1, s, z)}, Branch{Prefix::input(z, w), ring4_q(i, k - 1)}});
}

Process ring4_p(std::size_t i, std::size_t k) {
  if (k == 0) return ring4_q(i, 3);
  RingIndex r(i);
  Name w = sym("w"), w2 = sym("w'");
  Process tail = parallel(snd(w2, sub("y", (r + (k + 1)).i)), rcv(w, sub("y", (r + k).i), ring4_p(i, k - 1)));
  return restrict(w, parallel(snd(sub("x", (r - 1).i), w), rcv(sub("x", i), w2, tail)));
}

}  // namespace

Process ring4_q(std::size_t i, std::size_t k) {
  RingIndex r(i);
  if (k == 0) {
    Process p = snd(Name::out(), num(i));
    for (std::size_t j = 3; j >= 1; --j) p = snd(sub("y", (r + j).i), num(i), p);
    return p;
  }
  Name z = sym("z"), s = sym("s");
  std::vector<Branch> bs;
  bs.push_back({Prefix::output(sub("y", i), z), rcv(z, s, ring4_r(i, k, s, z))});
  for (std::size_t j = 1; j <= 3; ++j) bs.push_back({Prefix::input(sub("y", (r + j).i), z), ring4_s(i, 3 - k, z)});
  return restrict(z, sum(std::move(bs)));
}

Process ring4_component(std::size_t i) { return restrict(sub("y", i), ring4_p(i, 3)); }

Fixture build_two_node() {
  std::vector<Process> comps;
  for (std::size_t i = 0; i < 2; ++i) {
    std::size_t j = (i + 1) % 2;
    comps.push_back(sum({Branch{Prefix::output(sub("x", i), sym("y")), snd(Name::out(), num(i))},
                         Branch{Prefix::input(sub("x", j), sym("y")), snd(Name::out(), num(j))}}));
  }
  Network n({sym("x0"), sym("x1")}, comps);
  std::vector<std::size_t> perm{1, 0};
  return {n, automorphism_for(n, perm, [&](const Name& x) { return shift_indexed(x, perm); })};
}

Fixture build_two_node_separate() {
  std::vector<Process> comps;
  for (std::size_t i = 0; i < 2; ++i) {
    std::size_t j = (i + 1) % 2;
    comps.push_back(parallel(replicate(snd(sub("x", i), sym("y"), snd(Name::out(), num(i)))),
                             replicate(rcv(sub("x", j), sym("y"), snd(Name::out(), num(j))))));
  }
  Network n({sym("x0"), sym("x1")}, comps);
  std::vector<std::size_t> perm{1, 0};
  return {n, automorphism_for(n, perm, [&](const Name& x) { return shift_indexed(x, perm); })};
}

Fixture build_ring4() {
  std::vector<Process> comps;
  std::vector<Name> xs;
  for (std::size_t i = 0; i < 4; ++i) {
    comps.push_back(ring4_component(i));
    xs.push_back(sub("x", i));
  }
  Network n(xs, comps);
  std::vector<std::size_t> perm{1, 2, 3, 0};
  return {n, automorphism_for(n, perm, [&](const Name& x) { return shift_indexed(x, perm); })};
}

Fixture build_pii_ring() {
  std::vector<Process> comps;
  std::vector<Name> xs;
  for (std::size_t i = 0; i < 4; ++i) {
    RingIndex r(i);
    Name w = sym("w"), v = sym("v"), u = sym("u"), u2 = sym("u'");
    Process send = replicate(restrict(w, snd(sub("x", i), w, rcv(w, u))));
    Process relay = replicate(rcv(sub("x", (r - 1).i), v, restrict(u2, snd(v, u2))));
    comps.push_back(parallel(send, relay));
    xs.push_back(sub("x", i));
  }
  Network n(xs, comps);
  std::vector<std::size_t> perm{2, 3, 0, 1};
  return {n, automorphism_for(n, perm, [&](const Name& x) { return shift_indexed(x, perm); })};
}

Fixture build_quotient_fixture() {
  Name a = sym("a"), b = sym("b"), c = sym("c"), c2 = sym("c'"), z = sym("z"), v = sym("v");
  std::vector<Process> comps{
      parallel(snd(a, num(0), snd(Name::out(), num(0))), rcv(c, v)),
      rcv(a, z, snd(Name::out(), z)),
      parallel(snd(b, num(2), snd(Name::out(), num(2))), rcv(c2, v)),
      rcv(b, z, snd(Name::out(), z)),
  };
  Network n({a, b}, comps);
  std::vector<std::size_t> perm{2, 3, 0, 1};
  NameMap swap{{a, b}, {b, a}, {c, c2}, {c2, c}};
  return {n, automorphism_for(n, perm, [&](const Name& x) { return swap.count(x) ? swap.at(x) : x; })};
}

std::map<std::string, Hypergraph> build_figure_hypergraphs() {
  std::map<std::string, Hypergraph> out;
  auto nodes = [](std::size_t k) {
    std::set<std::size_t> s;
    for (std::size_t i = 0; i < k; ++i) s.insert(i);
    return s;
  };
  Hypergraph h1{nodes(6), {}};
  for (std::size_t i = 0; i < 6; ++i) h1.edges[sub("e", i)] = Edge{{i, (i + 1) % 6}, false};
  out["H1"] = h1;
  Hypergraph h2 = h1;
  for (std::size_t i = 0; i < 3; ++i) h2.edges[sub("d", i)] = Edge{{i, i + 3}, false};
  out["H2"] = h2;
  Hypergraph h3{nodes(6), {}};
  for (std::size_t i = 0; i < 3; ++i) h3.edges[sub("e", i)] = Edge{{i, (i + 1) % 3, i + 3}, false};
  out["H3"] = h3;
  Hypergraph h4{nodes(7), {}};
  h4.edges[sym("a")] = Edge{{0, 1, 2, 3}, false};
  h4.edges[sym("b")] = Edge{{0, 3, 4, 5}, false};
  h4.edges[sym("c")] = Edge{{0, 5, 6, 1}, false};
  out["H4"] = h4;
  Hypergraph before{nodes(4), {}};
  Hypergraph after{nodes(4), {}};
  for (std::size_t i = 0; i < 4; ++i) {
    before.edges[sub("x", i)] = Edge{{i, (i + 1) % 4}, false};
    before.edges[num(i)] = Edge{{i}, false};
    after.edges[sub("y", i)] = Edge{nodes(4), false};
    after.edges[num(i)] = Edge{{i}, false};
  }
  out["ring4-before"] = before;
  out["ring4-after"] = after;
  return out;
}

std::vector<Name> ring4_own_names(const Network& start) {
  std::vector<Name> out;
  for (const Process& p : start.components()) {
    if (p.kind() != Process::Kind::Restriction) throw DomainError("ring component lacks its own restriction");
    out.push_back(p.name());
  }
  return out;
}

Computation random_run(const Network& start, Rng& rng, std::size_t max_steps) {
  Computation c(start);
  for (std::size_t s = 0; s < max_steps; ++s) {
    auto next = enumerate_net_steps(c.end(), c.universe_at(c.length()));
    if (next.empty()) break;
    c.push(next[rng.below(next.size())]);
  }
  return c;
}

bool ring4_arrival_order_ok(const Computation& c) {
  std::vector<Name> own = ring4_own_names(c.start());
  NameSet ys(own.begin(), own.end());
  for (std::size_t i = 0; i < 4; ++i) {
    std::vector<Name> got;
    for (const ProjectionEntry& e : project(c, i).steps)
      if (e.label.is_input() && ys.count(e.label.value)) got.push_back(e.label.value);
    RingIndex r(i);
    std::vector<Name> want{own[(r - 1).i], own[(r - 2).i], own[(r - 3).i]};
    // A prefix is fine for an unfinished run.
    if (got.size() > want.size() || !std::equal(got.begin(), got.end(), want.begin())) return false;
  }
  return true;
}

std::size_t ring4_dominations(const Computation& c, std::size_t i) {
  std::vector<Name> own = ring4_own_names(c.start());
  NameSet ys(own.begin(), own.end());
  NameSet xs(c.start().restricted().begin(), c.start().restricted().end());
  std::size_t in = 0, outs = 0;
  for (const ProjectionEntry& e : project(c, i).steps) {
    if (e.label.is_input() && !xs.count(e.label.channel) && !ys.count(e.label.value) &&
        e.label.channel != own[i])
      ++in;
    if (e.label.is_output() && e.label.channel == own[i]) ++outs;
  }
  return in >= outs ? in - outs : 0;
}

RingRun run_ring4(Rng& rng, std::size_t max_steps) {
  Fixture f = build_ring4();
  RingRun run{random_run(f.network, rng, max_steps), false, {}, std::nullopt, false, 0};
  run.terminated = enumerate_net_steps(run.computation.end(), run.computation.universe_at(run.computation.length())).empty();
  run.announcements = observe_winners(run.computation);
  run.order_ok = ring4_arrival_order_ok(run.computation);
  if (run.announcements.size() == 4) {
    const Name& w = run.announcements.front().second;
    bool same = std::all_of(run.announcements.begin(), run.announcements.end(),
                            [&](const auto& p) { return p.second == w; });
    if (same && w.numeric()) {
      run.winner = w.value();
      if (w.value() < 4) run.dominations = ring4_dominations(run.computation, w.value());
    }
  }
  return run;
}

RingRun run_ring4(std::uint64_t seed, std::size_t max_steps) {
  Rng rng(seed);
  return run_ring4(rng, max_steps);
}

Computation drive_ring4_phase1(const Network& start) {
  std::vector<Name> own = ring4_own_names(start);
  NameSet ys(own.begin(), own.end());
  Computation c(start);
  while (true) {
    bool moved = false;
    for (const Successor& s : enumerate_net_steps(c.end(), c.universe_at(c.length()))) {
      bool on_y = false;
      for (const LocalMove& m : s.step.local)
        if (!m.label.is_silent() && ys.count(m.label.channel)) on_y = true;
      if (on_y) continue;
      c.push(s);
      moved = true;
      break;
    }
    if (!moved) return c;
  }
}

}  // namespace pielect
