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

// Acceptance run: one PASS/FAIL line per criterion. Exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "pielect/adversary.hpp"
#include "pielect/election.hpp"
#include "pielect/protocols.hpp"
#include "pielect/random.hpp"
#include "pielect/semantics.hpp"
#include "pielect/symmetry.hpp"
#include "pielect/syntax.hpp"

using namespace pielect;

namespace {

constexpr std::uint64_t kSeed = 20260;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && secs >= limit_s) o.require(false, "over time limit");
  char timing[64];
  if (limit_s > 0)
    std::snprintf(timing, sizeof timing, "%.2fs < %.0fs", secs, limit_s);
  else
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
  std::cout << (o.ok ? "PASS" : "FAIL") << " " << id << " " << title << " (" << timing << ")";
  if (!o.detail.empty()) std::cout << " : " << o.detail;
  std::cout << "\n";
  if (!o.ok) ++failures;
}

ExplorationBudget budget(std::size_t depth) {
  ExplorationBudget b;
  b.max_depth = depth;
  b.fresh_budget = 1;
  return b;
}

void maximal_runs(const Computation& c, std::size_t limit, const std::function<void(const Computation&)>& f) {
  auto next = enumerate_net_steps(c.end(), c.universe_at(c.length()));
  if (next.empty() || c.length() >= limit) {
    f(c);
    return;
  }
  for (const auto& s : next) {
    Computation d = c;
    d.push(s);
    maximal_runs(d, limit, f);
  }
}

// Outputs on `out` per component.
std::vector<std::vector<Name>> announcements(const Computation& c) {
  std::vector<std::vector<Name>> per(c.start().size());
  for (const auto& [i, v] : observe_winners(c)) per[i].push_back(v);
  return per;
}

std::string two_node_trace() {
  ElectionVerdict v = check_electoral(build_two_node().network, budget(12));
  return v.witness ? format_trace(*v.witness) : std::string();
}

std::string separate_trace() {
  Fixture f = build_two_node_separate();
  AdversaryRun run = run_adversary(f.network, f.automorphism, 50, AdversaryMode::Pis);
  return format_trace(run.computation, run.notes);
}

std::vector<RingRun> ring_runs(std::size_t n) {
  Rng root(kSeed);
  std::vector<RingRun> out;
  for (std::size_t i = 0; i < n; ++i) {
    Rng r = root.split();
    out.push_back(run_ring4(r));
  }
  return out;
}

// Label traces up to `depth`, numerals renamed by `rho` and bound outputs numbered.
void label_traces(const Network& n, std::size_t depth, const NameMap& rho, const std::string& prefix,
                  std::size_t bound, std::set<std::string>& out) {
  out.insert(prefix);
  if (depth == 0) return;
  for (const Successor& s : enumerate_net_steps(n, network_universe(n, 1))) {
    auto map = [&](const Name& x) {
      auto it = rho.find(x);
      return it == rho.end() ? x.str() : it->second.str();
    };
    std::string label;
    std::size_t b = bound;
    switch (s.step.label.kind) {
      case ActionLabel::Kind::Silent: label = "tau"; break;
      case ActionLabel::Kind::Input: label = map(s.step.label.channel) + "?" + map(s.step.label.value); break;
      case ActionLabel::Kind::FreeOutput: label = map(s.step.label.channel) + "!" + map(s.step.label.value); break;
      case ActionLabel::Kind::BoundOutput:
        label = map(s.step.label.channel) + "!(#" + std::to_string(b++) + ")";
        break;
    }
    label_traces(s.next, depth - 1, rho, prefix + label + ";", b, out);
  }
}

}  // namespace

int main() {
  criterion(1, "two-node election is electoral with winners {0,1}", 1, [] {
    Outcome o;
    ElectionVerdict v = check_electoral(build_two_node().network, budget(12));
    o.require(v.status == ElectionVerdict::Status::Electoral, "verdict " + v.summary());
    o.require(v.winners == std::set<std::uint64_t>{0, 1}, "winner set");
    std::size_t runs = 0;
    maximal_runs(Computation(build_two_node().network), 12, [&](const Computation& c) {
      ++runs;
      auto per = announcements(c);
      o.require(per.size() == 2 && per[0].size() == 1 && per[1].size() == 1, "projection without one announcement");
      if (per.size() == 2 && per[0].size() == 1 && per[1].size() == 1)
        o.require(per[0][0] == per[1][0], "unequal announcements");
    });
    o.detail = o.ok ? std::to_string(runs) + " maximal runs" : o.detail;
    return o;
  });

  criterion(2, "separate-choice two-node network never elects", 10, [] {
    Outcome o;
    Fixture f = build_two_node_separate();
    std::string verdicts;
    for (std::size_t d : {8, 12, 16}) {
      ElectionVerdict v = check_electoral(f.network, budget(d));
      o.require(v.status != ElectionVerdict::Status::Electoral, "electoral at depth " + std::to_string(d));
      verdicts += std::string(verdicts.empty() ? "" : ",") + status_name(v.status);
    }
    AdversaryRun run = run_adversary(f.network, f.automorphism, 50, AdversaryMode::Pis);
    o.require(!run.stuck && run.rounds.size() == 50, "adversary stopped early");
    std::size_t outs = observe_winners(run.computation).size();
    o.require(outs == 0, "out actions taken");
    std::size_t certs = 0;
    for (const auto& r : run.rounds)
      if (is_symmetric(r.states.back(), r.after)) ++certs;
    o.require(certs == 50, "certificates " + std::to_string(certs) + "/50");
    if (o.ok) o.detail = verdicts + "; rounds=50 outs=0 certificates=50/50";
    return o;
  });

  criterion(3, "confluence diamond over 500 separate-choice terms", 30, [] {
    Outcome o;
    Rng rng(kSeed);
    testing::TermShape shape;
    shape.free = {"a", "b"};
    testing::TermGen gen(rng, shape);
    std::size_t terms = 0, pairs = 0, violations = 0;
    // Terms without an output/input pair check nothing and are skipped.
    for (std::size_t tries = 0; terms < 500 && tries < 1000000; ++tries) {
      Process p = gen.next();
      if (p.size() > 10 || !classify(p).pi_s) continue;
      NameUniverse u = universe_for(p);
      std::size_t outs = 0, ins = 0;
      for (const Transition& t : transitions(p, u)) {
        if (t.label.is_output()) ++outs;
        if (t.label.is_input()) ++ins;
      }
      if (outs * ins == 0) continue;
      ++terms;
      pairs += outs * ins;
      violations += check_confluence_diamond(p, u).size();
    }
    o.require(terms == 500, "only " + std::to_string(terms) + " terms");
    o.require(violations == 0, std::to_string(violations) + " violations");
    if (o.ok) o.detail = "terms=500 pairs=" + std::to_string(pairs) + " violations=0";
    return o;
  });

  criterion(4, "200 ring runs elect one leader in ring order", 60, [] {
    Outcome o;
    std::set<std::uint64_t> winners;
    for (const RingRun& r : ring_runs(200)) {
      o.require(r.terminated, "run did not terminate");
      o.require(r.winner.has_value() && r.announcements.size() == 4, "missing announcements");
      for (const auto& [i, v] : r.announcements) o.require(r.winner && v == Name::num(*r.winner), "unequal announcements");
      o.require(r.order_ok, "arrival order");
      o.require(r.dominations == 3, "winner dominations " + std::to_string(r.dominations));
      if (r.winner) winners.insert(*r.winner);
    }
    o.require(winners.size() >= 2, "one winner across seeds");
    if (o.ok) o.detail = "distinct winners=" + std::to_string(winners.size());
    return o;
  });

  criterion(5, "hypergraph automorphism counts", 5, [] {
    Outcome o;
    auto figs = build_figure_hypergraphs();
    auto shapes = [](const Hypergraph& h) {
      std::set<std::pair<std::size_t, std::size_t>> out;  // (orbit count, orbit size)
      std::size_t nontrivial = 0;
      for (const Automorphism& a : all_automorphisms(h)) {
        if (!is_well_balanced(a)) continue;
        auto p = orbits(a);
        out.insert({p.orbits.size(), p.orbits[0].size()});
        if (!a.is_identity()) ++nontrivial;
      }
      return std::make_pair(out, nontrivial);
    };
    for (const char* name : {"H1", "H2"}) {
      auto s = shapes(figs.at(name)).first;
      o.require(s.count({1, 6}) && s.count({2, 3}) && s.count({3, 2}), std::string(name) + " orbit shapes");
    }
    auto [h3, h3n] = shapes(figs.at("H3"));
    o.require(h3n == 2, "H3 has " + std::to_string(h3n) + " non-identity well-balanced automorphisms");
    h3.erase({6, 1});
    o.require(h3 == std::set<std::pair<std::size_t, std::size_t>>{{2, 3}}, "H3 orbit shapes");
    auto [h4, h4n] = shapes(figs.at("H4"));
    o.require(h4n == 0, "H4 has a non-identity well-balanced automorphism");
    return o;
  });

  criterion(6, "orbit quotient agrees on traces to depth 4", 0, [] {
    Outcome o;
    Fixture f = build_quotient_fixture();
    Quotient q = orbit_quotient(f.network, f.automorphism);
    o.require(q.network.size() == 2, "quotient size");
    o.require(orbits(q.theta).orbits.size() == 1 && is_symmetric(q.network, q.theta), "quotient not one-orbit symmetric");
    NameMap rho;
    for (std::size_t i = 0; i < 4; ++i) rho[Name::num(i)] = Name::num(i / 2);
    std::set<std::string> orig, quot;
    label_traces(f.network, 4, rho, "", 0, orig);
    label_traces(q.network, 4, {}, "", 0, quot);
    o.require(orig == quot, "trace sets differ (" + std::to_string(orig.size()) + " vs " + std::to_string(quot.size()) + ")");
    if (o.ok) o.detail = "traces=" + std::to_string(orig.size());
    return o;
  });

  criterion(7, "connectivity invariant", 0, [] {
    Outcome o;
    Fixture pii = build_pii_ring();
    AdversaryRun run = run_adversary(pii.network, pii.automorphism, 20, AdversaryMode::Pii);
    o.require(run.rounds.size() == 20, "adversary stopped early");
    auto v = connectivity_monitor(run.computation, pii.automorphism);
    o.require(v.empty(), std::to_string(v.size()) + " violations in the pi_I ring");
    Fixture ring = build_ring4();
    Automorphism swap = parse_automorphism("(0 2)(1 3)", hypergraph_of(ring.network));
    auto w = connectivity_monitor(drive_ring4_phase1(ring.network), swap);
    bool intra = false;
    for (const auto& x : w) intra = intra || x.intra_orbit;
    o.require(!w.empty() && intra, "no intra-orbit violation in the ring");
    if (o.ok) o.detail = "pi_I violations=0; ring violations=" + std::to_string(w.size());
    return o;
  });

  criterion(8, "repeated runs give byte-identical traces", 0, [] {
    Outcome o;
    o.require(two_node_trace() == two_node_trace(), "two-node trace");
    o.require(separate_trace() == separate_trace(), "adversary trace");
    auto a = ring_runs(200), b = ring_runs(200);
    for (std::size_t i = 0; i < a.size(); ++i)
      o.require(format_trace(a[i].computation) == format_trace(b[i].computation), "ring run " + std::to_string(i));
    return o;
  });

  return failures == 0 ? 0 : 1;
}
