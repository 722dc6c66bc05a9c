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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>

#include "pielect/adversary.hpp"
#include "pielect/error.hpp"
#include "pielect/protocols.hpp"
#include "pielect/syntax.hpp"

using namespace pielect;

namespace {

std::string idx(const std::string& stem, std::size_t i) { return stem + std::to_string(i % 4); }

// Four components from a template; `#` is the own index, `+k` suffixes are
// resolved by the caller through `text`.
Network ring(const std::vector<std::string>& restricted, const std::function<std::string(std::size_t)>& text) {
  std::vector<Name> r;
  for (const auto& x : restricted) r.push_back(Name::sym(x));
  std::vector<Process> ps;
  for (std::size_t i = 0; i < 4; ++i) ps.push_back(parse_process(text(i)));
  return Network(r, ps);
}

std::vector<std::string> cs() { return {"c0", "c1", "c2", "c3"}; }

Automorphism rotation(const Network& n) {
  for (const auto& a : network_automorphisms(n)) {
    bool rot = true;
    for (std::size_t i = 0; i < 4; ++i)
      if (a.node(i) != (i + 1) % 4) rot = false;
    if (rot && is_symmetric(n, a)) return a;
  }
  FAIL("no symmetric rotation");
  return {};
}

void check_round(const AdversaryRound& r) {
  CHECK(is_symmetric(r.states.back(), r.after));
  CHECK(orbits(r.after).orbits.size() == orbits(r.before).orbits.size());
  CHECK(r.states.size() == r.steps.size() + 1);
  for (const NetStep& s : r.steps)
    for (const LocalMove& m : s.local)
      if (!m.label.is_silent()) CHECK_FALSE(m.label.channel.is_out());
}

}  // namespace

TEST_CASE("tau move is mimicked by every node") {
  Network n = ring(cs(), [](std::size_t i) { return "tau.(" + idx("c", i) + "!(m).0 | " + idx("c", i + 3) + "?(v).0)"; });
  AdversaryRound r = symmetric_round(n, rotation(n), AdversaryMode::Pis);
  CHECK(r.kind == RoundCase::TauMove);
  CHECK(r.steps.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(r.steps[i].active == std::vector<std::size_t>{i});
  CHECK(r.after == r.before);
  check_round(r);
}

TEST_CASE("communication with r = 1 closes the circle") {
  Network n = ring(cs(), [](std::size_t i) { return idx("c", i) + "!(m).0 | " + idx("c", i + 3) + "?(v).0"; });
  AdversaryRound r = symmetric_round(n, rotation(n), AdversaryMode::Pis);
  CHECK(r.kind == RoundCase::ComCommunication);
  REQUIRE(r.steps.size() == 4);
  for (std::size_t t = 0; t < 4; ++t) {
    CHECK(r.steps[t].label.is_silent());
    auto sender = std::find_if(r.steps[t].local.begin(), r.steps[t].local.end(),
                               [](const LocalMove& m) { return m.label.is_output(); });
    CHECK(sender->component == t);
  }
  check_round(r);
}

TEST_CASE("communication with r = 2 closes each sub-cycle") {
  Network n = ring(cs(), [](std::size_t i) { return idx("c", i) + "!(m).0 | " + idx("c", i + 2) + "?(v).0"; });
  AdversaryRound r = symmetric_round(n, rotation(n), AdversaryMode::Pis);
  CHECK(r.kind == RoundCase::ComCommunication);
  REQUIRE(r.steps.size() == 4);
  CHECK(r.steps[0].active == std::vector<std::size_t>{0, 2});
  CHECK(r.steps[1].active == std::vector<std::size_t>{0, 2});
  CHECK(r.steps[2].active == std::vector<std::size_t>{1, 3});
  CHECK(r.steps[3].active == std::vector<std::size_t>{1, 3});
  check_round(r);
}

TEST_CASE("close communication hoists one fresh name per node") {
  Network n = ring(cs(), [](std::size_t i) {
    return "new y in " + idx("c", i) + "!(y).y?(u).0 | " + idx("c", i + 3) + "?(v).v!(v).0";
  });
  Automorphism a = rotation(n);
  AdversaryRound r = symmetric_round(n, a, AdversaryMode::Pis);
  CHECK(r.kind == RoundCase::CloseCommunication);
  CHECK(r.steps.size() == 4);
  CHECK(r.states.back().restricted().size() == 8);
  // The c_i are used up; the four hoisted names are the new edges.
  CHECK(r.after.edges.size() == hypergraph_of(r.states.back()).edges.size());
  CHECK(r.after.edges.size() == 4);
  check_round(r);
  // The hoisted names keep the next round symmetric too.
  AdversaryRound r2 = symmetric_round(r.states.back(), r.after, AdversaryMode::Pis, {}, 1);
  check_round(r2);
}

TEST_CASE("bound output extends the automorphism") {
  Network n = ring({}, [](std::size_t) { return std::string("new y in e!(y).y?(u).0"); });
  Automorphism a = rotation(n);
  AdversaryRound r = symmetric_round(n, a, AdversaryMode::Pis);
  CHECK(r.kind == RoundCase::BoundOutput);
  CHECK(r.steps.size() == 4);
  CHECK(r.after.edges.size() == 4);
  std::vector<Name> fresh;
  for (const NetStep& s : r.steps) fresh.push_back(s.label.value);
  for (std::size_t i = 0; i < 4; ++i) CHECK(r.after.edges.at(fresh[i]) == fresh[(i + 1) % 4]);
  check_round(r);
}

TEST_CASE("free output and input rounds") {
  Network out = ring({}, [](std::size_t) { return std::string("e!(a).0"); });
  AdversaryRound r = symmetric_round(out, rotation(out), AdversaryMode::Pis);
  CHECK(r.kind == RoundCase::FreeOutput);
  check_round(r);
  Network in = ring({}, [](std::size_t) { return std::string("e?(z).z!(a).0"); });
  AdversaryRound q = symmetric_round(in, rotation(in), AdversaryMode::Pis);
  CHECK(q.kind == RoundCase::InputMove);
  CHECK(q.steps.size() == 4);
  check_round(q);
}

TEST_CASE("fresh inputs under a random first step") {
  Network in = ring({}, [](std::size_t) { return std::string("e?(z).z!(a).0"); });
  bool saw_fresh = false;
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    AdversaryOptions opts;
    opts.seed = seed;
    AdversaryRun run = run_adversary(in, rotation(in), 2, AdversaryMode::Pis, opts);
    for (const auto& r : run.rounds) {
      check_round(r);
      if (r.kind == RoundCase::InputMove && r.after.edges.size() > r.before.edges.size()) saw_fresh = true;
    }
  }
  CHECK(saw_fresh);
}

TEST_CASE("separate two-node fixture: fifty rounds without a leader") {
  Fixture f = build_two_node_separate();
  AdversaryRun run = run_adversary(f.network, f.automorphism, 50, AdversaryMode::Pis);
  CHECK_FALSE(run.stuck);
  CHECK(run.rounds.size() == 50);
  std::size_t prev = 0;
  for (const auto& r : run.rounds) {
    CHECK(r.steps.size() > 0);
    check_round(r);
  }
  for (const auto& [k, lines] : run.notes) {
    CHECK(k > prev);
    prev = k;
  }
  for (const NetStep& s : run.computation.steps)
    for (const LocalMove& m : s.local) CHECK_FALSE((m.label.is_output() && m.label.channel.is_out()));
  CHECK(replays(run.computation));
  std::string trace = format_trace(run.computation, run.notes);
  CHECK(format_trace(read_trace(trace), run.notes) == trace);
}

TEST_CASE("mode and precondition errors") {
  Fixture two = build_two_node();
  CHECK_THROWS_AS(symmetric_round(two.network, two.automorphism, AdversaryMode::Pis), ModeMismatch);
  Fixture ring4 = build_ring4();
  CHECK_THROWS_AS(symmetric_round(ring4.network, ring4.automorphism, AdversaryMode::Pii), ModeMismatch);
  Fixture pii = build_pii_ring();
  // The rotation puts neighbours in one orbit.
  Automorphism rot;
  for (const auto& a : network_automorphisms(pii.network))
    if (orbits(a).orbits.size() == 1 && is_symmetric(pii.network, a)) rot = a;
  REQUIRE(orbits(rot).orbits.size() == 1);
  CHECK_THROWS_AS(symmetric_round(pii.network, rot, AdversaryMode::Pii), PreconditionError);
  CHECK_THROWS_AS(symmetric_round(pii.network, pii.automorphism, AdversaryMode::Pis), PreconditionError);
  CHECK_THROWS_AS(parse_adversary_mode("pim"), PreconditionError);
}

TEST_CASE("a stuck network has no step") {
  Network n({}, {parse_process("0"), parse_process("0")});
  Automorphism swap;
  swap.nodes = {{0, 1}, {1, 0}};
  CHECK_THROWS_AS(symmetric_round(n, swap, AdversaryMode::Pis), NoStepAvailable);
  AdversaryRun run = run_adversary(n, swap, 5, AdversaryMode::Pis);
  CHECK(run.stuck);
  CHECK(run.rounds.empty());
  // Only announcements are left: also stuck for the adversary.
  Network outs({}, {parse_process("out!(0).0"), parse_process("out!(1).0")});
  Automorphism num = identity_automorphism(hypergraph_of(outs));
  num.nodes = {{0, 1}, {1, 0}};
  num.edges[Name::num(0)] = Name::num(1);
  num.edges[Name::num(1)] = Name::num(0);
  CHECK_THROWS_AS(symmetric_round(outs, num, AdversaryMode::Pis), NoStepAvailable);
}

TEST_CASE("pi_I ring keeps orbits apart") {
  Fixture f = build_pii_ring();
  for (bool fair : {false, true}) {
    AdversaryOptions opts;
    opts.fair = fair;
    AdversaryRun run = run_adversary(f.network, f.automorphism, 20, AdversaryMode::Pii, opts);
    CHECK(run.rounds.size() == 20);
    for (const auto& r : run.rounds) check_round(r);
    CHECK(connectivity_monitor(run.computation, f.automorphism).empty());
  }
}

TEST_CASE("value-passing CCS mode") {
  // Channels a_i are shared by i and i+1 only; values never become channels.
  Network n = ring({"a0", "a1", "a2", "a3"}, [](std::size_t i) {
    return "!" + idx("a", i) + "!(m).0 | !" + idx("a", i + 3) + "?(v).tau.0";
  });
  Automorphism swap;
  for (const auto& a : network_automorphisms(n))
    if (orbits(a).orbits.size() == 2 && is_well_balanced(a) && is_symmetric(n, a) && a.node(0) == 2) swap = a;
  REQUIRE(swap.nodes.size() == 4);
  AdversaryRun run = run_adversary(n, swap, 10, AdversaryMode::Ccs);
  CHECK(run.rounds.size() == 10);
  for (const auto& r : run.rounds) check_round(r);
  CHECK(connectivity_monitor(run.computation, swap, true).empty());
}

TEST_CASE("connectivity monitor") {
  Fixture ring4 = build_ring4();
  Automorphism swap = parse_automorphism("(0 2)(1 3)", hypergraph_of(ring4.network));
  CHECK(connectivity_monitor(Computation(ring4.network), swap).empty());
  Computation phase1 = drive_ring4_phase1(ring4.network);
  auto v = connectivity_monitor(phase1, swap);
  REQUIRE_FALSE(v.empty());
  CHECK(std::any_of(v.begin(), v.end(), [](const ConnectivityViolation& x) { return x.intra_orbit; }));
}

TEST_CASE("seeded selection is reproducible") {
  Fixture f = build_two_node_separate();
  AdversaryOptions opts;
  opts.seed = 99;
  auto a = run_adversary(f.network, f.automorphism, 10, AdversaryMode::Pis, opts);
  auto b = run_adversary(f.network, f.automorphism, 10, AdversaryMode::Pis, opts);
  CHECK(format_trace(a.computation, a.notes) == format_trace(b.computation, b.notes));
}
