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

#include <set>

#include "pielect/election.hpp"
#include "pielect/protocols.hpp"
#include "pielect/syntax.hpp"

using namespace pielect;

namespace {

// Hoisted names get renamed apart, so compare edge types only.
std::multiset<std::set<std::size_t>> edge_types(const Hypergraph& h) {
  std::multiset<std::set<std::size_t>> out;
  for (const auto& [n, e] : h.edges) out.insert(e.type);
  return out;
}

}  // namespace

TEST_CASE("ring index arithmetic") {
  CHECK(RingIndex(5).i == 1);
  CHECK((RingIndex(0) - 1).i == 3);
  CHECK((RingIndex(3) + 3).i == 2);
  CHECK((RingIndex(1) - 7) == RingIndex(2));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t d = 0; d < 9; ++d) CHECK(((RingIndex(i) + d) - d) == RingIndex(i));
}

TEST_CASE("fixture sublanguages") {
  CHECK(classify(build_two_node().network).pi_m);
  CHECK_FALSE(classify(build_two_node().network).pi_s);
  CHECK(classify(build_two_node_separate().network).pi_s);
  CHECK_FALSE(classify(build_ring4().network).pi_s);
  CHECK(classify(build_pii_ring().network).pi_I);
  CHECK(classify(build_quotient_fixture().network).pi_s);
}

TEST_CASE("fixtures are symmetric under their automorphisms") {
  for (const Fixture& f : {build_two_node(), build_two_node_separate(), build_ring4(), build_pii_ring(),
                           build_quotient_fixture()}) {
    CHECK(is_network_automorphism(f.network, f.automorphism));
    CHECK(is_symmetric(f.network, f.automorphism));
    CHECK_FALSE(f.automorphism.is_identity());
  }
}

TEST_CASE("ring is symmetric under every rotation") {
  Fixture f = build_ring4();
  CHECK(orbits(f.automorphism).orbits.size() == 1);
  for (std::size_t e = 0; e < 4; ++e) CHECK(is_symmetric(f.network, power(f.automorphism, e)));
  CHECK(f.network.restricted().size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(alpha_equivalent(f.network[i], ring4_component(i)));
}

TEST_CASE("base case of the choice announces to all three others") {
  Process q0 = ring4_q(1, 0);
  std::set<std::string> channels;
  Process p = q0;
  for (int hop = 0; hop < 4; ++hop) {
    REQUIRE(p.kind() == Process::Kind::Sum);
    REQUIRE(p.branches().size() == 1);
    const Prefix& pre = p.branches()[0].prefix;
    CHECK(pre.is_output());
    CHECK(pre.object == Name::num(1));
    channels.insert(pre.channel.str());
    p = p.branches()[0].cont;
  }
  CHECK(p.is_nil());
  CHECK(channels == std::set<std::string>{"y2", "y3", "y0", "out"});
}

TEST_CASE("example hypergraphs match the ring before and after the first phase") {
  auto figs = build_figure_hypergraphs();
  Fixture f = build_ring4();
  CHECK(figs.at("ring4-before") == hypergraph_of(f.network));
  Computation c = drive_ring4_phase1(f.network);
  CHECK(c.length() > 0);
  Hypergraph after = hypergraph_of(c.end());
  CHECK(figs.at("ring4-after").nodes == after.nodes);
  CHECK(edge_types(figs.at("ring4-after")) == edge_types(after));
  CHECK(after.connected_pairs().size() == 6);
  for (const auto& [name, h] : figs) CHECK_NOTHROW(validate(h));
  // Cyclic graphs: every node has degree two in H1.
  for (std::size_t n : figs.at("H1").nodes) {
    std::size_t deg = 0;
    for (const auto& [e, edge] : figs.at("H1").edges) deg += edge.type.count(n);
    CHECK(deg == 2);
  }
}

TEST_CASE("random ring runs elect one leader") {
  std::set<std::uint64_t> winners;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RingRun r = run_ring4(seed);
    REQUIRE(r.terminated);
    REQUIRE(r.winner.has_value());
    winners.insert(*r.winner);
    CHECK(r.announcements.size() == 4);
    std::set<std::size_t> announcers;
    for (const auto& [i, v] : r.announcements) {
      announcers.insert(i);
      CHECK(v == Name::num(*r.winner));
    }
    CHECK(announcers.size() == 4);
    CHECK(r.order_ok);
    CHECK(r.dominations == 3);
    CHECK(observe_winners(r.computation) == r.announcements);
  }
  // The scheduler is not biased towards a single node.
  CHECK(winners.size() > 1);
}

TEST_CASE("same seed, same run") {
  RingRun a = run_ring4(42);
  RingRun b = run_ring4(42);
  CHECK(a.computation.length() == b.computation.length());
  CHECK(a.winner == b.winner);
  CHECK(format_trace(a.computation) == format_trace(b.computation));
}

TEST_CASE("own names come from the outermost restrictions") {
  Fixture f = build_ring4();
  auto own = ring4_own_names(f.network);
  REQUIRE(own.size() == 4);
  CHECK(std::set<Name>(own.begin(), own.end()).size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    REQUIRE(f.network[i].kind() == Process::Kind::Restriction);
    CHECK(f.network[i].name() == own[i]);
  }
}
