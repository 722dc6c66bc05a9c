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
#include <map>

#include "pielect/error.hpp"
#include "pielect/protocols.hpp"
#include "pielect/symmetry.hpp"
#include "pielect/syntax.hpp"

using namespace pielect;

namespace {

Name N(const std::string& s) { return Name::parse(s); }

std::vector<std::size_t> sizes(const Automorphism& a) {
  std::vector<std::size_t> s;
  for (const auto& o : orbits(a).orbits) s.push_back(o.size());
  return s;
}

std::vector<Automorphism> well_balanced(const Hypergraph& h) {
  std::vector<Automorphism> out;
  for (const auto& a : all_automorphisms(h))
    if (is_well_balanced(a)) out.push_back(a);
  return out;
}

}  // namespace

TEST_CASE("hypergraph format round-trips") {
  for (const auto& [name, h] : build_figure_hypergraphs()) {
    INFO(name);
    CHECK(parse_hypergraph(format_hypergraph(h)) == h);
  }
  CHECK_THROWS_AS(validate(Hypergraph{{0}, {{N("e"), Edge{{0, 1}, false}}}}), DomainError);
}

TEST_CASE("single node with a self edge has only the identity") {
  Hypergraph h{{0}, {{N("e"), Edge{{0}, false}}}};
  auto all = all_automorphisms(h);
  REQUIRE(all.size() == 1);
  CHECK(all[0].is_identity());
}

TEST_CASE("example hypergraphs: six-cycles admit one, two and three orbit rotations") {
  auto fig = build_figure_hypergraphs();
  for (const char* name : {"H1", "H2"}) {
    INFO(name);
    std::set<std::vector<std::size_t>> shapes;
    for (const auto& a : well_balanced(fig.at(name))) shapes.insert(sizes(a));
    CHECK(shapes.count({6}));
    CHECK(shapes.count({3, 3}));
    CHECK(shapes.count({2, 2, 2}));
  }
  Hypergraph h1 = fig.at("H1");
  Automorphism r;
  for (std::size_t i = 0; i < 6; ++i) {
    r.nodes[i] = (i + 1) % 6;
    r.edges[Name::sym("e" + std::to_string(i))] = Name::sym("e" + std::to_string((i + 1) % 6));
  }
  REQUIRE(is_automorphism(h1, r));
  CHECK(sizes(compose(r, r)) == std::vector<std::size_t>{3, 3});
  CHECK(orbits(r).order == 6);
  CHECK(sizes(identity_automorphism(h1)) == std::vector<std::size_t>(6, 1));
  CHECK(is_well_balanced(identity_automorphism(h1)));
}

TEST_CASE("example hypergraphs: triple edges give exactly two balanced rotations") {
  auto wb = well_balanced(build_figure_hypergraphs().at("H3"));
  std::vector<Automorphism> nontrivial;
  for (const auto& a : wb)
    if (!a.is_identity()) nontrivial.push_back(a);
  REQUIRE(nontrivial.size() == 2);
  for (const auto& a : nontrivial) CHECK(sizes(a) == std::vector<std::size_t>{3, 3});
}

TEST_CASE("example hypergraphs: the central node forbids balanced symmetry") {
  auto wb = well_balanced(build_figure_hypergraphs().at("H4"));
  REQUIRE(wb.size() == 1);
  CHECK(wb[0].is_identity());
}

TEST_CASE("the ring has the eight symmetries of the square") {
  auto fig = build_figure_hypergraphs();
  CHECK(all_automorphisms(fig.at("ring4-before")).size() == 8);
  auto ring = build_ring4();
  CHECK(hypergraph_of(ring.network) == fig.at("ring4-before"));
  CHECK(network_automorphisms(ring.network).size() == 8);
  Automorphism swap = parse_automorphism("(0 2)(1 3) {0->2,1->3,2->0,3->1,x0->x2,x1->x3,x2->x0,x3->x1}",
                                         fig.at("ring4-before"));
  CHECK(is_automorphism(fig.at("ring4-before"), swap));
  // No edge joins 0 with 2 or 1 with 3.
  for (const auto& [x, e] : fig.at("ring4-before").edges) {
    CHECK_FALSE((e.type.count(0) && e.type.count(2)));
    CHECK_FALSE((e.type.count(1) && e.type.count(3)));
  }
}

TEST_CASE("ring components are symmetric under rotations, not reflections") {
  Fixture ring = build_ring4();
  std::size_t symmetric = 0;
  for (const auto& a : network_automorphisms(ring.network)) {
    bool rotation = true;
    for (std::size_t i = 0; i < 4; ++i)
      if (a.node((i + 1) % 4) != (a.node(i) + 1) % 4) rotation = false;
    CHECK(is_symmetric(ring.network, a) == rotation);
    if (is_symmetric(ring.network, a)) ++symmetric;
  }
  CHECK(symmetric == 4);
}

TEST_CASE("group laws on fixture hypergraphs") {
  for (const auto& [name, h] : build_figure_hypergraphs()) {
    INFO(name);
    auto all = all_automorphisms(h);
    std::set<Automorphism> group(all.begin(), all.end());
    Automorphism id = identity_automorphism(h);
    CHECK(group.count(id));
    for (const auto& a : all) {
      CHECK(compose(a, id) == a);
      CHECK(compose(a, inverse(a)) == id);
      CHECK(compose(a, power(a, orbits(a).order - 1)) == id);
      std::set<std::size_t> covered;
      for (const auto& o : orbits(a).orbits)
        for (auto v : o) CHECK(covered.insert(v).second);
      CHECK(covered == h.nodes);
    }
    for (std::size_t i = 0; i < all.size(); i += 7)
      for (std::size_t j = 0; j < all.size(); j += 5) CHECK(group.count(compose(all[i], all[j])));
  }
}

TEST_CASE("automorphism text round-trips") {
  Fixture f = build_two_node();
  Hypergraph h = hypergraph_of(f.network);
  CHECK(format_automorphism(f.automorphism) == "(0 1) {0->1,1->0,x0->x1,x1->x0}");
  CHECK(parse_automorphism(format_automorphism(f.automorphism), h) == f.automorphism);
  CHECK(format_automorphism(identity_automorphism(h)) == "() {}");
  CHECK_THROWS_AS(parse_automorphism("(0 1 2)", h), ParseError);
  CHECK_THROWS_AS(parse_automorphism("(0 1) {q->x0}", h), ParseError);
}

TEST_CASE("sigma renaming") {
  Automorphism a;
  a.nodes = {{0, 0}};
  a.edges = {{N("x"), N("y")}, {N("y"), N("x")}, {N("z"), N("z")}};
  CHECK(sigma_rename(a, parse_process("x!(z).0")) == parse_process("y!(z).0"));
  CHECK(alpha_equivalent(sigma_rename(a, parse_process("new x in x!(y).0")), parse_process("new w in w!(x).0")));
  CHECK(sigma_rename(a, ActionLabel::free_output(N("x"), N("z"))).str() == "y!z");
  CHECK(sigma_rename(a, parse_process("out!(0).0")) == parse_process("out!(0).0"));
  CHECK_THROWS_AS(sigma_rename(a, parse_process("q!(z).0")), DomainError);
}

TEST_CASE("two-node symmetry") {
  Fixture f = build_two_node();
  CHECK(alpha_equivalent(sigma_rename(f.automorphism, f.network[0]), f.network[1]));
  CHECK(is_symmetric(f.network, f.automorphism));
  CHECK(is_symmetric(f.network, identity_automorphism(hypergraph_of(f.network))));
  // Swapping only the channels is an automorphism the network does not respect.
  Automorphism chans = identity_automorphism(hypergraph_of(f.network));
  chans.edges[N("x0")] = N("x1");
  chans.edges[N("x1")] = N("x0");
  CHECK(is_network_automorphism(f.network, chans));
  CHECK_FALSE(is_symmetric(f.network, chans));
  CHECK_FALSE(is_fully_symmetric(f.network));
}

TEST_CASE("asymmetric components") {
  // The swap is not even an automorphism: x and y touch node 1 only.
  Network n({}, {parse_process("0"), parse_process("x!(y).0")});
  Automorphism a = identity_automorphism(hypergraph_of(n));
  a.nodes = {{0, 1}, {1, 0}};
  CHECK_THROWS_AS(is_symmetric(n, a), DomainError);
  Network m({}, {parse_process("x!(y).0"), parse_process("x?(z).y!(z).0")});
  Automorphism b = identity_automorphism(hypergraph_of(m));
  b.nodes = {{0, 1}, {1, 0}};
  CHECK(is_network_automorphism(m, b));
  CHECK_FALSE(is_symmetric(m, b));
}

TEST_CASE("symmetry holds for all powers") {
  for (const Fixture& f : {build_two_node(), build_ring4(), build_pii_ring(), build_quotient_fixture()}) {
    for (std::size_t e = 0; e < orbits(f.automorphism).order; ++e)
      CHECK(is_symmetric(f.network, power(f.automorphism, e)));
  }
}

TEST_CASE("extension follows the orbit") {
  Fixture f = build_two_node();
  Network n({N("x0"), N("x1"), N("y0"), N("y1")},
            {parse_process("y0!(x0).0 | y1?(v).0"), parse_process("y1!(x1).0 | y0?(v).0")});
  auto ext = extend_automorphism(f.automorphism, {{0, N("y0")}, {1, N("y1")}}, hypergraph_of(n));
  CHECK(ext.edges.at(N("y0")) == N("y1"));
  CHECK(ext.edges.at(N("y1")) == N("y0"));
  CHECK(orbits(ext).orbits.size() == orbits(f.automorphism).orbits.size());
  auto same = extend_automorphism(f.automorphism, {}, hypergraph_of(f.network));
  CHECK(same == restrict_to(f.automorphism, hypergraph_of(f.network)));
  CHECK_THROWS_AS(extend_automorphism(f.automorphism, {{0, N("y0")}}, hypergraph_of(n)), PreconditionError);
  CHECK_THROWS_AS(extend_automorphism(f.automorphism, {{0, Name::num(5)}}, hypergraph_of(n)), PreconditionError);
}

TEST_CASE("orbit quotient") {
  Fixture f = build_quotient_fixture();
  Quotient q = orbit_quotient(f.network, f.automorphism);
  CHECK(q.p == 2);
  CHECK(q.q == 2);
  CHECK(q.network.size() == 2);
  CHECK(orbits(q.theta).orbits.size() == 1);
  CHECK(is_symmetric(q.network, q.theta));
  CHECK(q.numerals.at(Name::num(0)) == Name::num(0));
  CHECK(q.numerals.at(Name::num(2)) == Name::num(1));
  CHECK_THROWS_AS(orbit_quotient(f.network, identity_automorphism(hypergraph_of(f.network))), PreconditionError);
}
