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

#include "generators.hpp"
#include "pielect/error.hpp"
#include "pielect/syntax.hpp"

using namespace pielect;

namespace {

Process P(const std::string& s) { return parse_process(s); }
Name N(const std::string& s) { return Name::parse(s); }

std::vector<Process> sample_terms(std::uint64_t seed, std::size_t count, bool separate = true) {
  Rng rng(seed);
  testing::TermShape shape;
  shape.separate = separate;
  testing::TermGen gen(rng, shape);
  std::vector<Process> out;
  while (out.size() < count) {
    Process p = gen.next();
    if (p.size() <= 10) out.push_back(p);
  }
  return out;
}

}  // namespace

TEST_CASE("names") {
  CHECK(Name::parse("12").numeric());
  CHECK(Name::parse("12").value() == 12);
  CHECK(Name::parse("x'").symbolic());
  CHECK(Name::out().is_out());
  CHECK_FALSE(Name::out().bindable());
  CHECK_FALSE(Name::num(3).bindable());
  CHECK(Name::num(9) < Name::sym("a"));
  CHECK_THROWS_AS(Name::sym("new"), ParseError);
  CHECK_THROWS_AS(Name::sym("1a"), ParseError);
  FreshSupply fs({Name::sym("x'")});
  CHECK(fs.fresh(Name::sym("x")).str() == "x'2");
  CHECK(fs.fresh_indexed("f").str() == "f0");
}

TEST_CASE("free and bound names") {
  CHECK(free_names(P("new x in x!(y).0")) == NameSet{N("y")});
  CHECK(free_names(P("x?(z).z!(w).0")) == NameSet{N("x"), N("w")});
  CHECK(bound_names(P("x?(z).new w in 0")) == NameSet{N("z"), N("w")});
  CHECK(free_names(P("out!(3).0")) == NameSet{Name::out(), Name::num(3)});
  auto order = free_names_in_order(P("b!(a).0 | a?(z).c!(z).0"));
  CHECK(order == std::vector<Name>{N("b"), N("a"), N("c")});
}

TEST_CASE("parse and print") {
  CHECK(print(P("x!(y)")) == "x!(y).0");
  CHECK(print(P("x?(z).0 + y?(w).0")) == "x?(z).0 + y?(w).0");
  CHECK(print(P("new x in (x!(y).0 | x?(z).0)")) == "new x in (x!(y).0 | x?(z).0)");
  CHECK(P("new x in (x!(y).0 | x?(z).0)").kind() == Process::Kind::Restriction);
  CHECK(P("!tau.0").kind() == Process::Kind::Replication);
  CHECK(P("0").is_nil());
  CHECK(P("a!(b).0 | b!(c).0 | c!(d).0").kind() == Process::Kind::Parallel);
}

TEST_CASE("parse errors carry positions") {
  try {
    P("x!(y).0 +");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
    CHECK(e.column >= 9);
  }
  CHECK_THROWS_AS(P("x?(3).0"), Error);
  CHECK_THROWS_AS(P("new out in 0"), Error);
  CHECK_THROWS_AS(P("x!(y).0 + 0"), ParseError);
  CHECK_THROWS_AS(P("(x!(y).0"), ParseError);
}

TEST_CASE("substitution avoids capture") {
  Process p = P("new y in x!(y).0");
  Process q = substitute(p, N("y"), N("x"));
  CHECK(free_names(q) == NameSet{N("y")});
  CHECK(alpha_equivalent(q, P("new w in y!(w).0")));
  CHECK(alpha_equivalent(substitute(P("x?(z).z!(x).0"), N("a"), N("x")), P("a?(u).u!(a).0")));
  // Bound occurrences are untouched.
  CHECK(substitute(P("x?(x).x!(y).0"), N("a"), N("x")) == P("a?(x).x!(y).0"));
}

TEST_CASE("simultaneous renaming") {
  NameMap swap{{N("a"), N("b")}, {N("b"), N("a")}};
  CHECK(rename_free(P("a!(b).0"), swap) == P("b!(a).0"));
  CHECK(alpha_equivalent(rename_free(P("new b in a!(b).0"), {{N("a"), N("b")}}), P("new c in b!(c).0")));
}

TEST_CASE("alpha equivalence") {
  CHECK(alpha_equivalent(P("new x in x!(y).0"), P("new z in z!(y).0")));
  CHECK_FALSE(alpha_equivalent(P("new x in x!(y).0"), P("new y in y!(y).0")));
  CHECK(alpha_equivalent(P("a?(u).u!(u).0"), P("a?(v).v!(v).0")));
  CHECK_FALSE(alpha_equivalent(P("a!(b).0 | c!(d).0"), P("c!(d).0 | a!(b).0")));
}

TEST_CASE("classification") {
  auto two = classify(P("x0!(y).out!(0).0 + x1?(y).out!(1).0"));
  CHECK(two.pi_m);
  CHECK_FALSE(two.pi_s);
  auto sep = classify(P("x?(y).0 + z?(w).0 | a!(b).0"));
  CHECK(sep.pi_s);
  CHECK(sep.pi_i);
  CHECK_FALSE(sep.pi_nc);
  auto async = classify(P("a!(b).0 | a?(z).z!(c).0"));
  CHECK(async.pi_nc);
  CHECK(async.pi_a);
  auto nc = classify(P("a!(b).c!(d).0"));
  CHECK(nc.pi_nc);
  CHECK_FALSE(nc.pi_a);
  CHECK(classify(P("new w in x!(w).0")).pi_I);
  CHECK_FALSE(classify(P("x!(w).0")).pi_I);
  CHECK(classify(P("x!(y).0 | x?(z).0")).ccs_vp);
  CHECK_FALSE(classify(P("x?(z).z!(y).0")).ccs_vp);
}

TEST_CASE("property: printing round-trips through the parser") {
  for (const Process& p : sample_terms(11, 300, false)) {
    INFO(print(p));
    CHECK(parse_process(print(p)) == p);
  }
}

TEST_CASE("property: refreshing binders preserves alpha equivalence and free names") {
  for (const Process& p : sample_terms(12, 300, false)) {
    FreshSupply fs(all_names(p));
    Process q = refresh_binders(p, fs);
    INFO(print(p));
    CHECK(alpha_equivalent(p, q));
    CHECK(free_names(p) == free_names(q));
    CHECK(canonical_form(p) == canonical_form(q));
    for (const Name& b : bound_names(q)) CHECK_FALSE(all_names(p).count(b));
  }
}

TEST_CASE("property: renaming by a permutation is invertible") {
  NameMap fwd{{N("a"), N("b")}, {N("b"), N("c")}, {N("c"), N("a")}};
  NameMap back{{N("b"), N("a")}, {N("c"), N("b")}, {N("a"), N("c")}};
  for (const Process& p : sample_terms(13, 300, false)) {
    INFO(print(p));
    CHECK(alpha_equivalent(rename_free(rename_free(p, fwd), back), p));
    CHECK(rename_free(p, fwd).size() == p.size());
  }
}

TEST_CASE("property: separate generator yields separate-choice terms") {
  for (const Process& p : sample_terms(14, 300)) CHECK(classify(p).pi_s);
}
