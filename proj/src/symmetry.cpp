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

#include "pielect/symmetry.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "pielect/error.hpp"
#include "text.hpp"

namespace pielect {

std::size_t Automorphism::node(std::size_t n) const {
  auto it = nodes.find(n);
  if (it == nodes.end()) throw DomainError("node " + std::to_string(n) + " outside the automorphism");
  return it->second;
}

Name Automorphism::apply(const Name& n) const {
  if (n.is_out()) return n;
  if (auto it = edges.find(n); it != edges.end()) return it->second;
  if (n.numeric())
    if (auto it = nodes.find(static_cast<std::size_t>(n.value())); it != nodes.end()) return Name::num(it->second);
  throw DomainError("name " + n.str() + " is not mapped by the automorphism");
}

bool Automorphism::is_identity() const {
  for (const auto& [k, v] : nodes)
    if (k != v) return false;
  for (const auto& [k, v] : edges)
    if (k != v) return false;
  return true;
}

Automorphism identity_automorphism(const Hypergraph& h) {
  Automorphism a;
  for (auto n : h.nodes) a.nodes[n] = n;
  for (const auto& [x, e] : h.edges) a.edges[x] = x;
  return a;
}

Automorphism compose(const Automorphism& a, const Automorphism& b) {
  Automorphism out;
  for (const auto& [k, v] : b.nodes) {
    auto it = a.nodes.find(v);
    if (it == a.nodes.end() || a.nodes.size() != b.nodes.size()) throw DomainError("compose: node domains differ");
    out.nodes[k] = it->second;
  }
  for (const auto& [k, v] : b.edges) {
    auto it = a.edges.find(v);
    if (it == a.edges.end() || a.edges.size() != b.edges.size()) throw DomainError("compose: edge domains differ");
    out.edges[k] = it->second;
  }
  return out;
}

Automorphism inverse(const Automorphism& a) {
  Automorphism out;
  for (const auto& [k, v] : a.nodes) out.nodes[v] = k;
  for (const auto& [k, v] : a.edges) out.edges[v] = k;
  return out;
}

Automorphism power(const Automorphism& a, std::size_t e) {
  Automorphism out;
  for (const auto& [k, v] : a.nodes) out.nodes[k] = k;
  for (const auto& [k, v] : a.edges) out.edges[k] = k;
  for (std::size_t i = 0; i < e; ++i) out = compose(a, out);
  return out;
}

namespace {

template <typename K>
std::size_t cycle_lcm(const std::map<K, K>& m) {
  std::size_t l = 1;
  std::map<K, bool> seen;
  for (const auto& [k, v] : m) {
    if (seen[k]) continue;
    std::size_t len = 0;
    K cur = k;
    do {
      seen[cur] = true;
      cur = m.at(cur);
      ++len;
    } while (!(cur == k));
    l = std::lcm(l, len);
  }
  return l;
}

}  // namespace

OrbitPartition orbits(const Automorphism& a) {
  OrbitPartition out;
  std::map<std::size_t, bool> seen;
  for (const auto& [k, v] : a.nodes) {
    if (seen[k]) continue;
    std::vector<std::size_t> orb;
    std::size_t cur = k;
    do {
      seen[cur] = true;
      orb.push_back(cur);
      cur = a.nodes.at(cur);
    } while (cur != k);
    out.orbits.push_back(orb);
  }
  out.order = std::lcm(cycle_lcm(a.nodes), cycle_lcm(a.edges));
  return out;
}

bool is_well_balanced(const Automorphism& a) {
  auto part = orbits(a);
  for (const auto& o : part.orbits)
    if (o.size() != part.orbits.front().size()) return false;
  return true;
}

bool is_automorphism(const Hypergraph& h, const Automorphism& a) {
  if (a.nodes.size() != h.nodes.size() || a.edges.size() != h.edges.size()) return false;
  std::set<std::size_t> img;
  for (auto n : h.nodes) {
    auto it = a.nodes.find(n);
    if (it == a.nodes.end() || !h.nodes.count(it->second)) return false;
    img.insert(it->second);
  }
  if (img.size() != h.nodes.size()) return false;
  NameSet eimg;
  for (const auto& [x, e] : h.edges) {
    auto it = a.edges.find(x);
    if (it == a.edges.end()) return false;
    auto target = h.edges.find(it->second);
    if (target == h.edges.end()) return false;
    eimg.insert(it->second);
    std::set<std::size_t> mapped;
    for (auto n : e.type) mapped.insert(a.nodes.at(n));
    if (mapped != target->second.type || e.value != target->second.value) return false;
  }
  return eimg.size() == h.edges.size();
}

bool is_network_automorphism(const Network& n, const Automorphism& a) {
  Hypergraph h = hypergraph_of(n);
  if (!is_automorphism(h, a)) return false;
  for (const auto& [x, y] : a.edges) {
    if (x.numeric() && h.nodes.count(static_cast<std::size_t>(x.value()))) {
      if (!(y == Name::num(a.nodes.at(static_cast<std::size_t>(x.value()))))) return false;
    }
    if (n.is_restricted(x) != n.is_restricted(y)) return false;
  }
  return true;
}

std::vector<Automorphism> all_automorphisms(const Hypergraph& h, std::size_t max_nodes, std::size_t max_results) {
  validate(h);
  if (h.nodes.size() > max_nodes)
    throw BudgetError("automorphism search limited to " + std::to_string(max_nodes) + " nodes");
  std::vector<std::size_t> base(h.nodes.begin(), h.nodes.end());
  std::vector<std::size_t> perm = base;
  // Edges grouped by (type, value flag).
  using Key = std::pair<std::set<std::size_t>, bool>;
  std::map<Key, std::vector<Name>> groups;
  for (const auto& [x, e] : h.edges) groups[{e.type, e.value}].push_back(x);

  std::vector<Automorphism> out;
  do {
    Automorphism a;
    for (std::size_t i = 0; i < base.size(); ++i) a.nodes[base[i]] = perm[i];
    // Source group -> target group, which must have the same size.
    std::vector<std::pair<const std::vector<Name>*, std::vector<Name>>> pairs;
    bool ok = true;
    for (const auto& [key, xs] : groups) {
      std::set<std::size_t> img;
      for (auto n : key.first) img.insert(a.nodes[n]);
      auto it = groups.find({img, key.second});
      if (it == groups.end() || it->second.size() != xs.size()) {
        ok = false;
        break;
      }
      pairs.push_back({&xs, it->second});
    }
    if (!ok) continue;
    // Enumerate bijections group by group.
    std::vector<std::vector<Name>> targets;
    for (auto& p : pairs) targets.push_back(p.second);
    for (auto& t : targets) std::sort(t.begin(), t.end());
    while (true) {
      Automorphism b = a;
      for (std::size_t g = 0; g < pairs.size(); ++g)
        for (std::size_t j = 0; j < pairs[g].first->size(); ++j) b.edges[(*pairs[g].first)[j]] = targets[g][j];
      out.push_back(std::move(b));
      if (out.size() > max_results) throw BudgetError("too many automorphisms");
      std::size_t g = 0;
      for (; g < targets.size(); ++g)
        if (std::next_permutation(targets[g].begin(), targets[g].end())) break;
      if (g == targets.size()) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Automorphism> network_automorphisms(const Network& n, std::size_t max_nodes) {
  std::vector<Automorphism> out;
  for (auto& a : all_automorphisms(hypergraph_of(n), max_nodes))
    if (is_network_automorphism(n, a)) out.push_back(std::move(a));
  return out;
}

std::string format_automorphism(const Automorphism& a) {
  std::ostringstream os;
  std::map<std::size_t, bool> seen;
  bool any = false;
  for (const auto& [k, v] : a.nodes) {
    if (seen[k] || k == v) continue;
    any = true;
    os << "(";
    std::size_t cur = k;
    bool first = true;
    do {
      seen[cur] = true;
      os << (first ? "" : " ") << cur;
      first = false;
      cur = a.nodes.at(cur);
    } while (cur != k);
    os << ")";
  }
  if (!any) os << "()";
  os << " {";
  bool first = true;
  for (const auto& [k, v] : a.edges) {
    if (k == v) continue;
    os << (first ? "" : ",") << k.str() << "->" << v.str();
    first = false;
  }
  os << "}";
  return os.str();
}

Automorphism parse_automorphism(const std::string& text, const Hypergraph& h) {
  Automorphism a = identity_automorphism(h);
  std::size_t i = 0;
  auto fail = [&](const std::string& msg) { throw ParseError(msg, 1, static_cast<int>(i + 1)); };
  auto skip = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  std::set<std::size_t> moved;
  skip();
  while (i < text.size() && text[i] == '(') {
    ++i;
    std::vector<std::size_t> cyc;
    while (true) {
      skip();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i) fail("expected a node index");
      std::size_t n = text::parse_index(text.substr(i, j - i));
      if (!h.nodes.count(n) || !moved.insert(n).second) fail("bad node in cycle");
      cyc.push_back(n);
      i = j;
    }
    for (std::size_t c = 0; c < cyc.size(); ++c) a.nodes[cyc[c]] = cyc[(c + 1) % cyc.size()];
    skip();
  }
  if (i < text.size() && text[i] == '{') {
    auto close = text.find('}', i);
    if (close == std::string::npos) fail("expected '}'");
    for (const auto& part : text::split(text.substr(i + 1, close - i - 1), ',')) {
      std::string t = text::trim(part);
      if (t.empty()) continue;
      auto arrow = t.find("->");
      if (arrow == std::string::npos) fail("expected 'x->y'");
      Name from = Name::parse(text::trim(t.substr(0, arrow)));
      Name to = Name::parse(text::trim(t.substr(arrow + 2)));
      if (!h.edges.count(from) || !h.edges.count(to)) fail("unknown edge in map");
      a.edges[from] = to;
    }
    i = close + 1;
  }
  skip();
  if (i != text.size()) fail("trailing characters");
  return a;
}

Process sigma_rename(const Automorphism& a, const Process& p) {
  NameMap m;
  for (const auto& n : free_names(p)) m[n] = a.apply(n);
  return rename_free(p, m);
}

ActionLabel sigma_rename(const Automorphism& a, const ActionLabel& mu) {
  switch (mu.kind) {
    case ActionLabel::Kind::Silent:
      return mu;
    case ActionLabel::Kind::BoundOutput:
      return ActionLabel::bound_output(a.apply(mu.channel), mu.value);
    case ActionLabel::Kind::Input:
      return ActionLabel::input(a.apply(mu.channel), a.apply(mu.value));
    case ActionLabel::Kind::FreeOutput:
      return ActionLabel::free_output(a.apply(mu.channel), a.apply(mu.value));
  }
  return mu;
}

std::vector<std::string> symmetry_witnesses(const Network& n, const Automorphism& a) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n.size(); ++i) out.push_back(canonical_form(sigma_rename(a, n[i])));
  return out;
}

bool is_symmetric(const Network& n, const Automorphism& a) {
  if (!is_network_automorphism(n, a)) throw DomainError("not a network automorphism: " + format_automorphism(a));
  for (std::size_t i = 0; i < n.size(); ++i)
    if (!alpha_equivalent(n[a.node(i)], sigma_rename(a, n[i]))) return false;
  return true;
}

bool is_fully_symmetric(const Network& n) {
  for (const auto& a : network_automorphisms(n))
    if (!is_symmetric(n, a)) return false;
  return true;
}

Automorphism restrict_to(const Automorphism& a, const Hypergraph& h) {
  Automorphism out;
  for (auto n : h.nodes) out.nodes[n] = a.node(n);
  for (const auto& [x, e] : h.edges)
    if (auto it = a.edges.find(x); it != a.edges.end()) out.edges[x] = it->second;
  return out;
}

Automorphism extend_automorphism(const Automorphism& a, const std::vector<std::pair<std::size_t, Name>>& fresh_pairs,
                                 const Hypergraph& new_graph) {
  std::map<std::size_t, Name> y_of;
  std::map<Name, std::size_t> owner;
  for (const auto& [i, y] : fresh_pairs) {
    if (!y.bindable()) throw PreconditionError("fresh name " + y.str() + " cannot be a numeral or out");
    if (!a.nodes.count(i)) throw PreconditionError("fresh pair names unknown node " + std::to_string(i));
    if (y_of.count(i) || owner.count(y)) throw PreconditionError("duplicate fresh pair for node " + std::to_string(i));
    y_of.emplace(i, y);
    owner.emplace(y, i);
  }
  Automorphism out;
  for (auto n : new_graph.nodes) out.nodes[n] = a.node(n);
  for (const auto& [x, e] : new_graph.edges) {
    if (auto it = owner.find(x); it != owner.end()) {
      auto target = y_of.find(a.node(it->second));
      if (target == y_of.end())
        throw PreconditionError("fresh pairs inconsistent with orbit structure at " + x.str());
      out.edges[x] = target->second;
    } else if (auto jt = a.edges.find(x); jt != a.edges.end()) {
      out.edges[x] = jt->second;
    } else {
      throw PreconditionError("edge " + x.str() + " is neither old nor a fresh pair");
    }
  }
  if (!is_automorphism(new_graph, out))
    throw PreconditionError("extension is not an automorphism of the new hypergraph");
  return out;
}

namespace {

NameMap numeral_map(const std::vector<std::size_t>& perm) {
  NameMap m;
  for (std::size_t i = 0; i < perm.size(); ++i) m[Name::num(i)] = Name::num(perm[i]);
  return m;
}

}  // namespace

Network relabel_network(const Network& n, const std::vector<std::size_t>& perm) {
  if (perm.size() != n.size()) throw DomainError("relabel: permutation size mismatch");
  std::vector<Process> comps(n.size());
  NameMap m = numeral_map(perm);
  for (std::size_t i = 0; i < n.size(); ++i) comps.at(perm[i]) = rename_free(n[i], m);
  return Network(n.restricted(), comps);
}

Automorphism relabel_automorphism(const Automorphism& a, const std::vector<std::size_t>& perm) {
  NameMap m = numeral_map(perm);
  auto ren = [&](const Name& x) {
    auto it = m.find(x);
    return it == m.end() ? x : it->second;
  };
  Automorphism out;
  for (const auto& [k, v] : a.nodes) out.nodes[perm.at(k)] = perm.at(v);
  for (const auto& [k, v] : a.edges) out.edges[ren(k)] = ren(v);
  return out;
}

Quotient orbit_quotient(const Network& n, const Automorphism& a) {
  if (a.is_identity()) throw PreconditionError("quotient needs a non-identity automorphism");
  if (!is_well_balanced(a)) throw PreconditionError("quotient needs a well-balanced automorphism");
  OrbitPartition part = orbits(a);
  std::size_t p = part.orbits.size();
  std::size_t q = part.orbits.front().size();
  std::size_t k = n.size();
  std::vector<std::size_t> perm(k);
  for (std::size_t j = 0; j < p; ++j)
    for (std::size_t m = 0; m < q; ++m) perm.at(part.orbits[j][m]) = m * p + j;
  Network rn = relabel_network(n, perm);
  Automorphism ra = relabel_automorphism(a, perm);

  NameMap rho;
  for (std::size_t i = 0; i < k; ++i) rho[Name::num(i)] = Name::num(i / p);
  std::vector<Process> groups;
  for (std::size_t m = 0; m < q; ++m) {
    std::vector<Process> parts;
    for (std::size_t j = 0; j < p; ++j) parts.push_back(rn[m * p + j]);
    groups.push_back(rename_free(parallel(parts), rho));
  }
  Network qn(rn.restricted(), groups);

  Automorphism theta;
  for (std::size_t m = 0; m < q; ++m) theta.nodes[m] = (m + 1) % q;
  for (const auto& [x, e] : hypergraph_of(qn).edges) {
    if (x.numeric() && x.value() < q) {
      theta.edges[x] = Name::num((x.value() + 1) % q);
    } else if (auto it = ra.edges.find(x); it != ra.edges.end()) {
      theta.edges[x] = it->second;
    } else {
      theta.edges[x] = x;
    }
  }

  Quotient out{qn, theta, perm, p, q, {}};
  for (std::size_t i = 0; i < k; ++i) out.numerals[Name::num(i)] = Name::num(perm[i] / p);
  return out;
}

}  // namespace pielect
