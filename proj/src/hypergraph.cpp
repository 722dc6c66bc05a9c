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

#include "pielect/hypergraph.hpp"

#include <sstream>

#include "pielect/error.hpp"
#include "text.hpp"

namespace pielect {

std::set<std::pair<std::size_t, std::size_t>> Hypergraph::connected_pairs(bool ignore_value_edges) const {
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (const auto& [name, e] : edges) {
    if (ignore_value_edges && e.value) continue;
    for (auto a = e.type.begin(); a != e.type.end(); ++a)
      for (auto b = std::next(a); b != e.type.end(); ++b) out.insert({*a, *b});
  }
  return out;
}

bool Hypergraph::connected(std::size_t a, std::size_t b, bool ignore_value_edges) const {
  if (a > b) std::swap(a, b);
  for (const auto& [name, e] : edges) {
    if (ignore_value_edges && e.value) continue;
    if (e.type.count(a) && e.type.count(b)) return true;
  }
  return false;
}

void validate(const Hypergraph& h) {
  if (h.nodes.empty()) throw DomainError("hypergraph has no nodes");
  for (const auto& [name, e] : h.edges)
    for (auto n : e.type)
      if (!h.nodes.count(n)) throw DomainError("edge " + name.str() + " touches unknown node " + std::to_string(n));
}

std::string format_hypergraph(const Hypergraph& h) {
  std::ostringstream os;
  for (auto n : h.nodes) os << "node " << n << "\n";
  for (const auto& [name, e] : h.edges) {
    os << "edge " << name.str() << ":";
    bool first = true;
    for (auto n : e.type) {
      os << (first ? " " : ",") << n;
      first = false;
    }
    if (e.value) os << " value";
    os << "\n";
  }
  return os.str();
}

Hypergraph parse_hypergraph(const std::string& text) {
  Hypergraph h;
  int lineno = 0;
  for (const auto& raw : text::lines(text)) {
    ++lineno;
    std::string line = text::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    try {
      if (text::starts_with(line, "node ")) {
        h.nodes.insert(text::parse_index(text::trim(line.substr(5))));
      } else if (text::starts_with(line, "edge ")) {
        auto colon = line.find(':');
        if (colon == std::string::npos) throw ParseError("expected ':'", lineno, 1);
        Name name = Name::parse(text::trim(line.substr(5, colon - 5)));
        std::string rest = text::trim(line.substr(colon + 1));
        Edge e;
        if (text::ends_with(rest, " value") || rest == "value") {
          e.value = true;
          rest = text::trim(rest.substr(0, rest.size() - 5));
        }
        for (const auto& tok : text::split(rest, ','))
          if (!text::trim(tok).empty()) e.type.insert(text::parse_index(text::trim(tok)));
        if (!h.edges.emplace(name, e).second) throw ParseError("duplicate edge " + name.str(), lineno, 1);
      } else {
        throw ParseError("expected 'node' or 'edge'", lineno, 1);
      }
    } catch (const ParseError& e) {
      if (e.line == 1 && lineno != 1) throw ParseError(e.what(), lineno, e.column);
      throw;
    }
  }
  validate(h);
  return h;
}

}  // namespace pielect
