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

#include "pielect/network.hpp"

#include <algorithm>
#include <sstream>

#include "pielect/error.hpp"
#include "proto.hpp"
#include "text.hpp"

namespace pielect {

Network::Network(std::vector<Name> restricted, std::vector<Process> components)
    : restricted_(std::move(restricted)) {
  if (components.empty()) throw DomainError("a network needs at least one component");
  NameSet seen;
  for (const auto& r : restricted_) {
    if (!r.bindable()) throw BindingError("cannot restrict '" + r.str() + "' at the top level");
    if (!seen.insert(r).second) throw DomainError("duplicate restricted name " + r.str());
  }
  NameSet used(restricted_.begin(), restricted_.end());
  FreshSupply supply(used);
  for (const auto& p : components) {
    NameSet fn = pielect::free_names(p);
    used.insert(fn.begin(), fn.end());
    supply.avoid(pielect::all_names(p));
  }
  components_.reserve(components.size());
  for (const auto& p : components) components_.push_back(uniquify_binders(p, used, supply));
}

bool Network::is_restricted(const Name& n) const {
  return std::find(restricted_.begin(), restricted_.end(), n) != restricted_.end();
}

NameSet Network::component_free_names() const {
  NameSet out;
  for (const auto& p : components_) {
    NameSet fn = pielect::free_names(p);
    out.insert(fn.begin(), fn.end());
  }
  return out;
}

NameSet Network::free_names() const {
  NameSet out = component_free_names();
  for (const auto& r : restricted_) out.erase(r);
  return out;
}

NameSet Network::all_names() const {
  NameSet out(restricted_.begin(), restricted_.end());
  for (const auto& p : components_) {
    NameSet a = pielect::all_names(p);
    out.insert(a.begin(), a.end());
  }
  return out;
}

Process Network::as_process() const {
  Process body = parallel(components_);
  for (auto it = restricted_.rbegin(); it != restricted_.rend(); ++it) body = restrict(*it, body);
  return body;
}

std::string format_network(const Network& n) {
  std::ostringstream os;
  os << "net k=" << n.size() << " restrict=";
  for (std::size_t i = 0; i < n.restricted().size(); ++i) os << (i ? "," : "") << n.restricted()[i].str();
  os << "\n";
  for (std::size_t i = 0; i < n.size(); ++i) os << "comp " << i << ": " << print(n[i]) << "\n";
  return os.str();
}

namespace {

struct NetHeader {
  std::size_t k = 0;
  std::vector<Name> restricted;
};

NetHeader parse_net_header(const std::string& line, int lineno) {
  NetHeader h;
  bool have_k = false;
  std::istringstream is(line.substr(3));
  std::string tok;
  while (is >> tok) {
    if (text::starts_with(tok, "k=")) {
      h.k = text::parse_index(tok.substr(2));
      have_k = true;
    } else if (text::starts_with(tok, "restrict=")) {
      for (const auto& part : text::split(tok.substr(9), ','))
        if (!part.empty()) h.restricted.push_back(Name::parse(part));
    } else {
      throw ParseError("unknown header field '" + tok + "'", lineno, 1);
    }
  }
  if (!have_k || h.k == 0) throw ParseError("header needs k=<K> with K >= 1", lineno, 1);
  return h;
}

// Parses `net`/`comp` lines starting at `i`; advances `i` past them.
Network parse_network_lines(const std::vector<std::string>& lines, std::size_t& i) {
  while (i < lines.size() && (text::trim(lines[i]).empty() || text::trim(lines[i])[0] == '#')) ++i;
  if (i >= lines.size() || !text::starts_with(text::trim(lines[i]), "net "))
    throw ParseError("expected 'net' header", static_cast<int>(i + 1), 1);
  NetHeader h;
  try {
    h = parse_net_header(text::trim(lines[i]), static_cast<int>(i + 1));
  } catch (const ParseError& e) {
    throw ParseError(e.what(), static_cast<int>(i + 1), 1);
  }
  ++i;
  std::vector<Process> comps(h.k);
  std::vector<bool> have(h.k, false);
  std::size_t got = 0;
  while (i < lines.size() && got < h.k) {
    std::string line = text::trim(lines[i]);
    int lineno = static_cast<int>(i + 1);
    if (line.empty() || line[0] == '#') {
      ++i;
      continue;
    }
    if (!text::starts_with(line, "comp ")) throw ParseError("expected 'comp <i>: <term>'", lineno, 1);
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("expected ':'", lineno, 1);
    std::size_t idx;
    try {
      idx = text::parse_index(text::trim(line.substr(5, colon - 5)));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), lineno, 6);
    }
    if (idx >= h.k || have[idx]) throw ParseError("bad or duplicate component index", lineno, 6);
    std::size_t off = lines[i].find(':') + 1;
    comps[idx] = parse_process(lines[i].substr(off), lineno, static_cast<int>(off + 1));
    have[idx] = true;
    ++got;
    ++i;
  }
  if (got < h.k) throw ParseError("missing component lines", static_cast<int>(i + 1), 1);
  return Network(h.restricted, comps);
}

}  // namespace

Network parse_network(const std::string& text) {
  auto ls = text::lines(text);
  std::size_t i = 0;
  Network n = parse_network_lines(ls, i);
  for (; i < ls.size(); ++i) {
    std::string line = text::trim(ls[i]);
    if (!line.empty() && line[0] != '#') throw ParseError("trailing content", static_cast<int>(i + 1), 1);
  }
  return n;
}

std::string canonical_key(const Network& n) {
  std::map<Name, std::string> alias;
  std::size_t next = 0;
  for (const auto& p : n.components())
    for (const auto& name : free_names_in_order(p))
      if (n.is_restricted(name) && !alias.count(name)) alias[name] = "#g" + std::to_string(next++);
  std::string key;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (i) key += " || ";
    key += canonical_form(n[i], alias);
  }
  return key;
}

SublanguageProfile classify(const Network& n) { return classify(parallel(n.components())); }

Hypergraph hypergraph_of(const Network& n) {
  Hypergraph h;
  for (std::size_t i = 0; i < n.size(); ++i) h.nodes.insert(i);
  for (std::size_t i = 0; i < n.size(); ++i)
    for (const auto& name : pielect::free_names(n[i]))
      if (!name.is_out()) h.edges[name].type.insert(i);
  if (classify(n).ccs_vp) {
    NameSet subjects;
    std::vector<const Process*> stack;
    for (const auto& p : n.components()) stack.push_back(&p);
    while (!stack.empty()) {
      const Process* p = stack.back();
      stack.pop_back();
      switch (p->kind()) {
        case Process::Kind::Sum:
          for (const auto& br : p->branches()) {
            if (!br.prefix.is_tau()) subjects.insert(br.prefix.channel);
            stack.push_back(&br.cont);
          }
          break;
        case Process::Kind::Parallel:
          stack.push_back(&p->left());
          stack.push_back(&p->right());
          break;
        default:
          stack.push_back(&p->body());
      }
    }
    for (auto& [name, e] : h.edges) e.value = !subjects.count(name);
  }
  return h;
}

const LocalMove* NetStep::move_of(std::size_t component) const {
  for (const auto& m : local)
    if (m.component == component) return &m;
  return nullptr;
}

NameUniverse network_universe(const Network& n, std::size_t fresh_budget, const NameSet& extra) {
  NameUniverse u;
  u.known = n.free_names();
  u.known.insert(extra.begin(), extra.end());
  u.known.insert(Name::out());
  u.fresh_budget = std::max<std::size_t>(1, fresh_budget);
  return u;
}

namespace {

std::vector<Name> without(const std::vector<Name>& v, const std::vector<Name>& drop) {
  std::vector<Name> out;
  for (const auto& x : v)
    if (std::find(drop.begin(), drop.end(), x) == drop.end()) out.push_back(x);
  return out;
}

}  // namespace

std::vector<Successor> enumerate_net_steps(const Network& n, const NameUniverse& u, const TransitionOptions& opts) {
  NameSet names = n.all_names();
  std::vector<Name> values;
  for (const auto& v : instantiation_values(u, n.free_names(), names))
    if (!n.is_restricted(v)) values.push_back(v);
  FreshSupply supply(names);
  supply.avoid(u.known);
  supply.avoid(NameSet(values.begin(), values.end()));

  std::vector<std::vector<detail::Proto>> protos(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    detail::ProtoContext ctx{&supply, opts.max_replication_depth};
    protos[i] = detail::collect_protos(n[i], ctx);
  }

  std::vector<Successor> out;
  auto finish = [&](NetStep step, std::vector<Process> comps) {
    std::vector<Name> restricted = without(n.restricted(), step.opened);
    for (const auto& r : step.new_restrictions) restricted.push_back(r);
    out.push_back(Successor{std::move(step), Network(std::move(restricted), std::move(comps))});
  };

  for (std::size_t i = 0; i < n.size(); ++i) {
    auto single = [&](const DerivationPtr& d) {
      const ActionLabel& mu = d->label;
      NetStep st;
      st.active = {i};
      st.local.push_back(LocalMove{i, mu, n[i], d->target, d});
      st.label = mu;
      st.rule = rule_name(effective_rule(*d));
      if (!mu.is_silent() && n.is_restricted(mu.channel)) return;
      if (mu.kind == ActionLabel::Kind::FreeOutput && n.is_restricted(mu.value)) {
        st.label = ActionLabel::bound_output(mu.channel, mu.value);
        st.opened.push_back(mu.value);
        st.rule = "Open";
      }
      std::vector<Process> comps = n.components();
      comps[i] = d->target;
      finish(std::move(st), std::move(comps));
    };
    for (const auto& pr : protos[i]) {
      if (pr.kind == ActionLabel::Kind::Input) {
        if (n.is_restricted(pr.channel)) continue;
        for (const auto& v : values)
          if (DerivationPtr d = pr.instantiate(v)) single(d);
      } else {
        single(pr.deriv);
      }
    }
  }

  auto communicate = [&](std::size_t s, std::size_t r) {
    for (const auto& po : protos[s]) {
      if (po.kind != ActionLabel::Kind::FreeOutput && po.kind != ActionLabel::Kind::BoundOutput) continue;
      for (const auto& pi : protos[r]) {
        if (pi.kind != ActionLabel::Kind::Input || pi.channel != po.channel) continue;
        bool close = po.kind == ActionLabel::Kind::BoundOutput;
        if (close && pielect::free_names(n[r]).count(po.object)) continue;
        DerivationPtr din = pi.instantiate(po.object);
        if (!din) continue;
        NetStep st;
        st.label = ActionLabel::silent();
        st.active = {std::min(s, r), std::max(s, r)};
        LocalMove ms{s, po.deriv->label, n[s], po.deriv->target, po.deriv};
        LocalMove mr{r, din->label, n[r], din->target, din};
        if (s < r) {
          st.local = {ms, mr};
        } else {
          st.local = {mr, ms};
        }
        st.rule = close ? "Close" : "Com";
        if (close) st.new_restrictions.push_back(po.object);
        std::vector<Process> comps = n.components();
        comps[s] = po.deriv->target;
        comps[r] = din->target;
        finish(std::move(st), std::move(comps));
      }
    }
  };
  for (std::size_t a = 0; a < n.size(); ++a)
    for (std::size_t b = a + 1; b < n.size(); ++b) {
      communicate(a, b);
      communicate(b, a);
    }
  return out;
}

Computation::Computation(Network start, std::size_t fresh, NameSet extra)
    : fresh_budget(std::max<std::size_t>(1, fresh)), extra_known(std::move(extra)) {
  states.push_back(std::move(start));
}

NameUniverse Computation::universe_at(std::size_t i) const {
  return network_universe(states.at(i), fresh_budget, extra_known);
}

void Computation::push(const Successor& s) {
  steps.push_back(s.step);
  states.push_back(s.next);
}

Projection project(const Computation& c, std::size_t i) {
  if (i >= c.start().size())
    throw DomainError("component " + std::to_string(i) + " out of range (k=" + std::to_string(c.start().size()) + ")");
  Projection p{i, {}};
  for (std::size_t s = 0; s < c.steps.size(); ++s)
    if (const LocalMove* m = c.steps[s].move_of(i)) p.steps.push_back({s, m->before, m->label, m->after});
  return p;
}

std::string format_step(std::size_t index, const NetStep& step, const Network& next) {
  std::ostringstream os;
  os << "step " << index << " label=" << step.label.str() << " rule=" << step.rule << " active=";
  for (std::size_t i = 0; i < step.active.size(); ++i) os << (i ? "," : "") << step.active[i];
  os << " local=";
  for (std::size_t i = 0; i < step.local.size(); ++i)
    os << (i ? ";" : "") << step.local[i].component << ":" << step.local[i].label.str();
  os << " restrict=";
  for (std::size_t i = 0; i < next.restricted().size(); ++i) os << (i ? "," : "") << next.restricted()[i].str();
  os << " result=";
  for (std::size_t i = 0; i < next.size(); ++i) os << (i ? " || " : "") << print(next[i]);
  return os.str();
}

std::string format_trace(const Computation& c, const std::map<std::size_t, std::vector<std::string>>& notes) {
  std::ostringstream os;
  os << "trace fresh=" << c.fresh_budget << " known=";
  bool first = true;
  for (const auto& n : c.extra_known) {
    os << (first ? "" : ",") << n.str();
    first = false;
  }
  os << "\n" << format_network(c.start());
  auto emit_notes = [&](std::size_t k) {
    if (auto it = notes.find(k); it != notes.end())
      for (const auto& line : it->second) os << line << "\n";
  };
  emit_notes(0);
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    os << format_step(i, c.steps[i], c.states[i + 1]) << "\n";
    emit_notes(i + 1);
  }
  return os.str();
}

Computation read_trace(const std::string& text) {
  auto ls = text::lines(text);
  std::size_t i = 0;
  while (i < ls.size() && (text::trim(ls[i]).empty() || text::trim(ls[i])[0] == '#')) ++i;
  if (i >= ls.size() || !text::starts_with(text::trim(ls[i]), "trace "))
    throw ParseError("expected 'trace' header", static_cast<int>(i + 1), 1);
  std::size_t fresh = 1;
  NameSet extra;
  {
    std::istringstream is(text::trim(ls[i]).substr(6));
    std::string tok;
    while (is >> tok) {
      if (text::starts_with(tok, "fresh=")) {
        fresh = text::parse_index(tok.substr(6));
      } else if (text::starts_with(tok, "known=")) {
        for (const auto& part : text::split(tok.substr(6), ','))
          if (!part.empty()) extra.insert(Name::parse(part));
      } else {
        throw ParseError("unknown trace field '" + tok + "'", static_cast<int>(i + 1), 1);
      }
    }
  }
  ++i;
  Network start = parse_network_lines(ls, i);
  Computation c(start, fresh, extra);
  for (; i < ls.size(); ++i) {
    std::string line = text::trim(ls[i]);
    if (line.empty() || line[0] == '#' || text::starts_with(line, "symmetric-ok")) continue;
    if (!text::starts_with(line, "step ")) throw ParseError("expected 'step'", static_cast<int>(i + 1), 1);
    std::size_t idx = c.steps.size();
    bool matched = false;
    for (const auto& s : enumerate_net_steps(c.end(), c.universe_at(idx))) {
      if (format_step(idx, s.step, s.next) == line) {
        c.push(s);
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError("step " + std::to_string(idx) + " cannot be replayed", static_cast<int>(i + 1), 1);
  }
  return c;
}

bool replays(const Computation& c) {
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    std::string want = format_step(i, c.steps[i], c.states[i + 1]);
    bool ok = false;
    for (const auto& s : enumerate_net_steps(c.states[i], c.universe_at(i)))
      if (format_step(i, s.step, s.next) == want && s.next == c.states[i + 1]) {
        ok = true;
        break;
      }
    if (!ok) return false;
  }
  return true;
}

}  // namespace pielect
