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

#include "pielect/adversary.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "pielect/error.hpp"
#include "pielect/syntax.hpp"

namespace pielect {

AdversaryMode parse_adversary_mode(const std::string& text) {
  if (text == "pis") return AdversaryMode::Pis;
  if (text == "pii") return AdversaryMode::Pii;
  if (text == "ccs") return AdversaryMode::Ccs;
  throw PreconditionError("unknown adversary mode '" + text + "' (expected pis, pii or ccs)");
}

std::string mode_name(AdversaryMode m) {
  switch (m) {
    case AdversaryMode::Pis:
      return "pis";
    case AdversaryMode::Pii:
      return "pii";
    case AdversaryMode::Ccs:
      return "ccs";
  }
  return "?";
}

std::string round_case_name(RoundCase c) {
  switch (c) {
    case RoundCase::TauMove:
      return "tau-move";
    case RoundCase::FreeOutput:
      return "free-output";
    case RoundCase::BoundOutput:
      return "bound-output";
    case RoundCase::InputMove:
      return "input-move";
    case RoundCase::ComCommunication:
      return "com-communication";
    case RoundCase::CloseCommunication:
      return "close-communication";
  }
  return "?";
}

std::string AdversaryRound::certificate_line() const {
  std::ostringstream os;
  os << "symmetric-ok round=" << index << " case=" << round_case_name(kind) << " steps=" << steps.size()
     << " sigma=" << format_automorphism(after);
  return os.str();
}

void check_adversary_preconditions(const Network& n, const Automorphism& a, AdversaryMode mode) {
  SublanguageProfile prof = classify(n);
  switch (mode) {
    case AdversaryMode::Pis:
      if (!prof.pi_s) throw ModeMismatch("pis mode needs a separate-choice network; profile is " + prof.str());
      break;
    case AdversaryMode::Pii:
      if (!prof.pi_I) throw ModeMismatch("pii mode needs a π_I network; profile is " + prof.str());
      break;
    case AdversaryMode::Ccs:
      if (!prof.ccs_vp) throw ModeMismatch("ccs mode needs a value-passing CCS network; profile is " + prof.str());
      break;
  }
  if (!is_network_automorphism(n, a)) throw PreconditionError("not an automorphism of the network's hypergraph");
  if (!is_symmetric(n, a)) throw PreconditionError("network is not symmetric with respect to the automorphism");
  OrbitPartition op = orbits(a);
  if (mode == AdversaryMode::Pis) {
    if (op.orbits.size() != 1) throw PreconditionError("pis mode needs an automorphism with one orbit");
    return;
  }
  if (a.is_identity() || !is_well_balanced(a))
    throw PreconditionError("automorphism must be well balanced and not the identity");
  std::map<std::size_t, std::size_t> orbit_of;
  for (std::size_t o = 0; o < op.orbits.size(); ++o)
    for (auto v : op.orbits[o]) orbit_of[v] = o;
  Hypergraph h = hypergraph_of(n);
  for (const auto& [x, e] : h.edges) {
    if (mode == AdversaryMode::Ccs && e.value) continue;
    std::set<std::size_t> seen;
    for (auto v : e.type)
      if (!seen.insert(orbit_of.at(v)).second)
        throw PreconditionError("edge " + x.str() + " joins two nodes of one orbit");
  }
}

namespace {

bool touches_out(const NetStep& s) {
  for (const LocalMove& m : s.local)
    if (!m.label.is_silent() && m.label.channel.is_out()) return true;
  return false;
}

enum class Ref { None, Q, R, F };

struct Link {
  std::size_t actor;
  std::optional<std::size_t> partner;
  // Exponent of σ mapping the first step's labels onto this link.
  std::size_t power;
  Ref actor_ref = Ref::None;
  std::size_t actor_power = 0;
  Ref partner_ref = Ref::None;
  std::size_t partner_power = 0;
};

class RoundBuilder {
 public:
  RoundBuilder(const Network& n, const Automorphism& a, const Successor& first, std::size_t fresh, std::size_t limit)
      : start_(n), a_(a), first_(first), fresh_(fresh), limit_(limit) {
    order_ = orbits(a).order;
    for (std::size_t m = 0; m < order_; ++m) powers_.push_back(power(a, m));
    old_ = n.component_free_names();
    const NetStep& s = first.step;
    actor0_ = s.is_communication() ? sender_of(s) : s.active.front();
    mu_ = s.move_of(actor0_)->label;
    new_valued_ = (mu_.kind == ActionLabel::Kind::BoundOutput || mu_.kind == ActionLabel::Kind::Input) &&
                  is_new(mu_.value, old_);
  }

  static std::size_t sender_of(const NetStep& s) {
    for (const LocalMove& m : s.local)
      if (m.label.is_output()) return m.component;
    throw Error("internal: communication without a sender");
  }

  // Builds the links of the round. `links[0]` is the first step itself.
  void plan(AdversaryMode mode) {
    const NetStep& s = first_.step;
    std::size_t i = actor0_;
    OrbitPartition op = orbits(a_);
    auto orbit_len = [&](std::size_t v) {
      for (const auto& o : op.orbits)
        if (std::find(o.begin(), o.end(), v) != o.end()) return o.size();
      return std::size_t{1};
    };
    if (!s.is_communication()) {
      std::size_t len = orbit_len(i);
      for (std::size_t m = 0; m < len; ++m)
        links_.push_back({powers_[m].node(i), std::nullopt, m, Ref::Q, m, Ref::None, 0});
      return;
    }
    std::size_t d = s.active[0] == i ? s.active[1] : s.active[0];
    if (mode != AdversaryMode::Pis) {
      std::size_t len = orbit_len(i);
      for (std::size_t m = 0; m < len; ++m)
        links_.push_back({powers_[m].node(i), powers_[m].node(d), m, Ref::Q, m, Ref::R, m});
      return;
    }
    std::size_t k = start_.size();
    std::size_t r = 1;
    while (r < k && powers_[r % order_].node(i) != d) ++r;
    if (r == k) throw SymmetryBroken("receiver is not in the sender's orbit");
    std::size_t g = std::gcd(k, r);
    std::size_t len = k / g;
    for (std::size_t e = 0; e < g; ++e) {
      for (std::size_t t = 0; t < len; ++t) {
        Link l;
        l.power = (e + r * t) % order_;
        l.actor = powers_[l.power].node(i);
        l.partner = powers_[(e + r * (t + 1)) % order_].node(i);
        if (t == 0) {
          l.actor_ref = Ref::Q;
          l.actor_power = e % order_;
        } else if (e == 0 && t == 1) {
          l.actor_ref = Ref::None;
        } else {
          l.actor_ref = Ref::F;
          l.actor_power = (e + r * (t - 1)) % order_;
        }
        if (t + 1 < len) {
          l.partner_ref = Ref::R;
          l.partner_power = (e + r * t) % order_;
        } else {
          l.partner_ref = Ref::F;
          l.partner_power = (e + r * (len - 1)) % order_;
        }
        links_.push_back(l);
      }
    }
  }

  bool run() {
    refs_[Ref::Q] = first_.step.move_of(actor0_)->after;
    if (first_.step.is_communication()) {
      const LocalMove* recv = nullptr;
      for (const LocalMove& m : first_.step.local)
        if (m.component != actor0_) recv = &m;
      refs_[Ref::R] = recv->after;
    }
    states_.push_back(start_);
    steps_.push_back(first_.step);
    states_.push_back(first_.next);
    if (new_valued_) pairs_.emplace_back(actor0_, fresh_name(first_.step, actor0_));
    if (links_.size() == 1 && links_[0].partner_ref == Ref::None) return finish();
    // A two-link chain on a 2-cycle checks the partner of link 0 later.
    return search(1);
  }

  std::vector<NetStep> steps_;
  std::vector<Network> states_;
  std::vector<std::pair<std::size_t, Name>> pairs_;
  Automorphism after_;
  std::string failure_;

 private:
  static bool is_new(const Name& v, const NameSet& old) { return !v.numeric() && !v.is_out() && !old.count(v); }

  Name fresh_name(const NetStep& s, std::size_t actor) const {
    if (!s.new_restrictions.empty()) return s.new_restrictions.front();
    return s.move_of(actor)->label.value;
  }

  std::optional<Name> psi(std::size_t m, const Name& x) const {
    for (const auto& [c, y] : pairs_)
      if (y == x) {
        std::size_t target = powers_[m].node(c);
        for (const auto& [c2, y2] : pairs_)
          if (c2 == target) return y2;
        return std::nullopt;
      }
    try {
      return powers_[m].apply(x);
    } catch (const DomainError&) {
      return std::nullopt;
    }
  }

  // False only when the expected state is computable and differs.
  bool expected(Ref ref, std::size_t m, const Process& got) const {
    if (ref == Ref::None) return true;
    auto it = refs_.find(ref);
    if (it == refs_.end()) return true;
    NameMap map;
    for (const Name& x : free_names(it->second)) {
      auto y = psi(m, x);
      if (!y) return true;
      map[x] = *y;
    }
    return alpha_equivalent(got, rename_free(it->second, map));
  }

  bool label_matches(std::size_t m, const ActionLabel& got, const Network& cur) const {
    if (got.kind != mu_.kind) return false;
    if (got.is_silent()) return true;
    auto ch = psi(m, mu_.channel);
    if (!ch || *ch != got.channel) return false;
    if (new_valued_) return is_new(got.value, cur.component_free_names());
    auto v = psi(m, mu_.value);
    return v && *v == got.value;
  }

  bool search(std::size_t li) {
    if (li == links_.size()) return finish();
    if (++tried_ > limit_) {
      failure_ = "search limit reached";
      return false;
    }
    const Link& l = links_[li];
    const Network& cur = states_.back();
    for (Successor& s : enumerate_net_steps(cur, network_universe(cur, fresh_))) {
      const NetStep& st = s.step;
      if (touches_out(st)) continue;
      if (l.partner) {
        if (!st.is_communication() || sender_of(st) != l.actor) continue;
        if (std::find(st.active.begin(), st.active.end(), *l.partner) == st.active.end()) continue;
      } else if (st.is_communication() || st.active.front() != l.actor) {
        continue;
      }
      if (!label_matches(l.power, st.move_of(l.actor)->label, cur)) continue;
      std::size_t saved_pairs = pairs_.size();
      bool defines_f = l.partner && l.actor_ref == Ref::None && !refs_.count(Ref::F);
      if (new_valued_) pairs_.emplace_back(l.actor, fresh_name(st, l.actor));
      if (defines_f) refs_[Ref::F] = st.move_of(l.actor)->after;
      bool ok = expected(l.actor_ref, l.actor_power, st.move_of(l.actor)->after) &&
                (!l.partner || expected(l.partner_ref, l.partner_power, st.move_of(*l.partner)->after));
      if (ok) {
        steps_.push_back(st);
        states_.push_back(s.next);
        if (search(li + 1)) return true;
        steps_.pop_back();
        states_.pop_back();
      }
      if (defines_f) refs_.erase(Ref::F);
      pairs_.resize(saved_pairs);
    }
    if (failure_.empty()) failure_ = "no step matches link " + std::to_string(li);
    return false;
  }

  bool finish() {
    const Network& next = states_.back();
    // Link 0's partner was checked against F only once F existed.
    if (!links_.empty() && links_[0].partner && links_[0].partner_ref == Ref::F) {
      if (!expected(Ref::F, links_[0].partner_power, first_.step.move_of(*links_[0].partner)->after)) {
        failure_ = "first receiver disagrees with the chain";
        return false;
      }
    }
    try {
      after_ = extend_automorphism(a_, pairs_, hypergraph_of(next));
      if (is_symmetric(next, after_)) return true;
      failure_ = "successor is not symmetric";
    } catch (const Error& e) {
      failure_ = e.what();
    }
    return false;
  }

  const Network& start_;
  const Automorphism& a_;
  const Successor& first_;
  std::size_t fresh_;
  std::size_t limit_;
  std::size_t order_ = 1;
  std::vector<Automorphism> powers_;
  NameSet old_;
  std::size_t actor0_ = 0;
  ActionLabel mu_ = ActionLabel::silent();
  bool new_valued_ = false;
  std::vector<Link> links_;
  std::map<Ref, Process> refs_;
  std::size_t tried_ = 0;

 public:
  const std::vector<Link>& links() const { return links_; }
};

RoundCase case_of(const NetStep& s) {
  if (s.is_communication()) return s.new_restrictions.empty() ? RoundCase::ComCommunication : RoundCase::CloseCommunication;
  switch (s.label.kind) {
    case ActionLabel::Kind::Silent:
      return RoundCase::TauMove;
    case ActionLabel::Kind::FreeOutput:
      return RoundCase::FreeOutput;
    case ActionLabel::Kind::BoundOutput:
      return RoundCase::BoundOutput;
    case ActionLabel::Kind::Input:
      return RoundCase::InputMove;
  }
  return RoundCase::TauMove;
}

}  // namespace

AdversaryRound symmetric_round(const Network& n, const Automorphism& a, AdversaryMode mode,
                               const AdversaryOptions& opts, std::size_t round_index, Rng* rng) {
  check_adversary_preconditions(n, a, mode);
  std::vector<Successor> cands;
  for (Successor& s : enumerate_net_steps(n, network_universe(n, opts.fresh_budget)))
    if (!touches_out(s.step)) cands.push_back(std::move(s));
  if (cands.empty()) throw NoStepAvailable("no step without an action on out is available");

  std::size_t pick = 0;
  if (rng) {
    pick = rng->below(cands.size());
  } else if (opts.fair) {
    std::size_t k = n.size();
    std::size_t start = round_index % k;
    std::size_t best = k;
    for (std::size_t c = 0; c < cands.size(); ++c) {
      std::size_t dist = (cands[c].step.active.front() + k - start) % k;
      if (dist < best) {
        best = dist;
        pick = c;
      }
    }
  }
  const Successor& first = cands[pick];

  RoundBuilder rb(n, a, first, opts.fresh_budget, opts.search_limit);
  rb.plan(mode);
  if (!rb.run()) {
    std::ostringstream os;
    os << "round " << round_index << " (" << round_case_name(case_of(first.step)) << ") could not be closed: "
       << rb.failure_ << "\n  first step: " << format_step(0, first.step, first.next)
       << "\n  sigma: " << format_automorphism(a) << "\n  network:\n"
       << format_network(n);
    throw SymmetryBroken(os.str());
  }

  AdversaryRound round;
  round.index = round_index;
  round.kind = case_of(first.step);
  round.steps = rb.steps_;
  round.states = rb.states_;
  round.before = a;
  round.after = rb.after_;
  round.certificate = symmetry_witnesses(round.states.back(), round.after);
  for (const NetStep& s : round.steps)
    if (touches_out(s)) throw SymmetryBroken("round contains an action on out");
  if (orbits(round.after).orbits.size() != orbits(a).orbits.size())
    throw SymmetryBroken("round changed the number of orbits");
  return round;
}

AdversaryRun run_adversary(const Network& n, const Automorphism& a, std::size_t rounds, AdversaryMode mode,
                           const AdversaryOptions& opts) {
  AdversaryRun run{Computation(n, opts.fresh_budget), {}, false, {}, a};
  std::optional<Rng> rng;
  if (opts.seed) rng.emplace(*opts.seed);
  for (std::size_t r = 0; r < rounds; ++r) {
    AdversaryRound round;
    try {
      round = symmetric_round(run.computation.end(), run.final_automorphism, mode, opts, r, rng ? &*rng : nullptr);
    } catch (const NoStepAvailable&) {
      run.stuck = true;
      break;
    }
    for (std::size_t s = 0; s < round.steps.size(); ++s)
      run.computation.push(Successor{round.steps[s], round.states[s + 1]});
    run.notes[run.computation.length()].push_back(round.certificate_line());
    run.final_automorphism = round.after;
    run.rounds.push_back(std::move(round));
  }
  return run;
}

std::vector<ConnectivityViolation> connectivity_monitor(const Computation& c, const Automorphism& a,
                                                        bool ignore_value_edges) {
  std::vector<ConnectivityViolation> out;
  std::map<std::size_t, std::size_t> orbit_of;
  OrbitPartition op = orbits(a);
  for (std::size_t o = 0; o < op.orbits.size(); ++o)
    for (auto v : op.orbits[o]) orbit_of[v] = o;
  auto before = hypergraph_of(c.states.front()).connected_pairs(ignore_value_edges);
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    Hypergraph h = hypergraph_of(c.states[i + 1]);
    auto after = h.connected_pairs(ignore_value_edges);
    for (const auto& pr : after) {
      if (before.count(pr)) continue;
      Name edge;
      for (const auto& [x, e] : h.edges)
        if ((!ignore_value_edges || !e.value) && e.type.count(pr.first) && e.type.count(pr.second)) {
          edge = x;
          break;
        }
      out.push_back({i, pr.first, pr.second, edge, orbit_of[pr.first] == orbit_of[pr.second]});
    }
    before = std::move(after);
  }
  return out;
}

}  // namespace pielect
