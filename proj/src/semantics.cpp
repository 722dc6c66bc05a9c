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

#include "pielect/semantics.hpp"

#include <algorithm>
#include <tuple>

#include "pielect/error.hpp"
#include "pielect/syntax.hpp"
#include "proto.hpp"

namespace pielect {

NameSet ActionLabel::bound_names() const {
  if (kind == Kind::BoundOutput) return {value};
  return {};
}

NameSet ActionLabel::names() const {
  if (kind == Kind::Silent) return {};
  return {channel, value};
}

std::string ActionLabel::str() const {
  switch (kind) {
    case Kind::Input:
      return channel.str() + "?" + value.str();
    case Kind::FreeOutput:
      return channel.str() + "!" + value.str();
    case Kind::BoundOutput:
      return channel.str() + "!(" + value.str() + ")";
    case Kind::Silent:
      return "tau";
  }
  return "";
}

ActionLabel parse_label(const std::string& text) {
  if (text == "tau") return ActionLabel::silent();
  auto q = text.find('?');
  if (q != std::string::npos)
    return ActionLabel::input(Name::parse(text.substr(0, q)), Name::parse(text.substr(q + 1)));
  auto b = text.find('!');
  if (b == std::string::npos) throw ParseError("invalid label '" + text + "'", 1, 1);
  Name ch = Name::parse(text.substr(0, b));
  std::string rest = text.substr(b + 1);
  if (rest.size() >= 2 && rest.front() == '(' && rest.back() == ')')
    return ActionLabel::bound_output(ch, Name::parse(rest.substr(1, rest.size() - 2)));
  return ActionLabel::free_output(ch, Name::parse(rest));
}

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::ISum: return "I-Sum";
    case Rule::OTauSum: return "O/tau-Sum";
    case Rule::Open: return "Open";
    case Rule::Res: return "Res";
    case Rule::ParL: return "Par-L";
    case Rule::ParR: return "Par-R";
    case Rule::ComL: return "Com-L";
    case Rule::ComR: return "Com-R";
    case Rule::CloseL: return "Close-L";
    case Rule::CloseR: return "Close-R";
    case Rule::Rep: return "Rep";
    case Rule::Cong: return "Cong";
  }
  return "?";
}

Rule effective_rule(const Derivation& d) {
  const Derivation* cur = &d;
  while (cur->rule == Rule::Cong && !cur->premises.empty()) cur = cur->premises.front().get();
  return cur->rule;
}

NameUniverse universe_for(const Process& p, std::size_t fresh_budget) {
  NameUniverse u;
  u.known = free_names(p);
  u.known.insert(Name::out());
  u.fresh_budget = std::max<std::size_t>(1, fresh_budget);
  return u;
}

std::vector<Name> instantiation_values(const NameUniverse& u, const NameSet& free, const NameSet& avoid) {
  NameSet base = u.known;
  base.insert(free.begin(), free.end());
  base.erase(Name::out());
  std::vector<Name> out(base.begin(), base.end());
  FreshSupply supply(avoid);
  supply.avoid(u.known);
  supply.avoid(free);
  for (std::size_t i = 0; i < u.fresh_budget; ++i) out.push_back(supply.fresh_indexed("f"));
  return out;
}

namespace detail {

namespace {

DerivationPtr make(Rule rule, Process source, ActionLabel label, Process target,
                   std::vector<DerivationPtr> premises = {}, int branch = -1) {
  return std::make_shared<const Derivation>(
      Derivation{rule, std::move(source), std::move(label), std::move(target), std::move(premises), branch});
}

std::vector<int> extend(const std::vector<int>& path, int k) {
  std::vector<int> out = path;
  out.push_back(k);
  return out;
}

// Wraps every proto of a sub-term by a unary rule. `wrap` returns nullptr to drop.
template <typename F>
void lift(std::vector<Proto>& protos, F wrap) {
  std::vector<Proto> out;
  for (auto& pr : protos) {
    if (pr.kind == ActionLabel::Kind::Input) {
      auto inner = pr.instantiate;
      pr.instantiate = [inner, wrap](const Name& v) -> DerivationPtr {
        DerivationPtr d = inner(v);
        return d ? wrap(d) : nullptr;
      };
      out.push_back(std::move(pr));
    } else {
      DerivationPtr d = wrap(pr.deriv);
      if (!d) continue;
      pr.kind = d->label.kind;
      pr.object = d->label.value;
      pr.deriv = d;
      out.push_back(std::move(pr));
    }
  }
  protos = std::move(out);
}

std::vector<Proto> collect(const Process& p, ProtoContext& ctx, const std::vector<int>& path);

std::vector<Proto> collect_sum(const Process& p, const std::vector<int>& path) {
  std::vector<Proto> out;
  for (std::size_t j = 0; j < p.branches().size(); ++j) {
    const Branch& br = p.branches()[j];
    int bj = static_cast<int>(j);
    Proto pr;
    pr.path = extend(path, bj);
    pr.channel = br.prefix.channel;
    if (br.prefix.is_input()) {
      pr.kind = ActionLabel::Kind::Input;
      Process src = p;
      Name ch = br.prefix.channel, formal = br.prefix.object;
      Process cont = br.cont;
      pr.instantiate = [src, ch, formal, cont, bj](const Name& v) -> DerivationPtr {
        return make(Rule::ISum, src, ActionLabel::input(ch, v), substitute(cont, v, formal), {}, bj);
      };
    } else if (br.prefix.is_output()) {
      pr.kind = ActionLabel::Kind::FreeOutput;
      pr.object = br.prefix.object;
      pr.deriv = make(Rule::OTauSum, p, ActionLabel::free_output(br.prefix.channel, br.prefix.object), br.cont,
                      {}, bj);
    } else {
      pr.kind = ActionLabel::Kind::Silent;
      pr.deriv = make(Rule::OTauSum, p, ActionLabel::silent(), br.cont, {}, bj);
    }
    out.push_back(std::move(pr));
  }
  return out;
}

std::vector<Proto> collect_par(const Process& p, ProtoContext& ctx, const std::vector<int>& path,
                               const Process& left, const Process& right, bool right_inert,
                               const std::vector<Proto>* right_partners = nullptr) {
  std::vector<Proto> lp = collect(left, ctx, extend(path, 0));
  std::vector<Proto> rp;
  if (!right_inert) rp = collect(right, ctx, extend(path, 1));
  const std::vector<Proto>& partners = right_partners ? *right_partners : rp;
  NameSet fn_left = free_names(left), fn_right = free_names(right);
  std::vector<Proto> out;

  // Communications first use the unlifted premises.
  auto communicate = [&](const Proto& in, const Proto& outp, bool input_left) {
    if (in.kind != ActionLabel::Kind::Input || !(outp.kind == ActionLabel::Kind::FreeOutput ||
                                                 outp.kind == ActionLabel::Kind::BoundOutput))
      return;
    if (in.channel != outp.channel) return;
    DerivationPtr din = in.instantiate(outp.object);
    if (!din) return;
    const DerivationPtr& dout = outp.deriv;
    Proto pr;
    pr.kind = ActionLabel::Kind::Silent;
    pr.path = input_left ? in.path : outp.path;
    if (outp.kind == ActionLabel::Kind::FreeOutput) {
      Process target = input_left ? parallel(din->target, dout->target) : parallel(dout->target, din->target);
      pr.deriv = make(input_left ? Rule::ComL : Rule::ComR, p, ActionLabel::silent(), target,
                      input_left ? std::vector<DerivationPtr>{din, dout} : std::vector<DerivationPtr>{dout, din});
    } else {
      const Name& y = outp.object;
      const NameSet& fn_in = input_left ? fn_left : fn_right;
      if (fn_in.count(y)) return;
      Process inner = input_left ? parallel(din->target, dout->target) : parallel(dout->target, din->target);
      pr.deriv = make(input_left ? Rule::CloseL : Rule::CloseR, p, ActionLabel::silent(), restrict(y, inner),
                      input_left ? std::vector<DerivationPtr>{din, dout} : std::vector<DerivationPtr>{dout, din});
    }
    out.push_back(std::move(pr));
  };
  for (const auto& a : lp)
    for (const auto& b : partners) {
      communicate(a, b, true);
      communicate(b, a, false);
    }

  std::vector<Proto> lifted_l = lp;
  lift(lifted_l, [p, right, fn_right](const DerivationPtr& d) -> DerivationPtr {
    for (const auto& b : d->label.bound_names())
      if (fn_right.count(b)) return nullptr;
    return make(Rule::ParL, p, d->label, parallel(d->target, right), {d});
  });
  std::vector<Proto> lifted_r = rp;
  lift(lifted_r, [p, left, fn_left](const DerivationPtr& d) -> DerivationPtr {
    for (const auto& b : d->label.bound_names())
      if (fn_left.count(b)) return nullptr;
    return make(Rule::ParR, p, d->label, parallel(left, d->target), {d});
  });
  std::vector<Proto> all;
  for (auto& x : lifted_l) all.push_back(std::move(x));
  for (auto& x : lifted_r) all.push_back(std::move(x));
  for (auto& x : out) all.push_back(std::move(x));
  return all;
}

std::vector<Proto> collect(const Process& p, ProtoContext& ctx, const std::vector<int>& path) {
  switch (p.kind()) {
    case Process::Kind::Sum:
      return collect_sum(p, path);
    case Process::Kind::Restriction: {
      std::vector<Proto> inner = collect(p.body(), ctx, extend(path, 0));
      Name y = p.name();
      lift(inner, [p, y](const DerivationPtr& d) -> DerivationPtr {
        const ActionLabel& mu = d->label;
        if (mu.kind == ActionLabel::Kind::FreeOutput && mu.value == y && mu.channel != y)
          return make(Rule::Open, p, ActionLabel::bound_output(mu.channel, y), d->target, {d});
        if (mu.names().count(y)) return nullptr;
        return make(Rule::Res, p, mu, restrict(y, d->target), {d});
      });
      std::vector<Proto> kept;
      for (auto& pr : inner)
        if (!(pr.kind == ActionLabel::Kind::Input && pr.channel == y)) kept.push_back(std::move(pr));
      return kept;
    }
    case Process::Kind::Parallel:
      return collect_par(p, ctx, path, p.left(), p.right(), false);
    case Process::Kind::Replication: {
      if (ctx.depth >= ctx.max_replication_depth)
        throw BudgetError("replication depth exceeded (" + std::to_string(ctx.max_replication_depth) + ")");
      ++ctx.depth;
      Process copy = refresh_binders(p.body(), *ctx.supply);
      Process unfolded = parallel(copy, p);
      // A second copy, unfolded from !P, is the only partner the first copy
      // can talk to; its solo moves would duplicate the first copy's.
      Process second = refresh_binders(p.body(), *ctx.supply);
      Process unfolded2 = parallel(second, p);
      std::vector<Proto> partners = collect_par(unfolded2, ctx, extend(path, 1), second, p, true);
      lift(partners, [p](const DerivationPtr& d) -> DerivationPtr {
        return make(Rule::Rep, p, d->label, d->target, {d});
      });
      std::vector<Proto> inner = collect_par(unfolded, ctx, extend(path, 0), copy, p, true, &partners);
      --ctx.depth;
      lift(inner, [p](const DerivationPtr& d) -> DerivationPtr {
        return make(Rule::Rep, p, d->label, d->target, {d});
      });
      return inner;
    }
  }
  return {};
}

}  // namespace

std::vector<Proto> collect_protos(const Process& p, ProtoContext& ctx) { return collect(p, ctx, {}); }

}  // namespace detail

namespace {

bool transition_less(const Transition& a, const Transition& b) {
  auto ra = static_cast<int>(effective_rule(*a.derivation));
  auto rb = static_cast<int>(effective_rule(*b.derivation));
  if (ra != rb) return ra < rb;
  if (a.path != b.path) return a.path < b.path;
  return a.label.str() < b.label.str();
}

}  // namespace

std::vector<Transition> transitions(const Process& p, const NameUniverse& u, const TransitionOptions& opts) {
  NameSet fn = free_names(p);
  NameSet names = all_names(p);
  std::vector<Name> values = instantiation_values(u, fn, names);

  NameSet used = fn;
  used.insert(u.known.begin(), u.known.end());
  used.insert(values.begin(), values.end());
  FreshSupply supply(names);
  supply.avoid(used);
  Process q = uniquify_binders(p, used, supply);
  bool renamed = !(q == p);

  detail::ProtoContext ctx{&supply, opts.max_replication_depth};
  std::vector<detail::Proto> protos = detail::collect_protos(q, ctx);

  std::vector<Transition> out;
  auto emit = [&](const DerivationPtr& d, const std::vector<int>& path) {
    DerivationPtr root = d;
    if (renamed)
      root = std::make_shared<const Derivation>(Derivation{Rule::Cong, p, d->label, d->target, {d}, -1});
    out.push_back(Transition{d->label, d->target, root, path});
  };
  for (const auto& pr : protos) {
    if (pr.kind == ActionLabel::Kind::Input) {
      for (const auto& v : values)
        if (DerivationPtr d = pr.instantiate(v)) emit(d, pr.path);
    } else {
      emit(pr.deriv, pr.path);
    }
  }
  std::stable_sort(out.begin(), out.end(), transition_less);
  return out;
}

namespace {

Process pull_left(const Process& left, const Process& right) {
  if (left.kind() != Process::Kind::Restriction) return parallel(left, right);
  Name x = left.name();
  Process body = left.body();
  NameSet fr = free_names(right);
  if (fr.count(x)) {
    FreshSupply supply(all_names(left));
    supply.avoid(all_names(right));
    Name nx = supply.fresh(x);
    body = rename_free(body, {{x, nx}});
    x = nx;
  }
  return restrict(x, pull_left(body, right));
}

}  // namespace

Process congruence_normal_form(const Process& p) {
  switch (p.kind()) {
    case Process::Kind::Sum: {
      if (p.is_nil()) return p;
      std::vector<Branch> brs;
      for (const auto& br : p.branches()) brs.push_back({br.prefix, congruence_normal_form(br.cont)});
      return sum(std::move(brs));
    }
    case Process::Kind::Restriction:
      return restrict(p.name(), congruence_normal_form(p.body()));
    case Process::Kind::Parallel:
      return pull_left(congruence_normal_form(p.left()), congruence_normal_form(p.right()));
    case Process::Kind::Replication:
      return replicate(congruence_normal_form(p.body()));
  }
  return p;
}

bool congruent(const Process& p, const Process& q) {
  return canonical_form(congruence_normal_form(p)) == canonical_form(congruence_normal_form(q));
}

namespace {

bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

bool disjoint(const NameSet& a, const NameSet& b) {
  for (const auto& n : a)
    if (b.count(n)) return false;
  return true;
}

}  // namespace

bool check_derivation(const Derivation& d, std::string* why) {
  const std::string tag = rule_name(d.rule) + ": ";
  std::size_t want = 0;
  switch (d.rule) {
    case Rule::ISum:
    case Rule::OTauSum:
      want = 0;
      break;
    case Rule::ComL:
    case Rule::ComR:
    case Rule::CloseL:
    case Rule::CloseR:
      want = 2;
      break;
    default:
      want = 1;
  }
  if (d.premises.size() != want) return fail(why, tag + "wrong number of premises");
  for (const auto& pr : d.premises)
    if (!pr || !check_derivation(*pr, why)) return false;
  auto prem = [&](std::size_t i) -> const Derivation& { return *d.premises[i]; };

  switch (d.rule) {
    case Rule::ISum:
    case Rule::OTauSum: {
      if (d.source.kind() != Process::Kind::Sum || d.branch < 0 ||
          static_cast<std::size_t>(d.branch) >= d.source.branches().size())
        return fail(why, tag + "source is not a sum with that branch");
      const Branch& br = d.source.branches()[static_cast<std::size_t>(d.branch)];
      if (d.rule == Rule::ISum) {
        if (!br.prefix.is_input() || d.label.kind != ActionLabel::Kind::Input || d.label.channel != br.prefix.channel)
          return fail(why, tag + "label does not match the input guard");
        if (!alpha_equivalent(d.target, substitute(br.cont, d.label.value, br.prefix.object)))
          return fail(why, tag + "target is not the instantiated continuation");
      } else {
        ActionLabel expect = br.prefix.is_tau() ? ActionLabel::silent()
                             : br.prefix.is_output()
                                 ? ActionLabel::free_output(br.prefix.channel, br.prefix.object)
                                 : ActionLabel::input(Name(), Name());
        if (br.prefix.is_input() || !(d.label == expect)) return fail(why, tag + "label does not match the guard");
        if (!alpha_equivalent(d.target, br.cont)) return fail(why, tag + "target is not the continuation");
      }
      return true;
    }
    case Rule::Open: {
      if (d.source.kind() != Process::Kind::Restriction) return fail(why, tag + "source is not a restriction");
      const Derivation& p0 = prem(0);
      const Name& y = d.source.name();
      if (!alpha_equivalent(p0.source, d.source.body())) return fail(why, tag + "premise source mismatch");
      if (p0.label.kind != ActionLabel::Kind::FreeOutput || p0.label.value != y || p0.label.channel == y)
        return fail(why, tag + "side condition x != y or premise label");
      if (!(d.label == ActionLabel::bound_output(p0.label.channel, y)) || !alpha_equivalent(d.target, p0.target))
        return fail(why, tag + "conclusion mismatch");
      return true;
    }
    case Rule::Res: {
      if (d.source.kind() != Process::Kind::Restriction) return fail(why, tag + "source is not a restriction");
      const Derivation& p0 = prem(0);
      const Name& y = d.source.name();
      if (!alpha_equivalent(p0.source, d.source.body())) return fail(why, tag + "premise source mismatch");
      if (p0.label.names().count(y)) return fail(why, tag + "side condition y not in n(mu)");
      if (!(d.label == p0.label) || !alpha_equivalent(d.target, restrict(y, p0.target)))
        return fail(why, tag + "conclusion mismatch");
      return true;
    }
    case Rule::ParL:
    case Rule::ParR: {
      if (d.source.kind() != Process::Kind::Parallel) return fail(why, tag + "source is not parallel");
      bool l = d.rule == Rule::ParL;
      const Derivation& p0 = prem(0);
      const Process& act = l ? d.source.left() : d.source.right();
      const Process& idle = l ? d.source.right() : d.source.left();
      if (!alpha_equivalent(p0.source, act)) return fail(why, tag + "premise source mismatch");
      if (!disjoint(p0.label.bound_names(), free_names(idle))) return fail(why, tag + "side condition bn/fn");
      Process t = l ? parallel(p0.target, idle) : parallel(idle, p0.target);
      if (!(d.label == p0.label) || !alpha_equivalent(d.target, t)) return fail(why, tag + "conclusion mismatch");
      return true;
    }
    case Rule::ComL:
    case Rule::ComR:
    case Rule::CloseL:
    case Rule::CloseR: {
      if (d.source.kind() != Process::Kind::Parallel) return fail(why, tag + "source is not parallel");
      bool input_left = d.rule == Rule::ComL || d.rule == Rule::CloseL;
      bool close = d.rule == Rule::CloseL || d.rule == Rule::CloseR;
      const Derivation& pl = prem(0);
      const Derivation& pr = prem(1);
      if (!alpha_equivalent(pl.source, d.source.left()) || !alpha_equivalent(pr.source, d.source.right()))
        return fail(why, tag + "premise source mismatch");
      const Derivation& din = input_left ? pl : pr;
      const Derivation& dout = input_left ? pr : pl;
      auto out_kind = close ? ActionLabel::Kind::BoundOutput : ActionLabel::Kind::FreeOutput;
      if (din.label.kind != ActionLabel::Kind::Input || dout.label.kind != out_kind ||
          din.label.channel != dout.label.channel || din.label.value != dout.label.value)
        return fail(why, tag + "premise labels are not complementary");
      if (!d.label.is_silent()) return fail(why, tag + "conclusion label must be tau");
      Process inner = parallel(pl.target, pr.target);
      if (close) {
        const Name& y = dout.label.value;
        if (free_names(din.source).count(y)) return fail(why, tag + "side condition y not in fn(P)");
        inner = restrict(y, inner);
      }
      if (!alpha_equivalent(d.target, inner)) return fail(why, tag + "conclusion mismatch");
      return true;
    }
    case Rule::Rep: {
      if (d.source.kind() != Process::Kind::Replication) return fail(why, tag + "source is not a replication");
      const Derivation& p0 = prem(0);
      if (!alpha_equivalent(p0.source, parallel(d.source.body(), d.source)))
        return fail(why, tag + "premise source is not P | !P");
      if (!(d.label == p0.label) || !alpha_equivalent(d.target, p0.target))
        return fail(why, tag + "conclusion mismatch");
      return true;
    }
    case Rule::Cong: {
      const Derivation& p0 = prem(0);
      if (!congruent(d.source, p0.source) || !congruent(d.target, p0.target) || !(d.label == p0.label))
        return fail(why, tag + "not congruent");
      return true;
    }
  }
  return fail(why, tag + "unknown rule");
}

std::vector<DiamondViolation> check_confluence_diamond(const Process& p, const NameUniverse& u) {
  if (!classify(p).pi_s) throw PreconditionError("confluence diamond requires a separate-choice term");
  std::vector<Transition> ts = transitions(p, u);
  std::vector<DiamondViolation> out;
  for (const auto& o : ts) {
    if (!o.label.is_output()) continue;
    for (const auto& in : ts) {
      if (!in.label.is_input()) continue;
      NameUniverse u2 = u;
      u2.known.insert(in.label.value);
      if (o.label.kind == ActionLabel::Kind::FreeOutput) u2.known.insert(o.label.value);
      std::vector<Transition> after_out = transitions(o.target, u2);
      std::vector<Transition> after_in = transitions(in.target, u2);
      bool closed = false;
      for (const auto& a : after_out) {
        if (!(a.label == in.label)) continue;
        for (const auto& b : after_in) {
          if (b.label.kind != o.label.kind || b.label.channel != o.label.channel) continue;
          Process rhs = b.target;
          if (b.label.value != o.label.value) {
            if (o.label.kind == ActionLabel::Kind::FreeOutput || free_names(rhs).count(o.label.value)) continue;
            rhs = substitute(rhs, o.label.value, b.label.value);
          }
          if (congruent(a.target, rhs)) {
            closed = true;
            break;
          }
        }
        if (closed) break;
      }
      if (!closed) out.push_back({o, in, "no common successor for " + o.label.str() + " / " + in.label.str()});
    }
  }
  return out;
}

}  // namespace pielect
