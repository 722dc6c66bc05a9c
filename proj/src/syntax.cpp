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

#include "pielect/syntax.hpp"

#include <cctype>
#include <vector>

#include "pielect/error.hpp"

namespace pielect {

namespace {

void collect_free(const Process& p, NameSet& bound_here, std::map<Name, int>& shadow, NameSet& out) {
  auto add = [&](const Name& n) {
    if (!shadow.count(n)) out.insert(n);
  };
  auto with_binder = [&](const Name& b, auto&& body) {
    ++shadow[b];
    body();
    if (--shadow[b] == 0) shadow.erase(b);
  };
  switch (p.kind()) {
    case Process::Kind::Sum:
      for (const auto& br : p.branches()) {
        if (br.prefix.is_tau()) {
          collect_free(br.cont, bound_here, shadow, out);
        } else if (br.prefix.is_output()) {
          add(br.prefix.channel);
          add(br.prefix.object);
          collect_free(br.cont, bound_here, shadow, out);
        } else {
          add(br.prefix.channel);
          with_binder(br.prefix.object, [&] { collect_free(br.cont, bound_here, shadow, out); });
        }
      }
      break;
    case Process::Kind::Restriction:
      with_binder(p.name(), [&] { collect_free(p.body(), bound_here, shadow, out); });
      break;
    case Process::Kind::Parallel:
      collect_free(p.left(), bound_here, shadow, out);
      collect_free(p.right(), bound_here, shadow, out);
      break;
    case Process::Kind::Replication:
      collect_free(p.body(), bound_here, shadow, out);
      break;
  }
}

void collect_bound(const Process& p, NameSet& out) {
  switch (p.kind()) {
    case Process::Kind::Sum:
      for (const auto& br : p.branches()) {
        if (br.prefix.is_input()) out.insert(br.prefix.object);
        collect_bound(br.cont, out);
      }
      break;
    case Process::Kind::Restriction:
      out.insert(p.name());
      collect_bound(p.body(), out);
      break;
    case Process::Kind::Parallel:
      collect_bound(p.left(), out);
      collect_bound(p.right(), out);
      break;
    case Process::Kind::Replication:
      collect_bound(p.body(), out);
      break;
  }
}

bool captures(const NameMap& map, const Name& binder, const Process& scope) {
  bool hit = false;
  for (const auto& [k, v] : map)
    if (v == binder && k != binder) hit = true;
  if (!hit) return false;
  NameSet fn = free_names(scope);
  for (const auto& [k, v] : map)
    if (v == binder && k != binder && fn.count(k)) return true;
  return false;
}

Process rename_rec(const Process& p, const NameMap& map, FreshSupply& supply);

// Enters the scope of `binder`; returns the (possibly renamed) binder and the inner map.
std::pair<Name, NameMap> enter_scope(const Name& binder, const NameMap& map, const Process& scope,
                                     FreshSupply& supply) {
  NameMap inner = map;
  inner.erase(binder);
  Name b = binder;
  if (captures(inner, binder, scope)) {
    b = supply.fresh(binder);
    inner[binder] = b;
  }
  return {b, std::move(inner)};
}

Name apply(const NameMap& map, const Name& n) {
  auto it = map.find(n);
  return it == map.end() ? n : it->second;
}

Process rename_rec(const Process& p, const NameMap& map, FreshSupply& supply) {
  if (map.empty()) return p;
  switch (p.kind()) {
    case Process::Kind::Sum: {
      if (p.is_nil()) return p;
      std::vector<Branch> out;
      for (const auto& br : p.branches()) {
        if (br.prefix.is_tau()) {
          out.push_back({br.prefix, rename_rec(br.cont, map, supply)});
        } else if (br.prefix.is_output()) {
          out.push_back({Prefix::output(apply(map, br.prefix.channel), apply(map, br.prefix.object)),
                         rename_rec(br.cont, map, supply)});
        } else {
          auto [b, inner] = enter_scope(br.prefix.object, map, br.cont, supply);
          out.push_back({Prefix::input(apply(map, br.prefix.channel), b), rename_rec(br.cont, inner, supply)});
        }
      }
      return sum(std::move(out));
    }
    case Process::Kind::Restriction: {
      auto [b, inner] = enter_scope(p.name(), map, p.body(), supply);
      return restrict(b, rename_rec(p.body(), inner, supply));
    }
    case Process::Kind::Parallel:
      return parallel(rename_rec(p.left(), map, supply), rename_rec(p.right(), map, supply));
    case Process::Kind::Replication:
      return replicate(rename_rec(p.body(), map, supply));
  }
  return p;
}

Process uniquify_rec(const Process& p, NameSet& used, FreshSupply& supply, bool all) {
  auto bind = [&](const Name& b, const Process& scope, Name& nb, Process& nscope) {
    if (all || used.count(b)) {
      nb = supply.fresh(b);
      nscope = rename_rec(scope, {{b, nb}}, supply);
    } else {
      nb = b;
      nscope = scope;
    }
    used.insert(nb);
    supply.avoid(nb);
  };
  switch (p.kind()) {
    case Process::Kind::Sum: {
      if (p.is_nil()) return p;
      std::vector<Branch> out;
      for (const auto& br : p.branches()) {
        if (br.prefix.is_input()) {
          Name nb;
          Process scope;
          bind(br.prefix.object, br.cont, nb, scope);
          out.push_back({Prefix::input(br.prefix.channel, nb), uniquify_rec(scope, used, supply, all)});
        } else {
          out.push_back({br.prefix, uniquify_rec(br.cont, used, supply, all)});
        }
      }
      return sum(std::move(out));
    }
    case Process::Kind::Restriction: {
      Name nb;
      Process scope;
      bind(p.name(), p.body(), nb, scope);
      return restrict(nb, uniquify_rec(scope, used, supply, all));
    }
    case Process::Kind::Parallel: {
      Process l = uniquify_rec(p.left(), used, supply, all);
      return parallel(l, uniquify_rec(p.right(), used, supply, all));
    }
    case Process::Kind::Replication:
      return replicate(uniquify_rec(p.body(), used, supply, all));
  }
  return p;
}

void canon_rec(const Process& p, std::map<Name, std::vector<int>>& env, int& counter, std::string& out,
               const std::map<Name, std::string>& alias) {
  auto ref = [&](const Name& n) {
    auto it = env.find(n);
    if (it != env.end() && !it->second.empty()) {
      out += '#';
      out += std::to_string(it->second.back());
    } else if (auto a = alias.find(n); a != alias.end()) {
      out += a->second;
    } else {
      out += n.str();
    }
  };
  auto bind = [&](const Name& b, auto&& body) {
    int idx = counter++;
    out += '#';
    out += std::to_string(idx);
    env[b].push_back(idx);
    body();
    env[b].pop_back();
  };
  switch (p.kind()) {
    case Process::Kind::Sum:
      if (p.is_nil()) {
        out += '0';
        return;
      }
      out += "S(";
      for (std::size_t i = 0; i < p.branches().size(); ++i) {
        const auto& br = p.branches()[i];
        if (i) out += '+';
        if (br.prefix.is_tau()) {
          out += "t.";
          canon_rec(br.cont, env, counter, out, alias);
        } else if (br.prefix.is_output()) {
          out += "o:";
          ref(br.prefix.channel);
          out += ':';
          ref(br.prefix.object);
          out += '.';
          canon_rec(br.cont, env, counter, out, alias);
        } else {
          out += "i:";
          ref(br.prefix.channel);
          out += ':';
          bind(br.prefix.object, [&] {
            out += '.';
            canon_rec(br.cont, env, counter, out, alias);
          });
        }
      }
      out += ')';
      return;
    case Process::Kind::Restriction:
      out += "N";
      bind(p.name(), [&] {
        out += '.';
        canon_rec(p.body(), env, counter, out, alias);
      });
      return;
    case Process::Kind::Parallel:
      out += "P(";
      canon_rec(p.left(), env, counter, out, alias);
      out += '|';
      canon_rec(p.right(), env, counter, out, alias);
      out += ')';
      return;
    case Process::Kind::Replication:
      out += "!(";
      canon_rec(p.body(), env, counter, out, alias);
      out += ')';
      return;
  }
}

// Classification helpers.

struct ClassState {
  bool pi_s = true;
  bool pi_i = true;
  bool nc = true;
  bool async_out = true;
  bool pi_I = true;
};

void classify_rec(const Process& p, const NameSet& chain, ClassState& st) {
  switch (p.kind()) {
    case Process::Kind::Sum: {
      const auto& brs = p.branches();
      bool has_in = false, has_out = false;
      for (const auto& br : brs) {
        has_in = has_in || br.prefix.is_input();
        has_out = has_out || br.prefix.is_output();
      }
      if (has_in && has_out) st.pi_s = false;
      if (brs.size() >= 2) {
        st.nc = false;
        for (const auto& br : brs)
          if (!br.prefix.is_input()) st.pi_i = false;
      }
      for (const auto& br : brs) {
        if (br.prefix.is_output()) {
          if (!br.cont.is_nil()) {
            st.async_out = false;
            st.pi_i = false;
          }
          const Name& arg = br.prefix.object;
          if (!chain.count(arg) || arg == br.prefix.channel) st.pi_I = false;
        }
        classify_rec(br.cont, {}, st);
      }
      return;
    }
    case Process::Kind::Restriction: {
      NameSet inner = chain;
      inner.insert(p.name());
      classify_rec(p.body(), inner, st);
      return;
    }
    case Process::Kind::Parallel:
      classify_rec(p.left(), {}, st);
      classify_rec(p.right(), {}, st);
      return;
    case Process::Kind::Replication:
      classify_rec(p.body(), {}, st);
      return;
  }
}

void subjects_objects(const Process& p, NameSet& subj, NameSet& obj) {
  switch (p.kind()) {
    case Process::Kind::Sum:
      for (const auto& br : p.branches()) {
        if (!br.prefix.is_tau()) {
          subj.insert(br.prefix.channel);
          obj.insert(br.prefix.object);
        }
        subjects_objects(br.cont, subj, obj);
      }
      return;
    case Process::Kind::Restriction:
    case Process::Kind::Replication:
      subjects_objects(p.body(), subj, obj);
      return;
    case Process::Kind::Parallel:
      subjects_objects(p.left(), subj, obj);
      subjects_objects(p.right(), subj, obj);
      return;
  }
}

// Parser.

struct Token {
  enum class Kind { Ident, Number, Sym, End } kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  Lexer(const std::string& s, int line, int column) : s_(s), line_(line), col_(column) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (pos_ >= s_.size()) {
        out.push_back({Token::Kind::End, "", line_, col_});
        return out;
      }
      char c = s_[pos_];
      int l = line_, col = col_;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string t;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                                    s_[pos_] == '\'')) {
          t += s_[pos_];
          advance();
        }
        out.push_back({Token::Kind::Ident, t, l, col});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string t;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
          t += s_[pos_];
          advance();
        }
        out.push_back({Token::Kind::Number, t, l, col});
      } else if (std::string("()?!.+|").find(c) != std::string::npos) {
        advance();
        out.push_back({Token::Kind::Sym, std::string(1, c), l, col});
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", l, col);
      }
    }
  }

 private:
  void advance() {
    if (s_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip_space() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) advance();
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  int line_;
  int col_;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  Process parse_all() {
    Process p = par();
    if (peek().kind != Token::Kind::End) fail("unexpected '" + peek().text + "'");
    return p;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return t_[std::min(i_ + k, t_.size() - 1)]; }
  bool is_sym(const std::string& s, std::size_t k = 0) const {
    return peek(k).kind == Token::Kind::Sym && peek(k).text == s;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, peek().line, peek().column); }
  void expect(const std::string& s) {
    if (!is_sym(s)) fail("expected '" + s + "'");
    ++i_;
  }

  Name name() {
    const Token& tk = peek();
    if (tk.kind != Token::Kind::Ident && tk.kind != Token::Kind::Number) fail("expected a name");
    if (tk.kind == Token::Kind::Ident && is_reserved_word(tk.text)) fail("reserved word '" + tk.text + "'");
    try {
      Name n = Name::parse(tk.text);
      ++i_;
      return n;
    } catch (const ParseError& e) {
      fail(e.what());
    }
  }

  Process par() {
    Process acc = sum_expr();
    while (is_sym("|")) {
      ++i_;
      acc = parallel(acc, sum_expr());
    }
    return acc;
  }

  Process sum_expr() {
    const Token& start = peek();
    Process first = unary();
    if (!is_sym("+")) return first;
    std::vector<Branch> brs;
    auto take = [&](const Process& p, const Token& at) {
      if (p.kind() != Process::Kind::Sum || p.is_nil())
        throw ParseError("operand of '+' must be a guarded sum", at.line, at.column);
      brs.insert(brs.end(), p.branches().begin(), p.branches().end());
    };
    take(first, start);
    while (is_sym("+")) {
      ++i_;
      const Token& at = peek();
      take(unary(), at);
    }
    return sum(std::move(brs));
  }

  Process continuation() {
    if (is_sym(".")) {
      ++i_;
      return unary();
    }
    return nil();
  }

  bool prefix_ahead() const {
    return (peek().kind == Token::Kind::Ident || peek().kind == Token::Kind::Number) && (is_sym("?", 1) || is_sym("!", 1));
  }

  Process unary() {
    const Token& tk = peek();
    if (prefix_ahead()) {
      int line = tk.line, col = tk.column;
      Name ch = name();
      bool input = is_sym("?");
      ++i_;
      expect("(");
      Name obj = name();
      expect(")");
      Prefix pre = input ? Prefix::input(ch, obj) : Prefix::output(ch, obj);
      Process cont = continuation();
      try {
        return prefixed(pre, cont);
      } catch (const BindingError& e) {
        throw ParseError(e.what(), line, col);
      }
    }
    if (tk.kind == Token::Kind::Number) {
      if (tk.text != "0") fail("a numeral must be followed by '?' or '!'");
      ++i_;
      return nil();
    }
    if (tk.kind == Token::Kind::Ident && tk.text == "tau") {
      ++i_;
      return prefixed(Prefix::tau(), continuation());
    }
    if (tk.kind == Token::Kind::Ident && tk.text == "new") {
      ++i_;
      int line = peek().line, col = peek().column;
      Name b = name();
      if (!(peek().kind == Token::Kind::Ident && peek().text == "in")) fail("expected 'in'");
      ++i_;
      Process body = unary();
      try {
        return restrict(b, body);
      } catch (const BindingError& e) {
        throw ParseError(e.what(), line, col);
      }
    }
    if (is_sym("!")) {
      ++i_;
      return replicate(unary());
    }
    if (is_sym("(")) {
      ++i_;
      Process p = par();
      expect(")");
      return p;
    }
    if (tk.kind == Token::Kind::End) fail("unexpected end of input");
    fail("unexpected '" + tk.text + "'");
  }

  std::vector<Token> t_;
  std::size_t i_ = 0;
};

// Printer levels: 0 parallel, 1 sum, 2 unary.
void print_rec(const Process& p, int level, std::string& out);

void print_guard(const Branch& br, std::string& out) {
  switch (br.prefix.kind) {
    case Prefix::Kind::Tau:
      out += "tau";
      break;
    case Prefix::Kind::Input:
      out += br.prefix.channel.str() + "?(" + br.prefix.object.str() + ")";
      break;
    case Prefix::Kind::Output:
      out += br.prefix.channel.str() + "!(" + br.prefix.object.str() + ")";
      break;
  }
  out += '.';
  print_rec(br.cont, 2, out);
}

void print_rec(const Process& p, int level, std::string& out) {
  switch (p.kind()) {
    case Process::Kind::Sum: {
      if (p.is_nil()) {
        out += '0';
        return;
      }
      bool paren = p.branches().size() > 1 && level > 1;
      if (paren) out += '(';
      for (std::size_t i = 0; i < p.branches().size(); ++i) {
        if (i) out += " + ";
        print_guard(p.branches()[i], out);
      }
      if (paren) out += ')';
      return;
    }
    case Process::Kind::Restriction:
      out += "new " + p.name().str() + " in ";
      print_rec(p.body(), 2, out);
      return;
    case Process::Kind::Parallel: {
      bool paren = level > 0;
      if (paren) out += '(';
      print_rec(p.left(), 0, out);
      out += " | ";
      print_rec(p.right(), 1, out);
      if (paren) out += ')';
      return;
    }
    case Process::Kind::Replication:
      out += '!';
      print_rec(p.body(), 2, out);
      return;
  }
}

}  // namespace

NameSet free_names(const Process& p) {
  NameSet out, scratch;
  std::map<Name, int> shadow;
  collect_free(p, scratch, shadow, out);
  return out;
}

namespace {

void ordered_free(const Process& p, std::map<Name, int>& shadow, NameSet& seen, std::vector<Name>& out) {
  auto add = [&](const Name& n) {
    if (!shadow.count(n) && seen.insert(n).second) out.push_back(n);
  };
  auto under = [&](const Name& b, const Process& body) {
    ++shadow[b];
    ordered_free(body, shadow, seen, out);
    if (--shadow[b] == 0) shadow.erase(b);
  };
  switch (p.kind()) {
    case Process::Kind::Sum:
      for (const auto& br : p.branches()) {
        if (br.prefix.is_tau()) {
          ordered_free(br.cont, shadow, seen, out);
        } else if (br.prefix.is_output()) {
          add(br.prefix.channel);
          add(br.prefix.object);
          ordered_free(br.cont, shadow, seen, out);
        } else {
          add(br.prefix.channel);
          under(br.prefix.object, br.cont);
        }
      }
      return;
    case Process::Kind::Restriction:
      under(p.name(), p.body());
      return;
    case Process::Kind::Parallel:
      ordered_free(p.left(), shadow, seen, out);
      ordered_free(p.right(), shadow, seen, out);
      return;
    case Process::Kind::Replication:
      ordered_free(p.body(), shadow, seen, out);
      return;
  }
}

}  // namespace

std::vector<Name> free_names_in_order(const Process& p) {
  std::map<Name, int> shadow;
  NameSet seen;
  std::vector<Name> out;
  ordered_free(p, shadow, seen, out);
  return out;
}

NameSet bound_names(const Process& p) {
  NameSet out;
  collect_bound(p, out);
  return out;
}

NameSet all_names(const Process& p) {
  NameSet out = free_names(p);
  collect_bound(p, out);
  return out;
}

Process rename_free(const Process& p, const NameMap& map, FreshSupply& supply) {
  NameMap m;
  for (const auto& [k, v] : map)
    if (k != v) m.emplace(k, v);
  if (m.empty()) return p;
  for (const auto& [k, v] : m) {
    supply.avoid(k);
    supply.avoid(v);
  }
  supply.avoid(all_names(p));
  return rename_rec(p, m, supply);
}

Process rename_free(const Process& p, const NameMap& map) {
  FreshSupply supply;
  return rename_free(p, map, supply);
}

Process substitute(const Process& p, const Name& replacement, const Name& target) {
  return rename_free(p, {{target, replacement}});
}

Process uniquify_binders(const Process& p, NameSet& used, FreshSupply& supply) {
  supply.avoid(used);
  supply.avoid(all_names(p));
  return uniquify_rec(p, used, supply, false);
}

Process refresh_binders(const Process& p, FreshSupply& supply) {
  supply.avoid(all_names(p));
  NameSet used;
  return uniquify_rec(p, used, supply, true);
}

std::string canonical_form(const Process& p, const std::map<Name, std::string>& alias) {
  std::map<Name, std::vector<int>> env;
  int counter = 0;
  std::string out;
  canon_rec(p, env, counter, out, alias);
  return out;
}

std::string canonical_form(const Process& p) { return canonical_form(p, {}); }

bool alpha_equivalent(const Process& p, const Process& q) {
  return p == q || canonical_form(p) == canonical_form(q);
}

std::string SublanguageProfile::str() const {
  std::string s;
  auto add = [&](bool f, const char* n) {
    if (!f) return;
    if (!s.empty()) s += ',';
    s += n;
  };
  add(pi_m, "pi_m");
  add(pi_s, "pi_s");
  add(pi_i, "pi_i");
  add(pi_nc, "pi_nc");
  add(pi_a, "pi_a");
  add(pi_I, "pi_I");
  add(ccs_vp, "ccs_vp");
  return s;
}

SublanguageProfile classify(const Process& p) {
  ClassState st;
  classify_rec(p, {}, st);
  SublanguageProfile prof;
  prof.pi_s = st.pi_s;
  prof.pi_i = st.pi_s && st.pi_i;
  prof.pi_nc = st.pi_s && st.nc;
  prof.pi_a = prof.pi_nc && st.async_out;
  prof.pi_I = st.pi_I;

  NameSet used = free_names(p);
  FreshSupply supply;
  Process u = uniquify_binders(p, used, supply);
  NameSet subj, obj;
  subjects_objects(u, subj, obj);
  bool disjoint = true;
  for (const auto& n : subj)
    if (obj.count(n)) disjoint = false;
  prof.ccs_vp = disjoint;
  return prof;
}

Process parse_process(const std::string& text, int line, int column) {
  Lexer lx(text, line, column);
  Parser ps(lx.run());
  return ps.parse_all();
}

Process parse_process(const std::string& text) { return parse_process(text, 1, 1); }

std::string print(const Process& p) {
  std::string out;
  print_rec(p, 0, out);
  return out;
}

}  // namespace pielect
