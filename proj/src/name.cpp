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

#include "pielect/name.hpp"

#include <cctype>

#include "pielect/error.hpp"

namespace pielect {

bool is_reserved_word(const std::string& text) {
  return text == "new" || text == "in" || text == "tau";
}

bool is_identifier(const std::string& text) {
  if (text.empty()) return false;
  auto c0 = static_cast<unsigned char>(text[0]);
  if (!std::isalpha(c0) && text[0] != '_') return false;
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (!std::isalnum(c) && ch != '_' && ch != '\'') return false;
  }
  return !is_reserved_word(text);
}

Name Name::sym(std::string text) {
  if (!is_identifier(text)) throw ParseError("invalid name '" + text + "'", 1, 1);
  return Name(Kind::Symbolic, 0, std::move(text));
}

Name Name::parse(const std::string& text) {
  if (!text.empty() && text.find_first_not_of("0123456789") == std::string::npos) {
    if (text.size() > 18) throw ParseError("numeral too large '" + text + "'", 1, 1);
    return num(std::stoull(text));
  }
  return sym(text);
}

Name FreshSupply::fresh(const Name& hint) {
  std::string stem = hint.symbolic() && !hint.is_out() ? hint.text() : "v";
  stem = stem.substr(0, stem.find('\''));
  for (std::uint64_t i = 1;; ++i) {
    Name cand = Name::sym(i == 1 ? stem + "'" : stem + "'" + std::to_string(i));
    if (avoid_.insert(cand).second) return cand;
  }
}

Name FreshSupply::fresh_indexed(const std::string& stem) {
  for (std::uint64_t i = 0;; ++i) {
    Name cand = Name::sym(stem + std::to_string(i));
    if (avoid_.insert(cand).second) return cand;
  }
}

}  // namespace pielect
