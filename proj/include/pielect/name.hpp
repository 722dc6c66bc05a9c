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

#pragma once

#include <compare>
#include <cstdint>
#include <set>
#include <string>

namespace pielect {

// A channel name. Numerals double as process identifiers and are never bound.
class Name {
 public:
  enum class Kind { Numeric, Symbolic };

  Name() : Name(Kind::Symbolic, 0, "out") {}

  static Name num(std::uint64_t value) { return Name(Kind::Numeric, value, {}); }
  // Throws ParseError unless `text` is a valid identifier.
  static Name sym(std::string text);
  static Name out() { return Name(Kind::Symbolic, 0, "out"); }
  // Numeral for an all-digit string, identifier otherwise.
  static Name parse(const std::string& text);

  Kind kind() const { return kind_; }
  bool numeric() const { return kind_ == Kind::Numeric; }
  bool symbolic() const { return kind_ == Kind::Symbolic; }
  bool is_out() const { return symbolic() && text_ == "out"; }
  bool bindable() const { return symbolic() && !is_out(); }
  std::uint64_t value() const { return value_; }
  const std::string& text() const { return text_; }
  std::string str() const { return numeric() ? std::to_string(value_) : text_; }

  friend bool operator==(const Name& a, const Name& b) {
    return a.kind_ == b.kind_ && a.value_ == b.value_ && a.text_ == b.text_;
  }
  friend std::strong_ordering operator<=>(const Name& a, const Name& b) {
    if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
    if (auto c = a.value_ <=> b.value_; c != 0) return c;
    return a.text_.compare(b.text_) <=> 0;
  }

 private:
  Name(Kind k, std::uint64_t v, std::string t) : kind_(k), value_(v), text_(std::move(t)) {}

  Kind kind_;
  std::uint64_t value_;
  std::string text_;
};

using NameSet = std::set<Name>;

bool is_identifier(const std::string& text);
bool is_reserved_word(const std::string& text);

// Deterministic source of names that avoid a growing set.
class FreshSupply {
 public:
  FreshSupply() = default;
  explicit FreshSupply(NameSet avoid) : avoid_(std::move(avoid)) {}

  void avoid(const Name& n) { avoid_.insert(n); }
  void avoid(const NameSet& names) { avoid_.insert(names.begin(), names.end()); }
  bool avoids(const Name& n) const { return avoid_.count(n) > 0; }

  // stem', stem'2, stem'3, ... where stem is the hint up to its first quote.
  Name fresh(const Name& hint);
  // stem0, stem1, ...
  Name fresh_indexed(const std::string& stem);

 private:
  NameSet avoid_;
};

}  // namespace pielect
