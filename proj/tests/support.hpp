//
// Copyright 2026 The obdax Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "model.hpp"

namespace obdax::testing {

// A finite interpretation over elements 0..n-1.
struct Interp {
  int n = 0;
  std::map<Name, std::set<int>> concepts;
  std::map<Name, std::set<std::pair<int, int>>> roles;

  bool has_role(const Role& r, int a, int b) const {
    auto it = roles.find(r.name);
    if (it == roles.end()) return false;
    return r.inverse ? it->second.count({b, a}) > 0 : it->second.count({a, b}) > 0;
  }

  std::set<int> ext(const Concept& c) const {
    std::set<int> out;
    switch (c.kind) {
      case Concept::Kind::Top:
        for (int i = 0; i < n; ++i) out.insert(i);
        break;
      case Concept::Kind::Bottom:
        break;
      case Concept::Kind::Name:
        if (auto it = concepts.find(c.name); it != concepts.end()) out = it->second;
        break;
      case Concept::Kind::And: {
        for (int i = 0; i < n; ++i) out.insert(i);
        for (const auto& op : c.operands) {
          std::set<int> keep;
          const std::set<int> e = ext(op);
          for (int x : out)
            if (e.count(x)) keep.insert(x);
          out = keep;
        }
        break;
      }
      case Concept::Kind::Exists: {
        const std::set<int> f = ext(c.operands.front());
        for (int a = 0; a < n; ++a)
          for (int b : f)
            if (has_role(c.role, a, b)) out.insert(a);
        break;
      }
    }
    return out;
  }

  bool satisfies(const Ontology& o) const {
    for (const auto& ci : o.concept_inclusions) {
      const std::set<int> l = ext(ci.lhs), r = ext(ci.rhs);
      for (int x : l)
        if (!r.count(x)) return false;
    }
    for (const auto& ri : o.role_inclusions)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (has_role(ri.lhs, a, b) && !has_role(ri.rhs, a, b)) return false;
    for (const auto& d : o.role_disjointness)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          bool all = true;
          for (const auto& r : d.roles) all = all && has_role(Role{r}, a, b);
          if (all) return false;
        }
    return true;
  }
};

// Calls f on every interpretation with n elements over the given names.
// Returns false as soon as f does.
template <class F>
bool for_each_interp(int n, const std::vector<Name>& concepts, const std::vector<Name>& roles, F&& f,
                     Interp base = {}) {
  const std::size_t cbits = concepts.size() * static_cast<std::size_t>(n);
  const std::size_t rbits = roles.size() * static_cast<std::size_t>(n * n);
  const std::size_t bits = cbits + rbits;
  if (bits > 30) return true;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
    Interp I = base;
    I.n = n;
    std::size_t bit = 0;
    for (const auto& c : concepts) {
      auto& e = I.concepts[c];
      e.clear();
      for (int i = 0; i < n; ++i, ++bit)
        if (mask >> bit & 1U) e.insert(i);
    }
    for (const auto& r : roles) {
      auto& e = I.roles[r];
      e.clear();
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b, ++bit)
          if (mask >> bit & 1U) e.insert({a, b});
    }
    if (!f(I)) return false;
  }
  return true;
}

}  // namespace obdax::testing
