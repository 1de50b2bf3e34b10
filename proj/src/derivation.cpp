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

#include "derivation.hpp"

#include <functional>
#include <map>

namespace obdax {

namespace {

std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

}  // namespace

DerivationOracle::DerivationOracle(const NormalFormOntology& nf) : nf_(nf) {
  if (nf.concepts.size() > 20) throw Error(Error::Kind::Argument, "derivation oracle: too many concept names");
  if (!nf.disjoint_roles.empty()) throw Error(Error::Kind::Argument, "derivation oracle: role disjointness");

  // Role closure by Floyd-Warshall over role codes.
  const std::size_t n = 2 * nf.roles.size();
  roles_.assign(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) roles_[i][i] = 1;
  for (const auto& ri : nf.role_inclusions) {
    roles_[static_cast<std::size_t>(ri.sub)][static_cast<std::size_t>(ri.sup)] = 1;
    roles_[static_cast<std::size_t>(ri.sub ^ 1)][static_cast<std::size_t>(ri.sup ^ 1)] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (roles_[i][k] && roles_[k][j]) roles_[i][j] = 1;

  // All types closed under the ⊤ and conjunction axioms.
  const int nc = static_cast<int>(nf.concepts.size());
  for (std::uint64_t t = 0; t < bit(nc); ++t) {
    bool closed = true;
    for (int a : nf.top_axioms) closed = closed && (t & bit(a));
    for (const auto& c : nf.conj_axioms) {
      bool all = true;
      for (int a : c.lhs) all = all && (t & bit(a));
      if (all && !(t & bit(c.rhs))) closed = false;
    }
    if (nf.bottom >= 0 && (t & bit(nf.bottom))) closed = false;
    if (closed) types_.push_back(t);
  }
  // Eliminate types with an unsatisfiable existential demand.
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<std::uint64_t> keep;
    for (std::uint64_t t : types_) {
      bool ok = true;
      for (const auto& e : nf.exists_rhs) {
        if (!(t & bit(e.lhs))) continue;
        bool found = false;
        for (std::uint64_t u : types_)
          if ((u & bit(e.filler)) && compatible(t, e.role, u)) {
            found = true;
            break;
          }
        ok = ok && found;
      }
      if (ok)
        keep.push_back(t);
      else
        changed = true;
    }
    types_ = std::move(keep);
  }
}

bool DerivationOracle::compatible(std::uint64_t t, int role, std::uint64_t u) const {
  for (const auto& e : nf_.exists_lhs) {
    if (roles_[static_cast<std::size_t>(role)][static_cast<std::size_t>(e.role)] && (u & bit(e.filler)) &&
        !(t & bit(e.rhs)))
      return false;
    if (roles_[static_cast<std::size_t>(role ^ 1)][static_cast<std::size_t>(e.role)] && (t & bit(e.filler)) &&
        !(u & bit(e.rhs)))
      return false;
  }
  return true;
}

bool DerivationOracle::subsumes(std::uint64_t premise, int target) const {
  for (std::uint64_t t : types_)
    if ((t & premise) == premise && !(t & bit(target))) return false;
  return true;
}

bool DerivationOracle::role_entailed(int sub_code, int sup_code) const {
  return roles_[static_cast<std::size_t>(sub_code)][static_cast<std::size_t>(sup_code)] != 0;
}

struct DerivationOracle::Derived {
  std::vector<Name> names;
  std::map<Name, int> ids;
  std::vector<std::uint64_t> facts;
  // (constant, concept) -> justification: premise mask at that constant, or
  // the (neighbour, filler) used by the role rule.
  std::map<std::pair<int, int>, std::pair<std::uint64_t, std::pair<int, int>>> why;
  std::vector<std::vector<std::pair<int, int>>> edges;  // (role code, neighbour)
};

DerivationOracle::Derived DerivationOracle::run(const ABox& a) const {
  Derived d;
  for (const auto& n : a.adom()) {
    d.ids.emplace(n, static_cast<int>(d.names.size()));
    d.names.push_back(n);
  }
  d.facts.assign(d.names.size(), 0);
  d.edges.resize(d.names.size());
  for (const auto& f : a.facts) {
    if (f.args.size() == 1) {
      const int c = nf_.concept_id(f.relation);
      if (c < 0) continue;
      d.facts[static_cast<std::size_t>(d.ids[f.args[0]])] |= bit(c);
    } else {
      const int r = nf_.role_id(f.relation);
      if (r < 0) continue;
      const int x = d.ids[f.args[0]], y = d.ids[f.args[1]];
      d.edges[static_cast<std::size_t>(x)].emplace_back(2 * r, y);
      d.edges[static_cast<std::size_t>(y)].emplace_back(2 * r + 1, x);
    }
  }
  const int nc = static_cast<int>(nf_.concepts.size());
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t x = 0; x < d.names.size(); ++x)
      for (int c = 0; c < nc; ++c) {
        if (d.facts[x] & bit(c)) continue;
        if (subsumes(d.facts[x], c)) {
          d.why[{static_cast<int>(x), c}] = {d.facts[x], {-1, -1}};
          d.facts[x] |= bit(c);
          changed = true;
          continue;
        }
        for (const auto& e : nf_.exists_lhs) {
          if (e.rhs != c) continue;
          for (const auto& [code, y] : d.edges[x])
            if (role_entailed(code, e.role) && (d.facts[static_cast<std::size_t>(y)] & bit(e.filler))) {
              d.why[{static_cast<int>(x), c}] = {0, {y, e.filler}};
              d.facts[x] |= bit(c);
              changed = true;
              break;
            }
          if (d.facts[x] & bit(c)) break;
        }
      }
  }
  return d;
}

ABox DerivationOracle::entailed_facts(const ABox& a) const {
  const Derived d = run(a);
  ABox out;
  for (std::size_t x = 0; x < d.names.size(); ++x) {
    for (std::size_t c = 0; c < nf_.concepts.size(); ++c)
      if ((d.facts[x] & bit(static_cast<int>(c))) && !nf_.internal[c])
        out.facts.insert({nf_.concepts[c], {d.names[x]}});
    for (const auto& [code, y] : d.edges[x])
      for (std::size_t s = 0; s < roles_.size(); ++s) {
        if (!roles_[static_cast<std::size_t>(code)][s] || s % 2) continue;
        out.facts.insert({nf_.roles[s / 2], {d.names[x], d.names[static_cast<std::size_t>(y)]}});
      }
  }
  return out;
}

std::optional<DerivationTree> DerivationOracle::derive(const ABox& a, const Name& constant,
                                                       const Name& concept_name) const {
  const Derived d = run(a);
  const auto xi = d.ids.find(constant);
  const int c = nf_.concept_id(concept_name);
  if (xi == d.ids.end() || c < 0 || !(d.facts[static_cast<std::size_t>(xi->second)] & bit(c))) return std::nullopt;
  std::function<DerivationTree(int, int)> build = [&](int x, int k) {
    DerivationTree t{d.names[static_cast<std::size_t>(x)], nf_.concepts[static_cast<std::size_t>(k)], {}, false};
    auto it = d.why.find({x, k});
    if (it == d.why.end()) return t;  // asserted
    const auto& [premise, link] = it->second;
    if (link.first >= 0) {
      t.via_role = true;
      t.children.push_back(build(link.first, link.second));
    } else {
      for (int b = 0; b < static_cast<int>(nf_.concepts.size()); ++b)
        if (premise & bit(b)) t.children.push_back(build(x, b));
    }
    return t;
  };
  return build(xi->second, c);
}

}  // namespace obdax
