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

#include "mappings.hpp"

#include <algorithm>
#include <limits>

#include "homomorphism.hpp"

namespace obdax {

Database apply_forward_db(const Mappings& m, const Database& d) {
  Database out;
  for (const auto& mapping : m) {
    // Distinct head variables become the answer variables of the body CQ.
    CQ body;
    for (const auto& v : mapping.head.args)
      if (std::find(body.answer_vars.begin(), body.answer_vars.end(), v) == body.answer_vars.end())
        body.answer_vars.push_back(v);
    for (const auto& a : mapping.body) {
      body.atoms.insert(a);
      for (const auto& v : a.args)
        if (std::find(body.answer_vars.begin(), body.answer_vars.end(), v) == body.answer_vars.end())
          body.quantified_vars.insert(v);
    }
    for (const auto& tuple : evaluate(body, d)) {
      Fact f{mapping.head.relation, {}};
      for (const auto& v : mapping.head.args) {
        auto pos = std::find(body.answer_vars.begin(), body.answer_vars.end(), v) - body.answer_vars.begin();
        f.args.push_back(tuple[static_cast<std::size_t>(pos)]);
      }
      out.facts.insert(std::move(f));
    }
  }
  return out;
}

namespace {

void set_quantified(CQ& q) {
  std::set<Name> ans(q.answer_vars.begin(), q.answer_vars.end());
  q.quantified_vars.clear();
  for (const auto& a : q.atoms)
    for (const auto& v : a.args)
      if (!ans.count(v)) q.quantified_vars.insert(v);
  for (const auto& e : q.equalities)
    for (const Name* v : {&e.left, &e.right})
      if (!ans.count(*v)) q.quantified_vars.insert(*v);
}

}  // namespace

CQ apply_forward_query(const Mappings& m, const CQ& q) {
  const Database image = apply_forward_db(m, quotient_database(q));
  CQ out;
  out.answer_vars = q.answer_vars;
  out.atoms = image.facts;
  out.equalities = q.equalities;
  set_quantified(out);
  return out;
}

UCQ apply_forward_query(const Mappings& m, const UCQ& q) {
  UCQ out;
  out.arity = q.arity;
  for (const auto& d : q.disjuncts) out.disjuncts.push_back(apply_forward_query(m, d));
  return out;
}

std::optional<Substitution> suitable(const GavMapping& mapping, const Fact& fact) {
  if (mapping.head.relation != fact.relation || mapping.head.args.size() != fact.args.size())
    return std::nullopt;
  Substitution sigma;
  for (std::size_t i = 0; i < fact.args.size(); ++i) {
    auto [it, inserted] = sigma.emplace(mapping.head.args[i], fact.args[i]);
    if (!inserted && it->second != fact.args[i]) return std::nullopt;
  }
  return sigma;
}

std::vector<Suitable> suitable_mappings(const Mappings& m, const Fact& fact) {
  std::vector<Suitable> out;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (auto s = suitable(m[i], fact)) out.push_back({i, std::move(*s)});
  return out;
}

std::vector<Suitable> unifiable_mappings(const Mappings& m, const Atom& atom) {
  std::vector<Suitable> out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const Atom& head = m[i].head;
    if (head.relation != atom.relation || head.args.size() != atom.args.size()) continue;
    Suitable s{i, {}, {}};
    for (std::size_t k = 0; k < atom.args.size(); ++k) {
      auto [it, inserted] = s.sigma.emplace(head.args[k], atom.args[k]);
      if (!inserted && it->second != atom.args[k]) s.equalities.push_back({it->second, atom.args[k]});
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<Atom> instantiate_body(const GavMapping& mapping, const Substitution& sigma,
                                   const std::function<Name()>& fresh) {
  Substitution ext = sigma;
  std::vector<Atom> out;
  for (const auto& a : mapping.body) {
    Atom b{a.relation, {}};
    for (const auto& v : a.args) {
      auto it = ext.find(v);
      if (it == ext.end()) it = ext.emplace(v, fresh()).first;
      b.args.push_back(it->second);
    }
    out.push_back(std::move(b));
  }
  return out;
}

BackwardChoices::BackwardChoices(const Mappings& m, const CQ& r, bool constants) : m_(m), r_(r) {
  const QuotientCQ quo = quotient(r);
  facts_.assign(quo.atoms.begin(), quo.atoms.end());
  taken_ = r.variables();
  for (const auto& f : facts_) {
    options_.push_back(constants ? suitable_mappings(m, f) : unifiable_mappings(m, f));
    if (options_.back().empty()) dead_ = true;
  }
  cursor_.assign(facts_.size(), 0);
  exhausted_ = dead_;
}

std::uint64_t BackwardChoices::count() const {
  if (dead_) return 0;
  std::uint64_t n = 1;
  for (const auto& o : options_) {
    if (n > std::numeric_limits<std::uint64_t>::max() / o.size()) return std::numeric_limits<std::uint64_t>::max();
    n *= o.size();
  }
  return n;
}

std::optional<CQ> BackwardChoices::next() {
  if (exhausted_) return std::nullopt;
  CQ out;
  out.answer_vars = r_.answer_vars;
  out.equalities = r_.equalities;
  auto fresh = [&]() {
    Name n;
    do n = "_f" + std::to_string(counter_++);
    while (taken_.count(n));
    return n;
  };
  last_.clear();
  for (std::size_t i = 0; i < facts_.size(); ++i) {
    const Suitable& s = options_[i][cursor_[i]];
    last_.push_back(s.mapping);
    for (auto& a : instantiate_body(m_[s.mapping], s.sigma, fresh)) out.atoms.insert(std::move(a));
    out.equalities.insert(s.equalities.begin(), s.equalities.end());
  }
  set_quantified(out);
  std::size_t k = 0;
  while (k < cursor_.size() && ++cursor_[k] == options_[k].size()) cursor_[k++] = 0;
  if (k == cursor_.size()) exhausted_ = true;
  return out;
}

std::vector<std::size_t> BackwardChoices::last_choice() const { return last_; }

namespace {

BackwardResult backward(const Mappings& m, const CQ& r, std::size_t cap, bool constants) {
  BackwardResult res;
  res.query.arity = r.arity();
  BackwardChoices choices(m, r, constants);
  res.dead_fact = choices.has_dead_fact();
  while (auto d = choices.next()) {
    if (cap && res.query.disjuncts.size() == cap) {
      res.capped = true;
      break;
    }
    res.query.disjuncts.push_back(std::move(*d));
  }
  return res;
}

}  // namespace

BackwardResult apply_backward_query(const Mappings& m, const CQ& r, std::size_t cap) {
  return backward(m, r, cap, false);
}

BackwardResult apply_backward_query(const Mappings& m, const UCQ& r, std::size_t cap) {
  BackwardResult res;
  res.query.arity = r.arity;
  for (const auto& d : r.disjuncts) {
    BackwardResult part = apply_backward_query(m, d, cap);
    res.dead_fact = res.dead_fact || part.dead_fact;
    res.capped = res.capped || part.capped;
    for (auto& q : part.query.disjuncts) res.query.disjuncts.push_back(std::move(q));
  }
  return res;
}

BackwardResult apply_backward(const Mappings& m, const ABox& a, const Tuple& tuple, std::size_t cap) {
  return backward(m, view_as_cq(a, tuple), cap, true);
}

}  // namespace obdax
