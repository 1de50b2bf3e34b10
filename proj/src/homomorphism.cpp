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

#include "homomorphism.hpp"

#include <algorithm>

#include "match.hpp"

namespace obdax {

using match::Interner;
using match::Pattern;
using match::Target;

std::optional<Homomorphism> find_cq_hom(const CQ& from, const CQ& to) {
  if (from.arity() != to.arity())
    throw Error(Error::Kind::Argument, "homomorphism between CQs of different arity");
  const QuotientCQ src = quotient(from);
  const QuotientCQ dst = quotient(to);

  Interner rels, elems;
  Target t(rels, elems);
  for (const auto& v : dst.variables) t.add_element(v);
  for (const auto& a : dst.atoms) t.add_fact(a);

  Interner vars;
  Pattern p = match::compile(src.atoms, rels, vars);
  for (const auto& v : src.variables) vars.intern(v);
  p.num_vars = static_cast<int>(vars.size());

  std::vector<int> fixed(vars.size(), -1);
  for (std::size_t i = 0; i < src.answer.size(); ++i) {
    const auto slot = static_cast<std::size_t>(vars.find(src.answer[i]));
    const int target = elems.find(dst.answer[i]);
    if (fixed[slot] >= 0 && fixed[slot] != target) return std::nullopt;
    fixed[slot] = target;
  }

  std::optional<std::vector<int>> found;
  match::enumerate(p, t, fixed, [&](const std::vector<int>& asg) {
    found = asg;
    return false;
  });
  if (!found) return std::nullopt;
  // Variables outside atoms and answers may go anywhere in the target.
  for (auto& slot : *found) {
    if (slot >= 0) continue;
    if (t.domain().empty()) return std::nullopt;
    slot = t.domain().front();
  }
  Homomorphism h;
  for (const auto& [v, r] : src.rep)
    h.assignment[v] = elems.name((*found)[static_cast<std::size_t>(vars.find(r))]);
  return h;
}

bool cq_contained(const CQ& q1, const CQ& q2) { return find_cq_hom(q2, q1).has_value(); }

bool ucq_contained(const UCQ& u1, const UCQ& u2) {
  if (u1.arity != u2.arity) throw Error(Error::Kind::Argument, "containment between UCQs of different arity");
  return std::all_of(u1.disjuncts.begin(), u1.disjuncts.end(), [&](const CQ& d1) {
    return std::any_of(u2.disjuncts.begin(), u2.disjuncts.end(),
                       [&](const CQ& d2) { return cq_contained(d1, d2); });
  });
}

bool ucq_equivalent(const UCQ& u1, const UCQ& u2) {
  return ucq_contained(u1, u2) && ucq_contained(u2, u1);
}

namespace {

struct Compiled {
  Interner rels, elems, vars;
  Target target{rels, elems};
  Pattern pattern;
  QuotientCQ quo;
  std::vector<int> answer_slots;
  bool has_floating_quantified = false;  // quantified variable outside atoms
};

void compile_query(Compiled& c, const CQ& q, const Database& d) {
  for (const auto& f : d.facts) c.target.add_fact(f);
  c.quo = quotient(q);
  c.pattern = match::compile(c.quo.atoms, c.rels, c.vars);
  std::set<Name> in_atoms;
  for (const auto& a : c.quo.atoms) in_atoms.insert(a.args.begin(), a.args.end());
  for (const auto& v : c.quo.variables) c.vars.intern(v);
  c.pattern.num_vars = static_cast<int>(c.vars.size());
  std::set<Name> answers(c.quo.answer.begin(), c.quo.answer.end());
  for (const auto& v : c.quo.variables)
    if (!in_atoms.count(v) && !answers.count(v)) c.has_floating_quantified = true;
  for (const auto& a : c.quo.answer) c.answer_slots.push_back(c.vars.find(a));
}

}  // namespace

std::set<Tuple> evaluate(const CQ& q, const Database& d) {
  Compiled c;
  compile_query(c, q, d);
  std::set<Tuple> out;
  if (c.has_floating_quantified && c.target.domain().empty()) return out;

  std::set<std::vector<int>> partial;
  match::enumerate(c.pattern, c.target, {}, [&](const std::vector<int>& asg) {
    std::vector<int> proj;
    for (int s : c.answer_slots) proj.push_back(asg[static_cast<std::size_t>(s)]);
    partial.insert(std::move(proj));
    return true;
  });
  const auto& dom = c.target.domain();
  for (const auto& proj : partial) {
    // Answer variables outside atoms range over the active domain.
    std::vector<int> free_slots;
    for (std::size_t i = 0; i < proj.size(); ++i)
      if (proj[i] < 0 &&
          std::find(free_slots.begin(), free_slots.end(), c.answer_slots[i]) == free_slots.end())
        free_slots.push_back(c.answer_slots[i]);
    if (!free_slots.empty() && dom.empty()) continue;
    std::vector<std::size_t> idx(free_slots.size(), 0);
    while (true) {
      Tuple t;
      for (std::size_t i = 0; i < proj.size(); ++i) {
        int e = proj[i];
        if (e < 0) {
          auto pos = std::find(free_slots.begin(), free_slots.end(), c.answer_slots[i]) - free_slots.begin();
          e = dom[idx[static_cast<std::size_t>(pos)]];
        }
        t.push_back(c.elems.name(e));
      }
      out.insert(std::move(t));
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == dom.size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
  }
  return out;
}

std::set<Tuple> evaluate(const UCQ& u, const Database& d) {
  std::set<Tuple> out;
  for (const auto& q : u.disjuncts) {
    auto part = evaluate(q, d);
    out.insert(part.begin(), part.end());
  }
  return out;
}

bool is_answer(const CQ& q, const Database& d, const Tuple& tuple) {
  if (tuple.size() != q.arity()) return false;
  Compiled c;
  compile_query(c, q, d);
  if (c.has_floating_quantified && c.target.domain().empty()) return false;
  std::vector<int> fixed(static_cast<std::size_t>(c.pattern.num_vars), -1);
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    const int e = c.elems.find(tuple[i]);
    if (e < 0) return false;  // not in adom(d)
    int& slot = fixed[static_cast<std::size_t>(c.answer_slots[i])];
    if (slot >= 0 && slot != e) return false;
    slot = e;
  }
  return !match::enumerate(c.pattern, c.target, fixed, [](const std::vector<int>&) { return false; });
}

bool is_answer(const UCQ& u, const Database& d, const Tuple& tuple) {
  return std::any_of(u.disjuncts.begin(), u.disjuncts.end(),
                     [&](const CQ& q) { return is_answer(q, d, tuple); });
}

}  // namespace obdax
