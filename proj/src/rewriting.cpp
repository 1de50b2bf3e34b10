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

#include "rewriting.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "canon.hpp"
#include "homomorphism.hpp"

namespace obdax {

namespace {

std::vector<Tuple> tuples_over(const std::vector<Name>& dom, std::size_t arity) {
  std::vector<Tuple> out;
  if (arity > 0 && dom.empty()) return out;
  std::vector<std::size_t> idx(arity, 0);
  while (true) {
    Tuple t;
    for (auto i : idx) t.push_back(dom[i]);
    out.push_back(std::move(t));
    std::size_t k = 0;
    while (k < arity && ++idx[k] == dom.size()) idx[k++] = 0;
    if (k == arity) break;
  }
  return out;
}

// A tree node below a core constant: the role on the edge from its parent,
// its concept label, and its children.
struct Tree {
  Role edge;
  std::vector<Name> label;
  std::vector<Tree> children;
  std::size_t facts = 0;  // edge + label + subtree
  std::size_t height = 0;
};

class TreeFactory {
 public:
  TreeFactory(const Schema& schema, std::size_t outdegree)
      : concepts_(schema.concept_names()), outdegree_(outdegree) {
    for (const auto& r : schema.role_names()) {
      roles_.push_back(Role{r, false});
      roles_.push_back(Role{r, true});
    }
  }

  // All trees of height ≤ h (edge included) with at most `max_facts` facts,
  // as a canonical list: children multisets are non-decreasing index lists.
  const std::vector<Tree>& trees(std::size_t h, std::size_t max_facts) {
    auto key = std::make_pair(h, max_facts);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<Tree> out;
    if (h > 0 && max_facts > 0) {
      const std::vector<Tree> kids = h > 1 ? trees(h - 1, max_facts - 1) : std::vector<Tree>{};
      for (const auto& role : roles_) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << concepts_.size()); ++mask) {
          Tree base;
          base.edge = role;
          for (std::size_t i = 0; i < concepts_.size(); ++i)
            if (mask >> i & 1U) base.label.push_back(concepts_[i]);
          base.facts = 1 + base.label.size();
          base.height = 1;
          if (base.facts > max_facts) continue;
          std::vector<std::size_t> chosen;
          add_children(base, kids, chosen, 0, max_facts, out);
        }
      }
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

  // Non-decreasing selections of at most `outdegree` trees from `options`.
  void forests(const std::vector<Tree>& options, std::size_t max_facts,
               const std::function<void(const std::vector<const Tree*>&, std::size_t)>& cb) {
    std::vector<const Tree*> sel;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t used) {
      cb(sel, used);
      if (sel.size() == outdegree_) return;
      for (std::size_t i = from; i < options.size(); ++i) {
        if (used + options[i].facts > max_facts) continue;
        sel.push_back(&options[i]);
        rec(i, used + options[i].facts);
        sel.pop_back();
      }
    };
    rec(0, 0);
  }

 private:
  void add_children(const Tree& base, const std::vector<Tree>& kids, std::vector<std::size_t>& chosen,
                    std::size_t from, std::size_t max_facts, std::vector<Tree>& out) {
    Tree t = base;
    for (std::size_t i : chosen) {
      t.children.push_back(kids[i]);
      t.facts += kids[i].facts;
      t.height = std::max(t.height, kids[i].height + 1);
    }
    out.push_back(t);
    if (chosen.size() == outdegree_) return;
    for (std::size_t i = from; i < kids.size(); ++i) {
      if (t.facts + kids[i].facts > max_facts) continue;
      chosen.push_back(i);
      add_children(base, kids, chosen, i, max_facts, out);
      chosen.pop_back();
    }
  }

  std::vector<Name> concepts_;
  std::vector<Role> roles_;
  std::size_t outdegree_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Tree>> memo_;
};

void emit_tree(const Tree& t, const Name& parent, std::size_t& counter, std::size_t depth, ABox& out,
               std::size_t& max_depth, std::map<Name, std::size_t>& outdeg) {
  const Name me = "t" + std::to_string(++counter);
  if (t.edge.inverse)
    out.facts.insert({t.edge.name, {me, parent}});
  else
    out.facts.insert({t.edge.name, {parent, me}});
  ++outdeg[parent];
  max_depth = std::max(max_depth, depth);
  for (const auto& c : t.label) out.facts.insert({c, {me}});
  for (const auto& ch : t.children) emit_tree(ch, me, counter, depth + 1, out, max_depth, outdeg);
}

}  // namespace

bool enumerate_pseudo_tree_aboxes(
    const Schema& schema, const RewritingBudget& budget, std::size_t arity,
    const std::function<bool(const PseudoTreeAbox&, const std::vector<Tuple>&)>& cb) {
  if (budget.max_abox_size == 0) return true;
  const std::vector<Name> concepts = schema.concept_names();
  const std::vector<Name> roles = schema.role_names();
  TreeFactory factory(schema, budget.max_outdegree);
  std::set<std::string> seen;

  auto yield = [&](PseudoTreeAbox& p) {
    Database marked = p.abox;
    for (const auto& c : p.core) marked.facts.insert({"\x01core", {c}});
    if (!seen.insert(canonical_form(marked).key).second) return true;
    return cb(p, tuples_over(p.core, arity));
  };

  {
    PseudoTreeAbox empty;
    if (!yield(empty)) return false;
  }
  for (std::size_t k = 1; k <= budget.max_core; ++k) {
    std::vector<Name> core;
    for (std::size_t i = 1; i <= k; ++i) core.push_back("c" + std::to_string(i));
    std::vector<Fact> slots;
    for (const auto& c : concepts)
      for (const auto& a : core) slots.push_back({c, {a}});
    for (const auto& r : roles)
      for (const auto& a : core)
        for (const auto& b : core) slots.push_back({r, {a, b}});
    if (slots.size() > 24) throw Error(Error::Kind::Argument, "pseudo-tree enumeration: core too large");
    std::set<std::string> seen_cores;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
      ABox core_abox;
      for (std::size_t i = 0; i < slots.size(); ++i)
        if (mask >> i & 1U) core_abox.facts.insert(slots[i]);
      if (core_abox.facts.size() > budget.max_abox_size) continue;
      {
        Database marked = core_abox;
        for (const auto& c : core) marked.facts.insert({"\x01core", {c}});
        if (!seen_cores.insert(canonical_form(marked).key).second) continue;
      }
      // Attach a forest to each core constant, within the remaining budget.
      const std::size_t room = budget.max_abox_size - core_abox.facts.size();
      const std::vector<Tree>& options = factory.trees(budget.max_depth, room);
      std::vector<std::vector<const Tree*>> forest(k);
      bool keep = true;
      std::function<void(std::size_t, std::size_t)> place = [&](std::size_t i, std::size_t used) {
        if (!keep) return;
        if (i == k) {
          PseudoTreeAbox p;
          p.core = core;
          p.abox = core_abox;
          std::size_t counter = 0;
          std::map<Name, std::size_t> outdeg;
          for (std::size_t j = 0; j < k; ++j)
            for (const Tree* t : forest[j]) emit_tree(*t, core[j], counter, 1, p.abox, p.depth, outdeg);
          for (const auto& [n, d] : outdeg) p.outdegree = std::max(p.outdegree, d);
          // Every core constant must occur in some fact.
          const std::set<Name> dom = p.abox.adom();
          for (const auto& c : core)
            if (!dom.count(c)) return;
          keep = yield(p);
          return;
        }
        factory.forests(options, room - used, [&](const std::vector<const Tree*>& sel, std::size_t facts) {
          if (!keep) return;
          forest[i] = sel;
          place(i + 1, used + facts);
        });
      };
      place(0, 0);
      if (!keep) return false;
    }
  }
  return true;
}

ABox frontier_closure(const PseudoTreeAbox& a, std::size_t frontier, const Schema& schema) {
  std::map<Name, std::size_t> dist;
  std::deque<Name> queue;
  for (const auto& c : a.core)
    if (dist.emplace(c, 0).second) queue.push_back(c);
  std::map<Name, std::set<Name>> adj;
  for (const auto& f : a.abox.facts)
    for (const auto& x : f.args)
      for (const auto& y : f.args)
        if (x != y) adj[x].insert(y);
  while (!queue.empty()) {
    const Name x = queue.front();
    queue.pop_front();
    for (const auto& y : adj[x])
      if (dist.emplace(y, dist[x] + 1).second) queue.push_back(y);
  }
  auto far = [&](const Name& x) {
    auto it = dist.find(x);
    return it == dist.end() || it->second > frontier;
  };
  ABox out;
  for (const auto& f : a.abox.facts)
    if (std::none_of(f.args.begin(), f.args.end(), far)) out.facts.insert(f);
  for (const auto& [x, d] : dist) {
    if (d != frontier) continue;
    for (const auto& c : schema.concept_names()) out.facts.insert({c, {x}});
    for (const auto& r : schema.role_names()) out.facts.insert({r, {x, x}});
  }
  return out;
}

bool enumerate_aboxes(const Schema& schema, std::size_t max_facts, const std::function<bool(const ABox&)>& cb,
                      std::size_t max_domain) {
  std::vector<ABox> level{ABox{}};
  if (!cb(ABox{})) return false;
  for (std::size_t size = 1; size <= max_facts; ++size) {
    std::map<std::string, ABox> next;
    for (const auto& a : level) {
      const std::set<Name> dom = a.adom();
      std::vector<Name> pool(dom.begin(), dom.end());
      for (const auto& [rel, arity] : schema.relations()) {
        // Arguments range over the existing constants plus up to `arity`
        // fresh ones, introduced in order.
        std::vector<Name> fresh;
        for (std::size_t i = 0; i < arity; ++i) fresh.push_back(fresh_name("n" + std::to_string(i), dom));
        std::vector<Name> args(arity);
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t used_fresh) {
          if (pos == arity) {
            Fact f{rel, args};
            if (a.facts.count(f)) return;
            ABox b = a;
            b.facts.insert(f);
            Canonical c = canonical_form(b);
            next.emplace(c.key, std::move(c.database));
            return;
          }
          for (const auto& x : pool) {
            args[pos] = x;
            rec(pos + 1, used_fresh);
          }
          for (std::size_t j = 0; j <= used_fresh && j < arity; ++j) {
            if (max_domain && j == used_fresh && pool.size() + used_fresh >= max_domain) break;
            args[pos] = fresh[j];
            rec(pos + 1, std::max(used_fresh, j + 1));
          }
        };
        rec(0, 0);
      }
    }
    level.clear();
    for (auto& [k, b] : next) {
      if (!cb(b)) return false;
      level.push_back(std::move(b));
    }
  }
  return true;
}

CQ pair_as_cq(const ABox& a, const Tuple& tuple) {
  CQ q;
  std::map<Name, Name> ren;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    const Name x = "x" + std::to_string(i + 1);
    q.answer_vars.push_back(x);
    auto [it, inserted] = ren.emplace(tuple[i], x);
    if (!inserted) q.equalities.insert({it->second, x});
  }
  std::size_t counter = 0;
  for (const auto& c : a.adom())
    if (!ren.count(c)) ren.emplace(c, "y" + std::to_string(counter++));
  for (const auto& f : a.facts) {
    Atom at{f.relation, {}};
    for (const auto& x : f.args) at.args.push_back(ren.at(x));
    q.atoms.insert(std::move(at));
  }
  for (const auto& [c, v] : ren)
    if (v[0] == 'y') q.quantified_vars.insert(v);
  return q;
}

UCQ prune_subsumed(const UCQ& u) {
  std::vector<bool> drop(u.disjuncts.size(), false);
  for (std::size_t i = 0; i < u.disjuncts.size(); ++i)
    for (std::size_t j = 0; j < u.disjuncts.size() && !drop[i]; ++j) {
      if (i == j || drop[j]) continue;
      // Drop i if it is contained in j; among equivalent ones keep the first.
      if (cq_contained(u.disjuncts[i], u.disjuncts[j]) &&
          (j < i || !cq_contained(u.disjuncts[j], u.disjuncts[i])))
        drop[i] = true;
    }
  UCQ out;
  out.arity = u.arity;
  for (std::size_t i = 0; i < u.disjuncts.size(); ++i)
    if (!drop[i]) out.disjuncts.push_back(u.disjuncts[i]);
  return out;
}

UCQ canonical_rewriting_dllite(const Ontology& o, const Schema& schema, const UCQ& q, std::size_t size_bound) {
  if (o.dialect != Dialect::DLLiteRHorn)
    throw Error(Error::Kind::Argument, "canonical rewriting requires a DL-Lite ontology");
  if (size_bound < 1) throw Error(Error::Kind::Argument, "size bound must be at least 1");
  Schema extra = schema;
  for (const auto& d : q.disjuncts)
    for (const auto& at : d.atoms) extra.add(at.relation, at.args.size());
  const Reasoner reasoner(o, extra);
  UCQ out;
  out.arity = q.arity;
  enumerate_aboxes(schema, size_bound, [&](const ABox& a) {
    const std::set<Name> dom = a.adom();
    for (const auto& t : tuples_over(std::vector<Name>(dom.begin(), dom.end()), q.arity))
      if (reasoner.is_certain(q, a, t)) out.disjuncts.push_back(pair_as_cq(a, t));
    return true;
  });
  return prune_subsumed(out);
}

std::size_t default_rewriting_bound(const Ontology& o, const UCQ& q) {
  std::size_t qs = 0;
  for (const auto& d : q.disjuncts) qs = std::max(qs, d.atoms.size());
  const std::size_t os = o.concept_inclusions.size() + o.role_inclusions.size() + o.role_disjointness.size();
  return std::max<std::size_t>(1, qs + os * qs);
}

}  // namespace obdax
