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

#include "supports.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include "canon.hpp"

namespace obdax {
namespace {

// Trees are sets of facts over the root kRoot and local nodes "#..."; query
// variables never start with '#', so the names cannot clash.
const Name kRoot = "#r";
using Tree = std::set<Fact>;

Role role_of_code(const NormalFormOntology& nf, int code) {
  return Role{nf.roles[static_cast<std::size_t>(code / 2)], (code & 1) != 0};
}

void add_edge(const NormalFormOntology& nf, int code, const Name& from, const Name& to,
              std::set<Fact>& out) {
  const Name& r = nf.roles[static_cast<std::size_t>(code / 2)];
  if (code % 2 == 0)
    out.insert(Fact{r, {from, to}});
  else
    out.insert(Fact{r, {to, from}});
}

// Copies `t` into `out`, renaming the root to `root` and the other nodes apart.
void splice(const Tree& t, const Name& root, const std::function<Name()>& fresh, std::set<Fact>& out) {
  std::map<Name, Name> ren{{kRoot, root}};
  for (const auto& f : t) {
    Fact g{f.relation, {}};
    for (const auto& a : f.args) {
      auto it = ren.find(a);
      if (it == ren.end()) it = ren.emplace(a, fresh()).first;
      g.args.push_back(it->second);
    }
    out.insert(std::move(g));
  }
}

struct Goal {
  std::vector<int> concepts;           // sorted
  std::vector<std::size_t> queries;    // sorted indices of component queries
  auto operator<=>(const Goal&) const = default;
};

struct Realization {
  int code = -1;    // -1: the concept is asserted; else a role edge to a new child
  int filler = -1;  // concept the child must carry
};

struct Supp {
  std::vector<Tree> trees;
  bool truncated = false;
};

class Generator {
 public:
  Generator(const Reasoner& r, const Schema& schema, const SupportOptions& opts)
      : r_(r), nf_(r.ontology()), schema_(schema), opts_(opts) {
    for (const auto& [name, arity] : schema.relations()) {
      if (arity == 1) {
        const int id = nf_.concept_id(name);
        if (id < 0) throw Error(Error::Kind::Argument, "concept not in reasoner signature: " + name);
        realizations_[id].push_back({});
        universal_.insert(Fact{name, {kRoot}});
      } else if (arity == 2) {
        const int id = nf_.role_id(name);
        if (id < 0) throw Error(Error::Kind::Argument, "role not in reasoner signature: " + name);
        codes_.push_back(role_code(id, false));
        codes_.push_back(role_code(id, true));
        universal_.insert(Fact{name, {kRoot, kRoot}});
      } else {
        throw Error(Error::Kind::Argument, "ABox relations must be unary or binary: " + name);
      }
    }
    for (const auto& e : nf_.exists_lhs)
      for (int c : codes_)
        if (r_.role_entailed(role_of_code(nf_, c), role_of_code(nf_, e.role)))
          realizations_[e.rhs].push_back({c, e.filler});
    for (const auto& [id, reals] : realizations_) items_.push_back(id);
  }

  SupportSet run(const UCQ& q) {
    for (const auto& d : q.disjuncts) {
      if (stop()) break;
      disjunct(d);
    }
    if (!opts_.consistent_only && nf_.bottom >= 0 && !stop()) inconsistent(q.arity);
    out_.capped = capped_;
    return std::move(out_);
  }

 private:
  bool stop() const { return capped_; }

  bool count_one() {
    if (opts_.max_candidates && ++generated_ > opts_.max_candidates) capped_ = true;
    return !capped_;
  }

  Name fresh() { return "#" + std::to_string(counter_++); }

  bool label_has_bottom(const Bits& label) const {
    return nf_.bottom >= 0 && label.test(static_cast<std::size_t>(nf_.bottom));
  }

  bool entails(const std::vector<int>& premise, const Goal& g) {
    Bits p(nf_.concepts.size());
    for (int a : premise) p.set(static_cast<std::size_t>(a));
    const Bits label = r_.derived_type(p);
    if (label_has_bottom(label)) return true;
    for (int a : g.concepts)
      if (!label.test(static_cast<std::size_t>(a))) return false;
    for (std::size_t qi : g.queries) {
      auto key = std::make_pair(label, qi);
      auto it = query_memo_.find(key);
      if (it == query_memo_.end()) {
        ABox a;
        for (std::size_t c : label.members()) a.facts.insert(Fact{nf_.concepts[c], {kRoot}});
        const CQ& cq = queries_[qi];
        const Tuple t = cq.arity() == 1 ? Tuple{kRoot} : Tuple{};
        it = query_memo_.emplace(key, r_.is_certain(cq, a, t)).first;
      }
      if (!it->second) return false;
    }
    return true;
  }

  // Inclusion-minimal item sets whose derived type meets the goal.
  const std::vector<std::vector<int>>& premises(const Goal& g) {
    auto it = premise_memo_.find(g);
    if (it != premise_memo_.end()) return it->second;
    std::vector<std::vector<int>> found;
    if (entails({}, g)) {
      found.push_back({});
    } else if (entails(items_, g)) {
      const std::size_t m = items_.size();
      for (std::size_t k = 1; k <= m; ++k) {
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
          std::vector<int> set;
          for (std::size_t i : idx) set.push_back(items_[i]);
          const bool covered = std::any_of(found.begin(), found.end(), [&](const std::vector<int>& f) {
            return std::includes(set.begin(), set.end(), f.begin(), f.end());
          });
          if (!covered && entails(set, g)) found.push_back(set);
          // Next k-combination of 0..m-1.
          std::size_t i = k;
          while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
          if (i == 0) break;
          ++idx[i - 1];
          for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
      }
    }
    return premise_memo_.emplace(g, std::move(found)).first->second;
  }

  void add_tree(Supp& s, std::set<std::string>& seen, const Tree& t) {
    const Canonical c = canonical_form(Database(t), {kRoot});
    if (!seen.insert(c.key).second) return;
    const Name root = c.tuple.front();
    Tree renamed;
    for (const auto& f : c.database.facts) {
      Fact g{f.relation, {}};
      for (const auto& a : f.args) g.args.push_back(a == root ? kRoot : "#" + a);
      renamed.insert(std::move(g));
    }
    s.trees.push_back(std::move(renamed));
    if (opts_.max_candidates && s.trees.size() > opts_.max_candidates) capped_ = true;
  }

  const Supp& supports(const Goal& g, std::size_t depth) {
    auto key = std::make_pair(g, depth);
    auto it = supp_memo_.find(key);
    if (it != supp_memo_.end()) return it->second;
    Supp s;
    std::set<std::string> seen;
    bool cut = false;
    for (const auto& premise : premises(g)) {
      // Pieces per premise concept: fragments rooted at kRoot.
      std::vector<std::vector<Tree>> pieces;
      bool dead = false;
      for (int a : premise) {
        std::vector<Tree> opts;
        for (const auto& re : realizations_.at(a)) {
          if (re.code < 0) {
            opts.push_back(Tree{Fact{nf_.concepts[static_cast<std::size_t>(a)], {kRoot}}});
            continue;
          }
          if (depth == 0) {
            cut = true;
            continue;
          }
          const Supp& child = supports(Goal{{re.filler}, {}}, depth - 1);
          s.truncated = s.truncated || child.truncated;
          for (const auto& ct : child.trees) {
            Tree t;
            counter_ = 0;
            const Name c = fresh();
            add_edge(nf_, re.code, kRoot, c, t);
            splice(ct, c, [&] { return fresh(); }, t);
            opts.push_back(std::move(t));
          }
        }
        if (opts.empty()) {
          dead = true;
          break;
        }
        pieces.push_back(std::move(opts));
      }
      if (dead) continue;
      std::vector<std::size_t> cur(pieces.size(), 0);
      while (!capped_) {
        Tree t;
        counter_ = 0;
        for (std::size_t i = 0; i < pieces.size(); ++i) splice(pieces[i][cur[i]], kRoot, [&] { return fresh(); }, t);
        add_tree(s, seen, t);
        std::size_t k = 0;
        while (k < cur.size() && ++cur[k] == pieces[k].size()) cur[k++] = 0;
        if (k == cur.size()) break;
      }
    }
    if (cut) {
      s.truncated = true;
      add_tree(s, seen, universal_);
    }
    return supp_memo_.emplace(key, std::move(s)).first->second;
  }

  std::size_t query_index(const CQ& q) {
    const std::string k = std::to_string(q.arity()) + "|" + canonical_key(q);
    auto it = query_ids_.find(k);
    if (it != query_ids_.end()) return it->second;
    queries_.push_back(q);
    return query_ids_.emplace(k, queries_.size() - 1).first->second;
  }

  // Makes every constant in `pending` present, by identification with an
  // existing constant or by a fact with fresh companions, then calls `done`.
  void complete(std::set<Fact>& facts, const std::vector<Name>& pending, std::size_t i,
                std::map<Name, Name>& ident, const std::function<void()>& done) {
    if (capped_) return;
    if (i == pending.size()) return done();
    const Name& v = pending[i];
    std::set<Name> dom;
    for (const auto& f : facts) dom.insert(f.args.begin(), f.args.end());
    if (dom.count(v)) return complete(facts, pending, i + 1, ident, done);
    for (const auto& c : dom) {
      ident[v] = c;
      complete(facts, pending, i + 1, ident, done);
    }
    ident.erase(v);
    for (const auto& [rel, arity] : schema_.relations())
      for (std::size_t pos = 0; pos < arity; ++pos) {
        Fact f{rel, {}};
        for (std::size_t j = 0; j < arity; ++j) f.args.push_back(j == pos ? v : "#p" + std::to_string(presence_++));
        auto [it, inserted] = facts.insert(f);
        complete(facts, pending, i + 1, ident, done);
        if (inserted) facts.erase(f);
      }
  }

  void emit(const ABox& a, const Tuple& t, const UCQ& q) {
    if (!count_one()) return;
    const Canonical c = canonical_form(a, t);
    if (!seen_.insert(c.key).second) return;
    if (!r_.is_certain(q, c.database, c.tuple)) return;
    if (opts_.consistent_only && !r_.consistent(c.database)) return;
    out_.candidates.push_back({c.database, c.tuple});
  }

  void disjunct(const CQ& d) {
    const QuotientCQ quo = quotient(d);
    const std::set<Name> answers(quo.answer.begin(), quo.answer.end());
    std::set<Name> in_atoms;
    for (const auto& a : quo.atoms) in_atoms.insert(a.args.begin(), a.args.end());
    std::vector<Name> quantified;
    for (const auto& v : quo.variables)
      if (!answers.count(v) && in_atoms.count(v)) quantified.push_back(v);
    const bool anon = !nf_.exists_rhs.empty();
    const std::size_t masks = anon ? (std::size_t{1} << quantified.size()) : 1;
    const UCQ single(d);
    for (std::size_t mask = 0; mask < masks && !capped_; ++mask) {
      std::set<Name> anon_vars;
      for (std::size_t i = 0; i < quantified.size(); ++i)
        if (mask >> i & 1) anon_vars.insert(quantified[i]);
      shape(quo, anon_vars, single);
    }
  }

  // One candidate family: `anon_vars` go to anonymous elements, the rest of
  // the variables to named constants.
  void shape(const QuotientCQ& quo, const std::set<Name>& anon_vars, const UCQ& q) {
    std::map<Name, Name> parent;
    std::function<Name(const Name&)> find = [&](const Name& v) -> Name {
      auto it = parent.find(v);
      if (it == parent.end() || it->second == v) return v;
      return it->second = find(it->second);
    };
    auto unite = [&](const Name& a, const Name& b) {
      const Name x = find(a), y = find(b);
      if (x != y) parent[std::max(x, y)] = std::min(x, y);
    };
    for (const auto& a : quo.atoms) {
      if (a.args.size() != 1 && a.args.size() != 2) return;
      const Name* first_anon = nullptr;
      for (const auto& v : a.args)
        if (anon_vars.count(v)) {
          if (first_anon) unite(*first_anon, v);
          first_anon = &v;
        }
    }
    // Components of anonymous variables and the named constants they touch.
    std::map<Name, std::vector<const Atom*>> comp_atoms;
    std::map<Name, std::set<Name>> comp_core;
    for (const auto& a : quo.atoms) {
      Name comp;
      for (const auto& v : a.args)
        if (anon_vars.count(v)) comp = find(v);
      if (comp.empty()) continue;
      comp_atoms[comp].push_back(&a);
      for (const auto& v : a.args)
        if (!anon_vars.count(v)) comp_core[comp].insert(v);
    }
    for (const auto& [comp, core] : comp_core)
      for (const auto& v : core) unite(*core.begin(), v);

    std::map<Name, Goal> goals;
    for (const auto& v : quo.variables)
      if (!anon_vars.count(v)) goals[find(v)];
    std::size_t kappa = 0;
    for (const auto& [comp, atoms] : comp_atoms) {
      CQ cq;
      Name root;
      if (comp_core.count(comp)) {
        root = find(*comp_core.at(comp).begin());
        cq.answer_vars.push_back(kRoot);
      } else {
        root = "#k" + std::to_string(kappa++);
      }
      for (const Atom* a : atoms) {
        Atom b{a->relation, {}};
        for (const auto& v : a->args) {
          b.args.push_back(anon_vars.count(v) ? v : kRoot);
          if (anon_vars.count(v)) cq.quantified_vars.insert(v);
        }
        cq.atoms.insert(std::move(b));
      }
      goals[root].queries.push_back(query_index(cq));
    }

    // Atoms among named constants.
    std::vector<std::vector<Fact>> edge_options;
    for (const auto& a : quo.atoms) {
      if (std::any_of(a.args.begin(), a.args.end(), [&](const Name& v) { return anon_vars.count(v) > 0; }))
        continue;
      if (a.args.size() == 1) {
        const int id = nf_.concept_id(a.relation);
        if (id < 0) return;
        goals[find(a.args[0])].concepts.push_back(id);
        continue;
      }
      const int id = nf_.role_id(a.relation);
      if (id < 0) return;
      std::vector<Fact> opts;
      for (int c : codes_)
        if (r_.role_entailed(role_of_code(nf_, c), Role{a.relation, false})) {
          std::set<Fact> f;
          add_edge(nf_, c, find(a.args[0]), find(a.args[1]), f);
          opts.push_back(*f.begin());
        }
      if (opts.empty()) return;
      edge_options.push_back(std::move(opts));
    }

    std::vector<Name> nodes;
    std::vector<const Supp*> supps;
    for (auto& [node, g] : goals) {
      std::sort(g.concepts.begin(), g.concepts.end());
      g.concepts.erase(std::unique(g.concepts.begin(), g.concepts.end()), g.concepts.end());
      std::sort(g.queries.begin(), g.queries.end());
      g.queries.erase(std::unique(g.queries.begin(), g.queries.end()), g.queries.end());
      const Supp& s = supports(g, opts_.depth);
      out_.truncated = out_.truncated || s.truncated;
      if (s.trees.empty()) return;
      nodes.push_back(node);
      supps.push_back(&s);
    }

    std::vector<Name> pending;
    for (const auto& [node, g] : goals) pending.push_back(node);
    Tuple base_tuple;
    for (const auto& a : quo.answer) base_tuple.push_back(find(a));

    std::vector<std::size_t> ecur(edge_options.size(), 0), tcur(nodes.size(), 0);
    while (!capped_) {
      std::set<Fact> facts;
      for (std::size_t i = 0; i < edge_options.size(); ++i) facts.insert(edge_options[i][ecur[i]]);
      counter_ = 0;
      for (std::size_t i = 0; i < nodes.size(); ++i)
        splice(supps[i]->trees[tcur[i]], nodes[i], [&] { return "#t" + std::to_string(counter_++); }, facts);
      std::map<Name, Name> ident;
      presence_ = 0;
      complete(facts, pending, 0, ident, [&] {
        Tuple t = base_tuple;
        for (auto& c : t)
          if (auto it = ident.find(c); it != ident.end()) c = it->second;
        emit(ABox(facts), t, q);
      });
      // Advance the mixed-radix counter over edge options, then trees.
      std::size_t k = 0;
      while (k < ecur.size() && ++ecur[k] == edge_options[k].size()) ecur[k++] = 0;
      if (k < ecur.size()) continue;
      k = 0;
      while (k < tcur.size() && ++tcur[k] == supps[k]->trees.size()) tcur[k++] = 0;
      if (k == tcur.size()) break;
    }
  }

  // Minimal inconsistent ABoxes, each paired with every answer tuple shape.
  void inconsistent(std::size_t arity) {
    std::vector<std::set<Fact>> cores;
    const Name k0 = "#k0", k1 = "#k1";
    for (const auto& t : supports(Goal{{nf_.bottom}, {}}, opts_.depth).trees) {
      std::set<Fact> f;
      counter_ = 0;
      splice(t, k0, [&] { return "#t" + std::to_string(counter_++); }, f);
      cores.push_back(std::move(f));
    }
    for (const auto& d : nf_.disjoint_roles) {
      std::vector<std::vector<int>> per_role;
      for (int role : d) {
        std::vector<int> opts;
        for (int c : codes_)
          if (r_.role_entailed(role_of_code(nf_, c), role_of_code(nf_, role_code(role, false))))
            opts.push_back(c);
        per_role.push_back(std::move(opts));
      }
      if (std::any_of(per_role.begin(), per_role.end(), [](const auto& o) { return o.empty(); })) continue;
      std::vector<std::size_t> cur(per_role.size(), 0);
      while (true) {
        std::set<Fact> f;
        for (std::size_t i = 0; i < per_role.size(); ++i) add_edge(nf_, per_role[i][cur[i]], k0, k1, f);
        cores.push_back(std::move(f));
        std::size_t k = 0;
        while (k < cur.size() && ++cur[k] == per_role[k].size()) cur[k++] = 0;
        if (k == cur.size()) break;
      }
    }
    const UCQ none(arity, {});
    for (auto& core : cores) {
      if (core.empty() || capped_) continue;
      std::vector<Name> pending;
      for (std::size_t i = 0; i < arity; ++i) pending.push_back("#a" + std::to_string(i));
      std::map<Name, Name> ident;
      presence_ = 0;
      complete(core, pending, 0, ident, [&] {
        Tuple t = pending;
        for (auto& c : t)
          if (auto it = ident.find(c); it != ident.end()) c = it->second;
        emit(ABox(core), t, none);
      });
    }
  }

  const Reasoner& r_;
  const NormalFormOntology& nf_;
  const Schema& schema_;
  SupportOptions opts_;

  std::map<int, std::vector<Realization>> realizations_;
  std::vector<int> items_;  // sorted concept ids with some realization
  std::vector<int> codes_;  // role codes of the ABox schema, both directions
  Tree universal_;

  std::vector<CQ> queries_;
  std::map<std::string, std::size_t> query_ids_;
  std::map<std::pair<Bits, std::size_t>, bool> query_memo_;
  std::map<Goal, std::vector<std::vector<int>>> premise_memo_;
  std::map<std::pair<Goal, std::size_t>, Supp> supp_memo_;

  std::size_t counter_ = 0;
  std::size_t presence_ = 0;
  std::size_t generated_ = 0;
  bool capped_ = false;
  std::set<std::string> seen_;
  SupportSet out_;
};

}  // namespace

SupportSet generate_supports(const Reasoner& r, const Schema& abox_schema, const UCQ& q,
                             const SupportOptions& opts) {
  Generator g(r, abox_schema, opts);
  return g.run(q);
}

}  // namespace obdax
