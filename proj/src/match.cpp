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

#include "match.hpp"

#include <algorithm>
#include <limits>

namespace obdax::match {

int Interner::intern(const Name& n) {
  auto [it, inserted] = ids_.emplace(n, static_cast<int>(names_.size()));
  if (inserted) names_.push_back(n);
  return it->second;
}

int Interner::find(const Name& n) const {
  auto it = ids_.find(n);
  return it == ids_.end() ? -1 : it->second;
}

void Target::add_element(const Name& e) {
  const int id = elems_.intern(e);
  if (domain_set_.insert(id).second) domain_.push_back(id);
}

void Target::add_fact(const Atom& f) {
  const auto rel = static_cast<std::size_t>(rels_.intern(f.relation));
  if (tuples_.size() <= rel) {
    tuples_.resize(rel + 1);
    index_.resize(rel + 1);
  }
  std::vector<int> tup;
  for (const auto& a : f.args) {
    add_element(a);
    tup.push_back(elems_.find(a));
  }
  auto& idx = index_[rel];
  if (idx.size() < tup.size()) idx.resize(tup.size());
  const int row = static_cast<int>(tuples_[rel].size());
  for (std::size_t i = 0; i < tup.size(); ++i) idx[i][tup[i]].push_back(row);
  tuples_[rel].push_back(std::move(tup));
}

const std::vector<std::vector<int>>& Target::tuples(int rel) const {
  static const std::vector<std::vector<int>> kEmpty;
  if (rel < 0 || static_cast<std::size_t>(rel) >= tuples_.size()) return kEmpty;
  return tuples_[static_cast<std::size_t>(rel)];
}

const std::vector<int>* Target::lookup(int rel, std::size_t pos, int value) const {
  static const std::vector<int> kEmpty;
  if (rel < 0 || static_cast<std::size_t>(rel) >= index_.size()) return &kEmpty;
  const auto& idx = index_[static_cast<std::size_t>(rel)];
  if (pos >= idx.size()) return &kEmpty;
  auto it = idx[pos].find(value);
  return it == idx[pos].end() ? &kEmpty : &it->second;
}

namespace {

class Search {
 public:
  Search(const Pattern& p, const Target& t, const std::function<bool(const std::vector<int>&)>& cb)
      : p_(p), t_(t), cb_(cb), done_(p.atoms.size(), false) {}

  bool run(std::vector<int>& asg, std::size_t remaining) {
    if (remaining == 0) return cb_(asg);
    // Pick the pending atom with the fewest candidate rows.
    std::size_t best = 0;
    std::size_t best_count = std::numeric_limits<std::size_t>::max();
    const std::vector<int>* best_rows = nullptr;
    for (std::size_t i = 0; i < p_.atoms.size(); ++i) {
      if (done_[i]) continue;
      const PatternAtom& a = p_.atoms[i];
      const std::vector<int>* rows = nullptr;
      std::size_t count = t_.tuples(a.relation).size();
      for (std::size_t k = 0; k < a.vars.size(); ++k) {
        const int v = asg[static_cast<std::size_t>(a.vars[k])];
        if (v < 0) continue;
        const std::vector<int>* r = t_.lookup(a.relation, k, v);
        if (r->size() < count || rows == nullptr) {
          rows = r;
          count = std::min(count, r->size());
        }
      }
      if (count < best_count) {
        best = i;
        best_count = count;
        best_rows = rows;
        if (count == 0) return true;
      }
    }
    const PatternAtom& a = p_.atoms[best];
    const auto& all = t_.tuples(a.relation);
    done_[best] = true;
    std::vector<int> bound_here;
    auto try_row = [&](const std::vector<int>& tup) -> bool {
      bound_here.clear();
      if (tup.size() != a.vars.size()) return true;
      bool ok = true;
      for (std::size_t k = 0; k < a.vars.size() && ok; ++k) {
        int& slot = asg[static_cast<std::size_t>(a.vars[k])];
        if (slot < 0) {
          slot = tup[k];
          bound_here.push_back(a.vars[k]);
        } else if (slot != tup[k]) {
          ok = false;
        }
      }
      bool keep_going = true;
      if (ok) keep_going = run(asg, remaining - 1);
      for (int v : bound_here) asg[static_cast<std::size_t>(v)] = -1;
      return keep_going;
    };
    bool keep_going = true;
    if (best_rows) {
      for (int row : *best_rows)
        if (!(keep_going = try_row(all[static_cast<std::size_t>(row)]))) break;
    } else {
      for (const auto& tup : all)
        if (!(keep_going = try_row(tup))) break;
    }
    done_[best] = false;
    return keep_going;
  }

 private:
  const Pattern& p_;
  const Target& t_;
  const std::function<bool(const std::vector<int>&)>& cb_;
  std::vector<bool> done_;
};

}  // namespace

bool enumerate(const Pattern& p, const Target& t, std::vector<int> fixed,
               const std::function<bool(const std::vector<int>&)>& on_match) {
  if (fixed.size() < static_cast<std::size_t>(p.num_vars))
    fixed.resize(static_cast<std::size_t>(p.num_vars), -1);
  Search s(p, t, on_match);
  return s.run(fixed, p.atoms.size());
}

Pattern compile(const std::set<Atom>& atoms, Interner& relations, Interner& vars) {
  Pattern p;
  for (const auto& a : atoms) {
    PatternAtom pa;
    pa.relation = relations.find(a.relation);
    for (const auto& v : a.args) pa.vars.push_back(vars.intern(v));
    p.atoms.push_back(std::move(pa));
  }
  p.num_vars = static_cast<int>(vars.size());
  return p;
}

}  // namespace obdax::match
