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

#include <functional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "model.hpp"

namespace obdax::match {

class Interner {
 public:
  int intern(const Name& n);
  int find(const Name& n) const;
  const Name& name(int id) const { return names_[static_cast<std::size_t>(id)]; }
  std::size_t size() const { return names_.size(); }

 private:
  std::unordered_map<Name, int> ids_;
  std::vector<Name> names_;
};

// A finite relational structure over integer elements, indexed by relation
// and by (relation, position, value).
class Target {
 public:
  Target(Interner& relations, Interner& elements) : rels_(relations), elems_(elements) {}

  void add_element(const Name& e);
  void add_fact(const Atom& f);

  const std::vector<std::vector<int>>& tuples(int rel) const;
  const std::vector<int>* lookup(int rel, std::size_t pos, int value) const;
  const std::vector<int>& domain() const { return domain_; }
  Interner& relations() { return rels_; }
  Interner& elements() { return elems_; }

 private:
  Interner& rels_;
  Interner& elems_;
  std::vector<std::vector<std::vector<int>>> tuples_;
  std::vector<std::vector<std::unordered_map<int, std::vector<int>>>> index_;
  std::vector<int> domain_;
  std::set<int> domain_set_;
};

struct PatternAtom {
  int relation = -1;  // -1 for relations absent from the target
  std::vector<int> vars;
};

struct Pattern {
  int num_vars = 0;
  std::vector<PatternAtom> atoms;
};

// Enumerates assignments extending `fixed` (one slot per pattern variable,
// -1 when unbound) under which every atom is a target tuple. Variables that
// occur in no atom keep their `fixed` value. The callback returns false to
// stop; enumerate returns false iff it was stopped.
bool enumerate(const Pattern& p, const Target& t, std::vector<int> fixed,
               const std::function<bool(const std::vector<int>&)>& on_match);

// Compiles an atom set over named variables into a pattern; `vars` receives
// the variable numbering and may be pre-populated.
Pattern compile(const std::set<Atom>& atoms, Interner& relations, Interner& vars);

}  // namespace obdax::match
