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

#include <cstddef>
#include <functional>
#include <vector>

#include "model.hpp"
#include "reasoner.hpp"

namespace obdax {

struct RewritingBudget {
  std::size_t max_abox_size = 0;
  std::size_t max_core = 1;
  std::size_t max_outdegree = 1;
  std::size_t max_depth = 0;
  bool exhaustive = false;
};

// A core over constants c1..ck plus tree-shaped ABoxes hanging off core
// constants (constants t1, t2, ...). Every edge in a tree carries one role.
struct PseudoTreeAbox {
  ABox abox;
  std::vector<Name> core;
  std::size_t depth = 0;      // maximal distance of a tree constant from the core
  std::size_t outdegree = 0;  // maximal number of tree children of a constant
};

// Calls `cb` on every pseudo-tree ABox within the budget, once per isomorphism
// class (isomorphisms preserve the core), together with all tuples of the
// given arity over its core. Returns false iff stopped by the callback. A
// zero max_abox_size yields nothing.
bool enumerate_pseudo_tree_aboxes(
    const Schema& schema, const RewritingBudget& budget, std::size_t arity,
    const std::function<bool(const PseudoTreeAbox&, const std::vector<Tuple>&)>& cb);

// Drops facts with a constant farther than `frontier` from the core and adds
// A(a) and r(a,a) for every concept and role name of the schema at each
// constant at distance exactly `frontier`.
ABox frontier_closure(const PseudoTreeAbox& a, std::size_t frontier, const Schema& schema);

// Calls `cb` on every ABox over `schema` with at most `max_facts` facts, once
// per isomorphism class, smallest first. Constants are c0, c1, ...; a nonzero
// max_domain bounds the number of constants.
bool enumerate_aboxes(const Schema& schema, std::size_t max_facts,
                      const std::function<bool(const ABox&)>& cb, std::size_t max_domain = 0);

// The pair (A, ā) as a CQ: ā's constants become answer variables x1..xn
// (with equality atoms for repeats) and the other constants quantified.
CQ pair_as_cq(const ABox& a, const Tuple& tuple);

// Removes disjuncts contained in another disjunct (keeping one of each
// equivalent group).
UCQ prune_subsumed(const UCQ& u);

// Union of the pairs (A, ā) with ā certain for (o, schema, q) on A, over all
// ABoxes with at most size_bound facts. The result is a UCQ-rewriting whenever
// one exists with disjuncts of at most size_bound atoms. DL-Lite only.
UCQ canonical_rewriting_dllite(const Ontology& o, const Schema& schema, const UCQ& q,
                               std::size_t size_bound);

// Default size bound when none is configured: |q| + |O|·|q|.
std::size_t default_rewriting_bound(const Ontology& o, const UCQ& q);

}  // namespace obdax
