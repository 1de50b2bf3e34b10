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
#include <vector>

#include "model.hpp"
#include "reasoner.hpp"

namespace obdax {

struct SupportOptions {
  std::size_t depth = 0;           // role edges below each named constant of the match
  std::size_t max_candidates = 0;  // 0: unlimited
  bool consistent_only = false;    // drop inconsistent candidates
};

struct SupportCandidate {
  ABox abox;
  Tuple tuple;
};

struct SupportSet {
  std::vector<SupportCandidate> candidates;
  bool truncated = false;  // some derivation was cut at the depth bound
  bool capped = false;     // stopped at max_candidates
};

// Pairs (A, ā) over `abox_schema`, one per isomorphism class, such that ā is
// a certain answer of q on A under the reasoner's ontology. Unless the result
// is truncated or capped, every such pair (A', ā') receives a homomorphism
// from some candidate that maps ā onto ā'.
//
// Candidates are built from a match of a disjunct of q into the universal
// model: the variables sent to anonymous elements are grouped into components
// hanging below one named constant, and every concept the match needs at a
// named constant is backed by a minimal set of derivation steps (asserted
// concept, or a role edge to a child with a filler concept). A derivation cut
// at the depth bound ends in a node with every concept of `abox_schema` and a
// loop for every role.
SupportSet generate_supports(const Reasoner& r, const Schema& abox_schema, const UCQ& q,
                             const SupportOptions& opts);

}  // namespace obdax
