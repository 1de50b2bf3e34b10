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
#include <optional>
#include <string>
#include <vector>

#include "model.hpp"
#include "reasoner.hpp"

namespace obdax {

// A derivation of A(a): children are either facts at the same constant whose
// conjunction entails A, or a single fact B(b) with r(a,b) asserted,
// ∃s.B ⊑ A in the ontology and r ⊑ s entailed.
struct DerivationTree {
  Name constant;
  Name concept_name;
  std::vector<DerivationTree> children;
  bool via_role = false;
};

// Independent reasoner used to cross-check saturation. Subsumption is decided
// by type elimination over all 2^|CN| types, and role entailment by a separate
// closure computation; nothing is shared with Reasoner beyond the normal form.
class DerivationOracle {
 public:
  // At most 20 concept names; role disjointness is not supported.
  explicit DerivationOracle(const NormalFormOntology& nf);

  bool subsumes(std::uint64_t premise, int target) const;
  bool role_entailed(int sub_code, int sup_code) const;
  // Atomic facts over adom(A) with a derivation tree (concepts) or entailed by
  // role inclusions (roles); internal names are dropped.
  ABox entailed_facts(const ABox& a) const;
  std::optional<DerivationTree> derive(const ABox& a, const Name& constant, const Name& concept_name) const;
  std::size_t surviving_types() const { return types_.size(); }

 private:
  struct Derived;
  Derived run(const ABox& a) const;
  bool compatible(std::uint64_t t, int role, std::uint64_t u) const;

  const NormalFormOntology& nf_;
  std::vector<std::vector<char>> roles_;
  std::vector<std::uint64_t> types_;
};

}  // namespace obdax
