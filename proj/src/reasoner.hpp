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
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bits.hpp"
#include "model.hpp"

namespace obdax {

// Roles are coded as 2*id for r and 2*id+1 for r⁻.
inline int role_code(int id, bool inverse) { return 2 * id + (inverse ? 1 : 0); }
inline int inverse_code(int code) { return code ^ 1; }

// Concept and role names are interned; axioms reference ids. Names created by
// normalization are flagged internal and never appear in rendered output.
struct NormalFormOntology {
  struct Conj {
    std::vector<int> lhs;  // A1 ⊓ … ⊓ An ⊑ rhs, n ≥ 1
    int rhs = -1;
  };
  struct ExistsRhs {
    int lhs = -1;  // lhs ⊑ ∃role.filler
    int role = -1;
    int filler = -1;
  };
  struct ExistsLhs {
    int role = -1;  // ∃role.filler ⊑ rhs
    int filler = -1;
    int rhs = -1;
  };
  struct RoleIncl {
    int sub = -1;
    int sup = -1;
  };

  Dialect source_dialect = Dialect::ELHI;
  std::vector<Name> concepts;
  std::vector<bool> internal;
  std::vector<Name> roles;
  int top = -1;     // internal name equivalent to ⊤, if needed
  int bottom = -1;  // internal name standing for ⊥ (DL-Lite only)

  std::vector<int> top_axioms;  // ⊤ ⊑ A
  std::vector<Conj> conj_axioms;
  std::vector<ExistsRhs> exists_rhs;
  std::vector<ExistsLhs> exists_lhs;
  std::vector<RoleIncl> role_inclusions;
  std::vector<std::vector<int>> disjoint_roles;  // role ids

  int concept_id(const Name& n) const;
  int role_id(const Name& n) const;
  int intern_concept(const Name& n, bool is_internal = false);
  int intern_role(const Name& n);
  std::string role_str(int code) const;
  // The axioms as an ELHI ontology over all names, internal ones included.
  Ontology to_ontology() const;
  std::size_t axiom_count() const;
};

// Structural normal form for EL/ELHI; throws Error(Argument) for DL-Lite.
NormalFormOntology normalize(const Ontology& o);
// Accepts every dialect. DL-Lite basic concepts ∃r (∃r.⊤) are expressed through
// the internal ⊤ name, and ⊥ through the internal bottom name. Extra names are
// interned so that ABoxes over them can be saturated.
NormalFormOntology normalize_any(const Ontology& o, const Schema& extra = {});

struct SaturatedABox {
  bool inconsistent = false;
  ABox facts;  // atomic facts over adom(A) in the original signature
};

// The finite representation of the universal model: the saturated ABox part,
// the reachable anonymous types, and the successor edges between them.
struct UniversalModelRep {
  struct Edge {
    int role = -1;  // role code from parent to child
    int type = -1;  // index into `types`
  };
  SaturatedABox abox_part;
  std::vector<Bits> types;                          // anonymous types
  std::vector<std::vector<Edge>> anon_graph;        // per type
  std::map<Name, std::vector<Edge>> attachment;     // per ABox constant
};

class Reasoner {
 public:
  // `extra` lists relations (e.g. sch(M) and the target query's relations)
  // that may occur in ABoxes and queries besides the ontology's own names.
  explicit Reasoner(const Ontology& o, const Schema& extra = {});
  explicit Reasoner(NormalFormOntology nf);
  ~Reasoner();
  Reasoner(const Reasoner&) = delete;
  Reasoner& operator=(const Reasoner&) = delete;

  const NormalFormOntology& ontology() const;

  bool role_entailed(const Role& r, const Role& s) const;
  bool subsumes(const std::set<Name>& premise, const Name& a) const;
  // Concepts derived at an element whose asserted concepts are `premise`
  // (concept ids of ontology()); includes the bottom id if inconsistent.
  Bits derived_type(const Bits& premise) const;

  SaturatedABox saturate_abox(const ABox& a) const;
  bool consistent(const ABox& a) const;
  UniversalModelRep model_rep(const ABox& a) const;
  // Unraveling to `depth` anonymous edges below the ABox constants. Anonymous
  // elements are named _n1, _n2, ... in breadth-first order (avoiding adom(A)).
  // Throws Error(Argument) on inconsistent input.
  ABox universal_model(const ABox& a, std::size_t depth) const;
  // Number of distinct anonymous types reachable from the ABox.
  std::size_t reachable_types(const ABox& a) const;

  // On inconsistent input every tuple over adom(A) of the right arity is certain.
  std::set<Tuple> certain_answers(const UCQ& q, const ABox& a) const;
  bool is_certain(const UCQ& q, const ABox& a, const Tuple& tuple) const;
  bool is_certain(const CQ& q, const ABox& a, const Tuple& tuple) const;

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

// Convenience: certain answers of the OMQ (o, schema, q) on a.
std::set<Tuple> certain_answers(const Ontology& o, const Schema& schema, const UCQ& q,
                                const ABox& a);

}  // namespace obdax
