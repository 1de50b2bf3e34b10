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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "model.hpp"
#include "verdict.hpp"

namespace obdax {

// Brute-force check of the realization condition on all small databases.
// A counterexample is definitive; its absence only covers the bounds.
struct OracleOptions {
  std::size_t max_domain = 0;  // 0: #variables of q_s + 2
  std::size_t max_facts = 0;   // 0: max_domain
  bool consistent_only = false;
  unsigned jobs = 1;
};

struct OracleResult {
  std::optional<Witness> counterexample;
  std::size_t max_domain = 0;
  std::size_t max_facts = 0;
  std::uint64_t databases = 0;  // isomorphism classes checked
};

std::size_t default_oracle_domain(const UCQ& q_s);

OracleResult brute_force_realization_check(const ObdaSpec& spec, const UCQ& q_s, const UCQ& q_t,
                                           const OracleOptions& options = {});

// ∀x_0..x_{u-1} ∃y_0..y_{e-1} ψ with ψ in 3CNF. Literals use DIMACS numbering:
// 1..u are the universal variables, u+1..u+e the existential ones, and a
// negative literal is a negated variable.
struct QbfFormula {
  std::size_t universals = 0;
  std::size_t existentials = 0;
  std::vector<std::array<int, 3>> clauses;

  bool operator==(const QbfFormula&) const = default;
};

// Throws Error(Argument) unless the formula has ≥1 universal and ≥2
// existential variables and every literal is in range.
void validate_qbf(const QbfFormula& phi);

bool qbf_brute_eval(const QbfFormula& phi);

// Reads the QDIMACS subset `p cnf V C`, one `a` line, one `e` line, then
// 3-literal clauses terminated by 0. Comment lines start with `c`.
QbfFormula parse_qdimacs(std::string_view text);
std::string render_qdimacs(const QbfFormula& phi);

// Uniform random 3-literal clauses; deterministic in the seed.
QbfFormula random_qbf(std::uint64_t seed, std::size_t universals, std::size_t existentials, std::size_t clauses);

struct QbfInstance {
  ObdaSpec spec;  // empty ontology
  UCQ q_s;        // Boolean
};

// The ∀∃-3SAT reduction: phi is true iff q_s is expressible in the instance.
QbfInstance qbf_to_instance(const QbfFormula& phi);

// Source relation of a clause pattern. Tags are "n", "p", "x<i>" or "nx<i>";
// (p, ¬x_0, n) gives C_p_nx0_n.
std::string qbf_relation_name(const std::array<std::string, 3>& tags);

struct InstanceProfile {
  Dialect dialect = Dialect::DLLiteRHorn;
  std::size_t max_relations = 3;
  std::size_t max_arity = 2;
  std::size_t max_mappings = 4;
  std::size_t max_body_atoms = 2;
  std::size_t max_cis = 3;
  std::size_t concepts = 3;
  std::size_t roles = 2;
  std::size_t max_query_vars = 4;
  std::size_t max_query_atoms = 3;
  std::size_t max_answer_vars = 2;
  std::size_t max_disjuncts = 1;
  bool rooted = false;  // answer variables reach every query variable
};

struct RandomInstance {
  ObdaSpec spec;
  UCQ q_s;
};

// Deterministic in (seed, profile); the spec passes validate_spec.
RandomInstance random_instance(std::uint64_t seed, const InstanceProfile& profile = {});

// A random ontology of the profile's dialect over concepts A0.. and roles r0..
Ontology random_ontology(std::uint64_t seed, const InstanceProfile& profile);

// ELHI axioms already in normal form (A ⊑ B, A ⊓ B ⊑ C, A ⊑ ∃r.B, ∃r.A ⊑ B,
// ⊤ ⊑ A, r ⊑ s) over concepts A0.. and roles r0.., inverse roles included.
Ontology random_normal_form(std::uint64_t seed, std::size_t concepts, std::size_t roles, std::size_t axioms);

// A random ABox over A0.. (unary) and r0.. (binary) with constants a0..
ABox random_abox(std::uint64_t seed, std::size_t concepts, std::size_t roles, std::size_t constants,
                 std::size_t facts);

}  // namespace obdax
