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

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace obdax {

// Variables and constants share one namespace: a database view of a query
// reads each variable as the constant with the same name.
using Name = std::string;
using Tuple = std::vector<Name>;

struct Atom {
  Name relation;
  std::vector<Name> args;

  auto operator<=>(const Atom&) const = default;
  bool operator==(const Atom&) const = default;
};
using Fact = Atom;

struct Equality {
  Name left;
  Name right;

  auto operator<=>(const Equality&) const = default;
  bool operator==(const Equality&) const = default;
};

class Schema {
 public:
  // Returns false if the name is already declared with another arity.
  bool add(const Name& relation, std::size_t arity);
  std::optional<std::size_t> arity(const Name& relation) const;
  bool contains(const Name& relation) const { return relations_.count(relation) > 0; }
  const std::map<Name, std::size_t>& relations() const { return relations_; }
  bool is_dl_schema() const;
  bool empty() const { return relations_.empty(); }
  std::vector<Name> concept_names() const;
  std::vector<Name> role_names() const;

  bool operator==(const Schema&) const = default;

 private:
  std::map<Name, std::size_t> relations_;
};

struct CQ {
  std::vector<Name> answer_vars;
  std::set<Name> quantified_vars;
  std::set<Atom> atoms;
  std::set<Equality> equalities;

  std::size_t arity() const { return answer_vars.size(); }
  std::set<Name> variables() const;
  bool operator==(const CQ&) const = default;
};

// A UCQ may have zero disjuncts: that is the unsatisfiable query produced by
// backward mapping application when some fact has no suitable mapping.
struct UCQ {
  std::size_t arity = 0;
  std::vector<CQ> disjuncts;

  UCQ() = default;
  explicit UCQ(CQ q) : arity(q.arity()) { disjuncts.push_back(std::move(q)); }
  UCQ(std::size_t n, std::vector<CQ> ds) : arity(n), disjuncts(std::move(ds)) {}
  bool empty() const { return disjuncts.empty(); }
};

struct Database {
  std::set<Fact> facts;

  Database() = default;
  explicit Database(std::set<Fact> f) : facts(std::move(f)) {}
  std::set<Name> adom() const;
  bool empty() const { return facts.empty(); }
  bool operator==(const Database&) const = default;
};
using ABox = Database;

enum class Dialect { DLLiteRHorn, EL, ELHI };

struct Role {
  Name name;
  bool inverse = false;

  Role inv() const { return Role{name, !inverse}; }
  auto operator<=>(const Role&) const = default;
  bool operator==(const Role&) const = default;
};

struct Concept {
  enum class Kind { Top, Bottom, Name, And, Exists };

  Kind kind = Kind::Top;
  obdax::Name name;             // Kind::Name
  Role role;                    // Kind::Exists
  std::vector<Concept> operands;  // conjuncts, or the single Exists filler

  static Concept top();
  static Concept bottom();
  static Concept named(obdax::Name n);
  static Concept conj(std::vector<Concept> cs);
  static Concept exists(Role r, Concept filler);

  bool operator==(const Concept&) const = default;
  bool operator<(const Concept& other) const;
};

struct ConceptInclusion {
  Concept lhs;
  Concept rhs;
  bool operator==(const ConceptInclusion&) const = default;
};

struct RoleInclusion {
  Role lhs;
  Role rhs;
  bool operator==(const RoleInclusion&) const = default;
};

struct RoleDisjointness {
  std::vector<Name> roles;
  bool operator==(const RoleDisjointness&) const = default;
};

struct Ontology {
  Dialect dialect = Dialect::ELHI;
  std::vector<ConceptInclusion> concept_inclusions;
  std::vector<RoleInclusion> role_inclusions;
  std::vector<RoleDisjointness> role_disjointness;

  bool empty() const {
    return concept_inclusions.empty() && role_inclusions.empty() && role_disjointness.empty();
  }
  std::set<Name> concept_names() const;
  std::set<Name> role_names() const;
};

struct GavMapping {
  std::vector<Atom> body;
  Atom head;
  bool operator==(const GavMapping&) const = default;
};

struct ObdaSpec {
  Ontology ontology;
  std::vector<GavMapping> mappings;
  Schema source_schema;

  // sch(M): the head relations with their arities.
  Schema mapping_schema() const;
  // sch(M) plus the ontology's concept (arity 1) and role (arity 2) names.
  Schema target_schema() const;
};

struct SourceLocation {
  int line = 0;
  int column = 0;
};

struct Diagnostic {
  std::string code;
  std::string message;
  std::optional<SourceLocation> location;
  std::string where;  // e.g. "mapping 2", "axiom 1"

  std::string str() const;
};

class Error : public std::runtime_error {
 public:
  enum class Kind { Parse, Validation, Argument, Internal };

  Error(Kind kind, const std::string& what, std::vector<Diagnostic> diags = {})
      : std::runtime_error(what), kind_(kind), diagnostics_(std::move(diags)) {}
  Kind kind() const { return kind_; }
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  Kind kind_;
  std::vector<Diagnostic> diagnostics_;
};

std::vector<Diagnostic> validate_spec(const ObdaSpec& spec);
std::vector<Diagnostic> validate_ontology(const Ontology& o);
// Checks a query against a schema: declared relations, arities, variable
// bookkeeping and uniform answer arity.
std::vector<Diagnostic> validate_query(const UCQ& q, const Schema& schema);

CQ view_as_cq(const Database& d, const Tuple& tuple);
Database view_as_database(const CQ& q);

// Equality-quotient of a CQ. Each equality class is represented by its
// lexicographically least variable.
struct QuotientCQ {
  std::vector<Name> answer;    // representatives, may repeat
  std::set<Atom> atoms;
  std::set<Name> variables;    // all representatives, including unused ones
  std::map<Name, Name> rep;    // every variable of the input to its representative
};
QuotientCQ quotient(const CQ& q);
Database quotient_database(const CQ& q);

bool is_rooted(const CQ& q);
bool is_rooted(const UCQ& q);

std::size_t size(const CQ& q);
std::size_t size(const UCQ& q);
std::size_t size(const Concept& c);
std::size_t size(const Ontology& o);

std::set<Name> relation_names(const UCQ& q);

// Returns `base` or `base` with a numeric suffix, not contained in `taken`.
Name fresh_name(const Name& base, const std::set<Name>& taken);

const char* dialect_name(Dialect d);

}  // namespace obdax
