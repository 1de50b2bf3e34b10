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

#include "model.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace obdax {

bool Schema::add(const Name& relation, std::size_t arity) {
  auto [it, inserted] = relations_.emplace(relation, arity);
  return inserted || it->second == arity;
}

std::optional<std::size_t> Schema::arity(const Name& relation) const {
  auto it = relations_.find(relation);
  if (it == relations_.end()) return std::nullopt;
  return it->second;
}

bool Schema::is_dl_schema() const {
  return std::all_of(relations_.begin(), relations_.end(),
                     [](const auto& kv) { return kv.second == 1 || kv.second == 2; });
}

std::vector<Name> Schema::concept_names() const {
  std::vector<Name> out;
  for (const auto& [n, k] : relations_)
    if (k == 1) out.push_back(n);
  return out;
}

std::vector<Name> Schema::role_names() const {
  std::vector<Name> out;
  for (const auto& [n, k] : relations_)
    if (k == 2) out.push_back(n);
  return out;
}

std::set<Name> CQ::variables() const {
  std::set<Name> vs(answer_vars.begin(), answer_vars.end());
  vs.insert(quantified_vars.begin(), quantified_vars.end());
  for (const auto& a : atoms) vs.insert(a.args.begin(), a.args.end());
  for (const auto& e : equalities) {
    vs.insert(e.left);
    vs.insert(e.right);
  }
  return vs;
}

std::set<Name> Database::adom() const {
  std::set<Name> out;
  for (const auto& f : facts) out.insert(f.args.begin(), f.args.end());
  return out;
}

Concept Concept::top() { return Concept{}; }

Concept Concept::bottom() {
  Concept c;
  c.kind = Kind::Bottom;
  return c;
}

Concept Concept::named(obdax::Name n) {
  Concept c;
  c.kind = Kind::Name;
  c.name = std::move(n);
  return c;
}

Concept Concept::conj(std::vector<Concept> cs) {
  if (cs.size() == 1) return std::move(cs.front());
  Concept c;
  c.kind = Kind::And;
  c.operands = std::move(cs);
  return c;
}

Concept Concept::exists(Role r, Concept filler) {
  Concept c;
  c.kind = Kind::Exists;
  c.role = std::move(r);
  c.operands.push_back(std::move(filler));
  return c;
}

bool Concept::operator<(const Concept& other) const {
  if (kind != other.kind) return kind < other.kind;
  if (name != other.name) return name < other.name;
  if (role != other.role) return role < other.role;
  return std::lexicographical_compare(operands.begin(), operands.end(), other.operands.begin(),
                                      other.operands.end());
}

namespace {

void collect_concept_symbols(const Concept& c, std::set<Name>& concepts, std::set<Name>& roles) {
  switch (c.kind) {
    case Concept::Kind::Name:
      concepts.insert(c.name);
      break;
    case Concept::Kind::Exists:
      roles.insert(c.role.name);
      break;
    default:
      break;
  }
  for (const auto& op : c.operands) collect_concept_symbols(op, concepts, roles);
}

}  // namespace

std::set<Name> Ontology::concept_names() const {
  std::set<Name> cs, rs;
  for (const auto& ci : concept_inclusions) {
    collect_concept_symbols(ci.lhs, cs, rs);
    collect_concept_symbols(ci.rhs, cs, rs);
  }
  return cs;
}

std::set<Name> Ontology::role_names() const {
  std::set<Name> cs, rs;
  for (const auto& ci : concept_inclusions) {
    collect_concept_symbols(ci.lhs, cs, rs);
    collect_concept_symbols(ci.rhs, cs, rs);
  }
  for (const auto& ri : role_inclusions) {
    rs.insert(ri.lhs.name);
    rs.insert(ri.rhs.name);
  }
  for (const auto& rd : role_disjointness) rs.insert(rd.roles.begin(), rd.roles.end());
  return rs;
}

Schema ObdaSpec::mapping_schema() const {
  Schema s;
  for (const auto& m : mappings) s.add(m.head.relation, m.head.args.size());
  return s;
}

Schema ObdaSpec::target_schema() const {
  Schema s = mapping_schema();
  for (const auto& c : ontology.concept_names()) s.add(c, 1);
  for (const auto& r : ontology.role_names()) s.add(r, 2);
  return s;
}

std::string Diagnostic::str() const {
  std::ostringstream os;
  if (location) os << location->line << ":" << location->column << ": ";
  if (!where.empty()) os << where << ": ";
  os << message;
  return os.str();
}

namespace {

Diagnostic diag(std::string code, std::string message, std::string where = {}) {
  Diagnostic d;
  d.code = std::move(code);
  d.message = std::move(message);
  d.where = std::move(where);
  return d;
}

bool is_basic_dllite(const Concept& c) {
  switch (c.kind) {
    case Concept::Kind::Top:
    case Concept::Kind::Bottom:
    case Concept::Kind::Name:
      return true;
    case Concept::Kind::Exists:
      return c.operands.size() == 1 && c.operands[0].kind == Concept::Kind::Top;
    default:
      return false;
  }
}

// Checks an EL/ELI concept; returns a message for the first violation.
std::optional<std::string> check_eli(const Concept& c, bool allow_inverse) {
  switch (c.kind) {
    case Concept::Kind::Bottom:
      return std::string("bottom concept outside DL-Lite");
    case Concept::Kind::Exists:
      if (c.role.inverse && !allow_inverse) return std::string("inverse role in EL");
      break;
    default:
      break;
  }
  for (const auto& op : c.operands)
    if (auto m = check_eli(op, allow_inverse)) return m;
  return std::nullopt;
}

}  // namespace

std::vector<Diagnostic> validate_ontology(const Ontology& o) {
  std::vector<Diagnostic> out;
  const std::set<Name> concepts = o.concept_names();
  const std::set<Name> roles = o.role_names();
  for (const auto& n : concepts)
    if (roles.count(n))
      out.push_back(diag("symbol-kind", "symbol used both as concept and role: " + n, "ontology"));

  for (std::size_t i = 0; i < o.concept_inclusions.size(); ++i) {
    const auto& ci = o.concept_inclusions[i];
    const std::string where = "axiom " + std::to_string(i + 1);
    if (o.dialect == Dialect::DLLiteRHorn) {
      std::vector<const Concept*> lhs;
      if (ci.lhs.kind == Concept::Kind::And) {
        for (const auto& op : ci.lhs.operands) lhs.push_back(&op);
      } else {
        lhs.push_back(&ci.lhs);
      }
      bool ok = is_basic_dllite(ci.rhs);
      for (const auto* c : lhs) ok = ok && is_basic_dllite(*c);
      if (!ok) out.push_back(diag("dialect", "non-basic concept in DL-Lite inclusion", where));
    } else {
      const bool inv = o.dialect == Dialect::ELHI;
      for (const Concept* c : {&ci.lhs, &ci.rhs})
        if (auto m = check_eli(*c, inv)) out.push_back(diag("dialect", *m, where));
    }
  }
  if (o.dialect == Dialect::EL && !o.role_inclusions.empty())
    out.push_back(diag("dialect", "role inclusion in EL", "ontology"));
  if (o.dialect != Dialect::DLLiteRHorn && !o.role_disjointness.empty())
    out.push_back(diag("dialect", "role disjointness outside DL-Lite", "ontology"));
  for (const auto& rd : o.role_disjointness)
    if (rd.roles.empty()) out.push_back(diag("dialect", "empty role disjointness", "ontology"));
  return out;
}

std::vector<Diagnostic> validate_spec(const ObdaSpec& spec) {
  std::vector<Diagnostic> out;
  Schema heads;
  for (std::size_t i = 0; i < spec.mappings.size(); ++i) {
    const auto& m = spec.mappings[i];
    const std::string where = "mapping " + std::to_string(i + 1);
    std::set<Name> body_vars;
    if (m.body.empty()) out.push_back(diag("mapping", "empty mapping body", where));
    for (const auto& a : m.body) {
      auto k = spec.source_schema.arity(a.relation);
      if (!k) {
        out.push_back(diag("schema", "undeclared source relation " + a.relation, where));
      } else if (*k != a.args.size()) {
        out.push_back(diag("arity", "arity mismatch for " + a.relation + ": expected " +
                                        std::to_string(*k) + ", got " +
                                        std::to_string(a.args.size()),
                           where));
      }
      body_vars.insert(a.args.begin(), a.args.end());
    }
    const std::size_t hk = m.head.args.size();
    if (hk != 1 && hk != 2)
      out.push_back(diag("head", "head relation must be unary or binary", where));
    for (const auto& v : m.head.args)
      if (!body_vars.count(v)) out.push_back(diag("head-var", "head var not in body: " + v, where));
    if (!heads.add(m.head.relation, hk))
      out.push_back(diag("arity", "head relation used with two arities: " + m.head.relation, where));
  }

  auto onto = validate_ontology(spec.ontology);
  out.insert(out.end(), onto.begin(), onto.end());
  for (const auto& c : spec.ontology.concept_names())
    if (heads.arity(c).value_or(1) != 1)
      out.push_back(diag("symbol-kind", "concept name used as binary head: " + c, "ontology"));
  for (const auto& r : spec.ontology.role_names())
    if (heads.arity(r).value_or(2) != 2)
      out.push_back(diag("symbol-kind", "role name used as unary head: " + r, "ontology"));
  return out;
}

std::vector<Diagnostic> validate_query(const UCQ& q, const Schema& schema) {
  std::vector<Diagnostic> out;
  for (std::size_t i = 0; i < q.disjuncts.size(); ++i) {
    const CQ& cq = q.disjuncts[i];
    const std::string where = "disjunct " + std::to_string(i + 1);
    if (cq.arity() != q.arity)
      out.push_back(diag("arity", "disjuncts with differing head arity", where));
    std::set<Name> ans(cq.answer_vars.begin(), cq.answer_vars.end());
    if (ans.size() != cq.answer_vars.size())
      out.push_back(diag("query", "repeated answer variable", where));
    for (const auto& v : cq.quantified_vars)
      if (ans.count(v)) out.push_back(diag("query", "variable both answer and quantified: " + v, where));
    for (const auto& a : cq.atoms) {
      auto k = schema.arity(a.relation);
      if (!k) {
        out.push_back(diag("schema", "undeclared relation " + a.relation, where));
      } else if (*k != a.args.size()) {
        out.push_back(diag("arity", "arity mismatch for " + a.relation, where));
      }
      for (const auto& v : a.args)
        if (!ans.count(v) && !cq.quantified_vars.count(v))
          out.push_back(diag("query", "unbound variable " + v, where));
    }
    for (const auto& e : cq.equalities)
      for (const Name* v : {&e.left, &e.right})
        if (!ans.count(*v) && !cq.quantified_vars.count(*v))
          out.push_back(diag("query", "unbound variable " + *v, where));
  }
  return out;
}

CQ view_as_cq(const Database& d, const Tuple& tuple) {
  const std::set<Name> dom = d.adom();
  for (const auto& a : tuple)
    if (!dom.count(a)) throw Error(Error::Kind::Argument, "answer constant not in domain: " + a);
  CQ q;
  q.atoms = d.facts;
  q.quantified_vars = dom;
  std::set<Name> taken = dom;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    Name x = fresh_name("x" + std::to_string(i + 1), taken);
    taken.insert(x);
    q.answer_vars.push_back(x);
    q.equalities.insert(Equality{x, tuple[i]});
  }
  return q;
}

Database view_as_database(const CQ& q) { return Database(q.atoms); }

QuotientCQ quotient(const CQ& q) {
  const std::set<Name> vars = q.variables();
  std::map<Name, Name> parent;
  for (const auto& v : vars) parent[v] = v;
  std::function<Name(const Name&)> find = [&](const Name& v) -> Name {
    Name& p = parent[v];
    if (p != v) p = find(p);
    return p;
  };
  for (const auto& e : q.equalities) {
    Name a = find(e.left), b = find(e.right);
    if (a == b) continue;
    // Keep the lexicographically least member as the root.
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
  QuotientCQ out;
  for (const auto& v : vars) {
    out.rep[v] = find(v);
    out.variables.insert(out.rep[v]);
  }
  for (const auto& x : q.answer_vars) out.answer.push_back(out.rep[x]);
  for (const auto& a : q.atoms) {
    Atom b{a.relation, {}};
    for (const auto& v : a.args) b.args.push_back(out.rep[v]);
    out.atoms.insert(std::move(b));
  }
  return out;
}

Database quotient_database(const CQ& q) { return Database(quotient(q).atoms); }

bool is_rooted(const CQ& q) {
  const std::set<Name> vars = q.variables();
  std::set<Name> seen(q.answer_vars.begin(), q.answer_vars.end());
  bool grown = true;
  while (grown) {
    grown = false;
    for (const auto& a : q.atoms) {
      bool touches = std::any_of(a.args.begin(), a.args.end(),
                                 [&](const Name& v) { return seen.count(v) > 0; });
      if (!touches) continue;
      for (const auto& v : a.args) grown |= seen.insert(v).second;
    }
  }
  return std::all_of(vars.begin(), vars.end(), [&](const Name& v) { return seen.count(v) > 0; });
}

bool is_rooted(const UCQ& q) {
  return std::all_of(q.disjuncts.begin(), q.disjuncts.end(),
                     [](const CQ& d) { return is_rooted(d); });
}

std::size_t size(const CQ& q) {
  std::size_t n = q.answer_vars.size() + q.quantified_vars.size() + 2 * q.equalities.size();
  for (const auto& a : q.atoms) n += 1 + a.args.size();
  return n;
}

std::size_t size(const UCQ& q) {
  return std::accumulate(q.disjuncts.begin(), q.disjuncts.end(), std::size_t{0},
                         [](std::size_t acc, const CQ& d) { return acc + size(d); });
}

std::size_t size(const Concept& c) {
  switch (c.kind) {
    case Concept::Kind::Exists:
      return 1 + (c.role.inverse ? 2 : 1) + size(c.operands[0]);
    case Concept::Kind::And: {
      std::size_t n = c.operands.size() - 1;
      for (const auto& op : c.operands) n += size(op);
      return n;
    }
    default:
      return 1;
  }
}

std::size_t size(const Ontology& o) {
  std::size_t n = 0;
  for (const auto& ci : o.concept_inclusions) n += size(ci.lhs) + size(ci.rhs) + 1;
  for (const auto& ri : o.role_inclusions) n += 3 + ri.lhs.inverse + ri.rhs.inverse;
  for (const auto& rd : o.role_disjointness) n += 2 * rd.roles.size() + 1;
  return n;
}

std::set<Name> relation_names(const UCQ& q) {
  std::set<Name> out;
  for (const auto& d : q.disjuncts)
    for (const auto& a : d.atoms) out.insert(a.relation);
  return out;
}

Name fresh_name(const Name& base, const std::set<Name>& taken) {
  if (!taken.count(base)) return base;
  for (std::size_t i = 1;; ++i) {
    Name n = base + "_" + std::to_string(i);
    if (!taken.count(n)) return n;
  }
}

const char* dialect_name(Dialect d) {
  switch (d) {
    case Dialect::DLLiteRHorn:
      return "dllite";
    case Dialect::EL:
      return "el";
    case Dialect::ELHI:
      return "elhi";
  }
  return "elhi";
}

}  // namespace obdax
