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


#include "oracle.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <sstream>
#include <thread>

#include "homomorphism.hpp"
#include "mappings.hpp"
#include "reasoner.hpp"
#include "rewriting.hpp"
#include "textio.hpp"

namespace obdax {

namespace {

void require(const std::vector<Diagnostic>& diags, const std::string& what) {
  if (!diags.empty()) throw Error(Error::Kind::Validation, what + ": " + diags.front().str(), diags);
}

std::size_t variable_count(const CQ& q) { return q.variables().size(); }

}  // namespace

std::size_t default_oracle_domain(const UCQ& q_s) {
  std::size_t v = 0;
  for (const auto& d : q_s.disjuncts) v = std::max(v, variable_count(d));
  return v + 2;
}

OracleResult brute_force_realization_check(const ObdaSpec& spec, const UCQ& q_s, const UCQ& q_t,
                                           const OracleOptions& options) {
  require(validate_spec(spec), "invalid specification");
  require(validate_query(q_s, spec.source_schema), "invalid source query");
  require(validate_query(q_t, spec.target_schema()), "invalid target query");
  if (q_s.arity != q_t.arity) throw Error(Error::Kind::Argument, "source and target queries differ in arity");

  Schema sch_m = spec.mapping_schema();
  for (const auto& d : q_t.disjuncts)
    for (const auto& a : d.atoms) sch_m.add(a.relation, a.args.size());
  const Reasoner reasoner(spec.ontology, sch_m);

  OracleResult res;
  res.max_domain = options.max_domain ? options.max_domain : default_oracle_domain(q_s);
  res.max_facts = options.max_facts ? options.max_facts : res.max_domain;

  auto differ = [&](const Database& d) -> std::optional<Witness> {
    const Database md = apply_forward_db(spec.mappings, d);
    if (options.consistent_only && !reasoner.consistent(md)) return std::nullopt;
    const std::set<Tuple> ans = evaluate(q_s, d);
    const std::set<Tuple> cert = reasoner.certain_answers(q_t, md);
    if (ans == cert) return std::nullopt;
    std::vector<Tuple> diff;
    std::set_symmetric_difference(ans.begin(), ans.end(), cert.begin(), cert.end(), std::back_inserter(diff));
    Witness w;
    w.database = d;
    w.tuple = diff.front();
    w.source_answers.assign(ans.begin(), ans.end());
    w.certain_answers.assign(cert.begin(), cert.end());
    return w;
  };

  // Databases are checked in batches; the reported counterexample is the
  // first one in enumeration order whatever the number of workers.
  const unsigned jobs = std::max(1u, options.jobs);
  const std::size_t batch_size = jobs == 1 ? 1 : 64 * jobs;
  std::vector<Database> batch;
  auto flush = [&]() {
    std::vector<std::optional<Witness>> found(batch.size());
    std::atomic<std::size_t> next{0}, best{batch.size()};
    auto work = [&]() {
      for (std::size_t i; (i = next++) < batch.size();) {
        if (i > best.load()) break;
        found[i] = differ(batch[i]);
        if (found[i]) {
          std::size_t b = best.load();
          while (i < b && !best.compare_exchange_weak(b, i)) {
          }
        }
      }
    };
    if (jobs == 1 || batch.size() == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }
    const std::size_t b = best.load();
    res.databases += b < batch.size() ? b + 1 : batch.size();
    if (b < batch.size()) res.counterexample = std::move(found[b]);
    batch.clear();
    return !res.counterexample;
  };

  enumerate_aboxes(
      spec.source_schema, res.max_facts,
      [&](const ABox& a) {
        batch.push_back(a);
        return batch.size() < batch_size || flush();
      },
      res.max_domain);
  if (!res.counterexample && !batch.empty()) flush();
  return res;
}

// --- QBF ---------------------------------------------------------------------

void validate_qbf(const QbfFormula& phi) {
  if (phi.universals < 1) throw Error(Error::Kind::Argument, "QBF needs at least one universal variable");
  if (phi.existentials < 2) throw Error(Error::Kind::Argument, "QBF needs at least two existential variables");
  const int vars = static_cast<int>(phi.universals + phi.existentials);
  for (const auto& c : phi.clauses)
    for (int l : c)
      if (l == 0 || std::abs(l) > vars)
        throw Error(Error::Kind::Argument, "QBF literal out of range: " + std::to_string(l));
}

bool qbf_brute_eval(const QbfFormula& phi) {
  const std::size_t u = phi.universals, e = phi.existentials;
  auto value = [&](int lit, std::uint64_t xs, std::uint64_t ys) {
    const std::size_t v = static_cast<std::size_t>(std::abs(lit)) - 1;
    const bool b = v < u ? (xs >> v) & 1 : (ys >> (v - u)) & 1;
    return lit > 0 ? b : !b;
  };
  for (std::uint64_t xs = 0; xs < (std::uint64_t{1} << u); ++xs) {
    bool sat = false;
    for (std::uint64_t ys = 0; ys < (std::uint64_t{1} << e) && !sat; ++ys)
      sat = std::all_of(phi.clauses.begin(), phi.clauses.end(), [&](const std::array<int, 3>& c) {
        return value(c[0], xs, ys) || value(c[1], xs, ys) || value(c[2], xs, ys);
      });
    if (!sat) return false;
  }
  return true;
}

QbfFormula parse_qdimacs(std::string_view text) {
  QbfFormula phi;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = false, seen_a = false, seen_e = false;
  std::size_t lineno = 0, vars = 0;
  std::vector<int> pending;
  auto fail = [&](const std::string& msg) {
    throw Error(Error::Kind::Parse, "qdimacs line " + std::to_string(lineno) + ": " + msg);
  };
  auto ints = [&](std::istringstream& ls) {
    std::vector<int> out;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        out.push_back(std::stoi(tok, &used));
        if (used != tok.size()) fail("bad integer '" + tok + "'");
      } catch (const std::logic_error&) {
        fail("bad integer '" + tok + "'");
      }
    }
    return out;
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first == "c") continue;
    if (first == "p") {
      std::string cnf;
      std::size_t c = 0;
      if (header || !(ls >> cnf >> vars >> c) || cnf != "cnf") fail("expected 'p cnf <vars> <clauses>'");
      header = true;
      continue;
    }
    if (!header) fail("missing 'p cnf' header");
    if (first == "a" || first == "e") {
      const bool universal = first == "a";
      if ((universal && (seen_a || seen_e)) || (!universal && seen_e) || !pending.empty())
        fail("expected one 'a' line followed by one 'e' line");
      std::vector<int> vs = ints(ls);
      if (vs.empty() || vs.back() != 0) fail("quantifier line must end with 0");
      vs.pop_back();
      const std::size_t offset = universal ? 0 : phi.universals;
      for (std::size_t i = 0; i < vs.size(); ++i)
        if (vs[i] != static_cast<int>(offset + i + 1))
          fail("variables must be numbered 1.." + std::to_string(vars) + " in prefix order");
      (universal ? phi.universals : phi.existentials) = vs.size();
      (universal ? seen_a : seen_e) = true;
      continue;
    }
    if (!seen_e) fail("clauses before the quantifier prefix");
    std::istringstream all(line);
    for (int l : ints(all)) {
      if (l != 0) {
        pending.push_back(l);
        continue;
      }
      if (pending.size() != 3) fail("clause with " + std::to_string(pending.size()) + " literals (expected 3)");
      phi.clauses.push_back({pending[0], pending[1], pending[2]});
      pending.clear();
    }
  }
  if (!pending.empty()) fail("unterminated clause");
  if (!header) fail("missing 'p cnf' header");
  if (phi.universals + phi.existentials != vars) fail("prefix does not quantify every variable");
  validate_qbf(phi);
  return phi;
}

std::string render_qdimacs(const QbfFormula& phi) {
  std::ostringstream out;
  out << "p cnf " << phi.universals + phi.existentials << ' ' << phi.clauses.size() << "\na";
  for (std::size_t i = 1; i <= phi.universals; ++i) out << ' ' << i;
  out << " 0\ne";
  for (std::size_t i = 1; i <= phi.existentials; ++i) out << ' ' << phi.universals + i;
  out << " 0\n";
  for (const auto& c : phi.clauses) out << c[0] << ' ' << c[1] << ' ' << c[2] << " 0\n";
  return out.str();
}

std::string qbf_relation_name(const std::array<std::string, 3>& tags) {
  return "C_" + tags[0] + "_" + tags[1] + "_" + tags[2];
}

QbfInstance qbf_to_instance(const QbfFormula& phi) {
  validate_qbf(phi);
  const std::size_t u = phi.universals;
  auto tag_of = [&](int lit) -> std::string {
    const std::size_t v = static_cast<std::size_t>(std::abs(lit)) - 1;
    if (v < u) return (lit < 0 ? "nx" : "x") + std::to_string(v);
    return lit < 0 ? "n" : "p";
  };
  auto var_of = [&](int lit) { return "y" + std::to_string(static_cast<std::size_t>(std::abs(lit)) - 1 - u); };

  std::vector<std::string> universe;
  for (std::size_t i = 0; i < u; ++i) universe.push_back("x" + std::to_string(i));
  for (std::size_t i = 0; i < u; ++i) universe.push_back("nx" + std::to_string(i));
  universe.push_back("n");
  universe.push_back("p");

  std::ostringstream text;
  text << "schema {\n";
  std::vector<std::array<std::string, 3>> triples;
  for (const auto& a : universe)
    for (const auto& b : universe)
      for (const auto& c : universe) {
        triples.push_back({a, b, c});
        const auto arity = std::count_if(triples.back().begin(), triples.back().end(),
                                         [](const std::string& t) { return t == "n" || t == "p"; });
        text << "  " << qbf_relation_name(triples.back()) << '/' << arity << '\n';
      }
  text << "  Z/2\n}\n";

  // q_s: one atom per clause over its existential variables, plus Z(y0,y1).
  std::vector<std::string> qs_atoms;
  for (const auto& c : phi.clauses) {
    const std::array<std::string, 3> tags{tag_of(c[0]), tag_of(c[1]), tag_of(c[2])};
    std::string atom = qbf_relation_name(tags) + "(";
    bool first = true;
    for (int l : c) {
      if (static_cast<std::size_t>(std::abs(l)) <= u) continue;
      atom += (first ? "" : ",") + var_of(l);
      first = false;
    }
    qs_atoms.push_back(atom + ")");
  }
  qs_atoms.push_back("Z(y0,y1)");
  auto join = [](const std::vector<std::string>& atoms) {
    std::string s;
    for (const auto& a : atoms) s += (s.empty() ? "" : ", ") + a;
    return s;
  };

  std::vector<std::string> renamed;
  for (std::string a : qs_atoms) {
    // y0 and y1 become z0 and z1; other names (y2, y10, ...) are kept.
    std::string out;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const bool boundary = i + 2 >= a.size() || !std::isdigit(static_cast<unsigned char>(a[i + 2]));
      const bool starts = i == 0 || a[i - 1] == '(' || a[i - 1] == ',';
      if (starts && a[i] == 'y' && i + 1 < a.size() && (a[i + 1] == '0' || a[i + 1] == '1') && boundary) {
        out += 'z';
        continue;
      }
      out += a[i];
    }
    renamed.push_back(out);
  }

  text << "mappings {\n";
  for (std::size_t i = 0; i < u; ++i) {
    const std::string head = " -> r" + std::to_string(i) + "(z0,z1) ;\n";
    text << "  " << join(renamed) << head;
    for (int v = 0; v < 2; ++v) {
      const std::string makes_true = (v == 0 ? "nx" : "x") + std::to_string(i);
      std::vector<std::string> tau;
      for (const auto& t : triples) {
        std::vector<char> np;
        for (const auto& tag : t)
          if (tag == "n" || tag == "p") np.push_back(tag[0]);
        const bool always = std::find(t.begin(), t.end(), makes_true) != t.end();
        for (std::size_t bits = 0; bits < (std::size_t{1} << np.size()); ++bits) {
          bool include = always;
          std::string args;
          for (std::size_t j = 0; j < np.size(); ++j) {
            const bool one = (bits >> j) & 1;
            include = include || (!one && np[j] == 'n') || (one && np[j] == 'p');
            args += (j ? "," : "") + std::string(one ? "z1" : "z0");
          }
          if (include) tau.push_back(qbf_relation_name(t) + "(" + args + ")");
        }
      }
      for (const char* z : {"Z(z0,z0)", "Z(z0,z1)", "Z(z1,z0)", "Z(z1,z1)"}) tau.push_back(z);
      text << "  " << join(tau) << head;
    }
  }
  text << "}\n";

  QbfInstance inst;
  inst.spec = parse_spec(text.str());
  inst.q_s = parse_query("q() :- " + join(qs_atoms) + ".", inst.spec.source_schema);
  return inst;
}

// --- random instances --------------------------------------------------------

namespace {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  std::size_t below(std::size_t n) { return n ? static_cast<std::size_t>(rng_() % n) : 0; }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  bool chance(unsigned percent) { return below(100) < percent; }

 private:
  std::mt19937_64 rng_;
};

Role random_role(Gen& g, const InstanceProfile& p, bool allow_inverse) {
  return Role{"r" + std::to_string(g.below(p.roles)), allow_inverse && g.chance(30)};
}

Concept named(Gen& g, const InstanceProfile& p) { return Concept::named("A" + std::to_string(g.below(p.concepts))); }

Concept basic_dllite(Gen& g, const InstanceProfile& p) {
  if (p.roles == 0 || g.chance(60)) return named(g, p);
  return Concept::exists(random_role(g, p, true), Concept::top());
}

Concept random_el(Gen& g, const InstanceProfile& p, bool inverse, int depth) {
  const std::size_t k = g.below(100);
  if (depth > 0 && p.roles > 0 && k < 30)
    return Concept::exists(random_role(g, p, inverse), random_el(g, p, inverse, depth - 1));
  if (depth > 0 && k < 42) return Concept::conj({named(g, p), random_el(g, p, inverse, depth - 1)});
  if (k < 45) return Concept::top();
  return named(g, p);
}

Ontology ontology_from(Gen& g, const InstanceProfile& p) {
  Ontology o;
  o.dialect = p.dialect;
  const std::size_t n = g.between(0, p.max_cis);
  const bool roles_ok = p.roles > 0 && p.dialect != Dialect::EL;
  for (std::size_t i = 0; i < n; ++i) {
    if (roles_ok && g.chance(20)) {
      if (p.dialect == Dialect::DLLiteRHorn && g.chance(30)) {
        RoleDisjointness rd;
        rd.roles = {"r" + std::to_string(g.below(p.roles)), "r" + std::to_string(g.below(p.roles))};
        o.role_disjointness.push_back(rd);
      } else {
        o.role_inclusions.push_back({random_role(g, p, true), random_role(g, p, true)});
      }
      continue;
    }
    ConceptInclusion ci;
    if (p.dialect == Dialect::DLLiteRHorn) {
      ci.lhs = g.chance(25) ? Concept::conj({basic_dllite(g, p), basic_dllite(g, p)}) : basic_dllite(g, p);
      ci.rhs = g.chance(10) ? Concept::bottom() : basic_dllite(g, p);
    } else {
      const bool inverse = p.dialect == Dialect::ELHI;
      ci.lhs = random_el(g, p, inverse, 2);
      ci.rhs = random_el(g, p, inverse, 2);
    }
    o.concept_inclusions.push_back(std::move(ci));
  }
  return o;
}

std::string var(std::size_t i) { return "v" + std::to_string(i); }

// Atoms over `schema` using variables v0..v{vars-1}. With `connected`, each
// atom after the first shares a variable with the earlier ones.
std::vector<Atom> random_atoms(Gen& g, const std::vector<std::pair<Name, std::size_t>>& rels, std::size_t count,
                               std::size_t vars, bool connected) {
  std::vector<Atom> atoms;
  std::vector<std::size_t> used;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& [rel, arity] = rels[g.below(rels.size())];
    Atom a{rel, {}};
    const std::size_t anchor = connected && !used.empty() ? g.below(arity) : arity;
    const std::size_t anchor_var = anchor < arity ? used[g.below(used.size())] : 0;
    for (std::size_t j = 0; j < arity; ++j) {
      const std::size_t v = j == anchor ? anchor_var : g.below(vars);
      a.args.push_back(var(v));
      if (std::find(used.begin(), used.end(), v) == used.end()) used.push_back(v);
    }
    if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) atoms.push_back(std::move(a));
  }
  return atoms;
}

std::vector<Name> atom_vars(const std::vector<Atom>& atoms) {
  std::vector<Name> out;
  for (const auto& a : atoms)
    for (const auto& v : a.args)
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  return out;
}

}  // namespace

Ontology random_ontology(std::uint64_t seed, const InstanceProfile& profile) {
  Gen g(seed ^ 0x9e3779b97f4a7c15ULL);
  return ontology_from(g, profile);
}

RandomInstance random_instance(std::uint64_t seed, const InstanceProfile& p) {
  Gen g(seed);
  RandomInstance inst;

  std::vector<std::pair<Name, std::size_t>> rels;
  const std::size_t nrel = g.between(1, std::max<std::size_t>(1, p.max_relations));
  for (std::size_t i = 0; i < nrel; ++i) {
    rels.emplace_back("S" + std::to_string(i), g.between(1, std::max<std::size_t>(1, p.max_arity)));
    inst.spec.source_schema.add(rels.back().first, rels.back().second);
  }

  const std::size_t nmap = g.between(p.max_mappings ? 1 : 0, p.max_mappings);
  for (std::size_t i = 0; i < nmap; ++i) {
    GavMapping m;
    m.body = random_atoms(g, rels, g.between(1, std::max<std::size_t>(1, p.max_body_atoms)), 3, false);
    const std::vector<Name> vs = atom_vars(m.body);
    const bool role = p.roles > 0 && (p.concepts == 0 || g.chance(45));
    m.head.relation = role ? "r" + std::to_string(g.below(p.roles)) : "A" + std::to_string(g.below(p.concepts));
    for (std::size_t j = 0; j < (role ? 2u : 1u); ++j) m.head.args.push_back(vs[g.below(vs.size())]);
    if (std::find(inst.spec.mappings.begin(), inst.spec.mappings.end(), m) == inst.spec.mappings.end())
      inst.spec.mappings.push_back(std::move(m));
  }

  inst.spec.ontology = ontology_from(g, p);

  const std::size_t vars = g.between(1, std::max<std::size_t>(1, p.max_query_vars));
  const std::size_t disjuncts = g.between(1, std::max<std::size_t>(1, p.max_disjuncts));
  std::size_t arity = g.between(p.rooted ? 1 : 0, std::max<std::size_t>(p.rooted ? 1 : 0, p.max_answer_vars));
  std::vector<CQ> cqs;
  for (std::size_t d = 0; d < disjuncts; ++d) {
    CQ q;
    const std::vector<Atom> atoms =
        random_atoms(g, rels, g.between(1, std::max<std::size_t>(1, p.max_query_atoms)), vars, p.rooted);
    q.atoms.insert(atoms.begin(), atoms.end());
    std::vector<Name> vs = atom_vars(atoms);
    arity = std::min(arity, vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i) std::swap(vs[i], vs[i + g.below(vs.size() - i)]);
    q.answer_vars.assign(vs.begin(), vs.begin() + static_cast<std::ptrdiff_t>(arity));
    cqs.push_back(std::move(q));
  }
  // Disjuncts drawn before the arity shrank keep only its first answer variables.
  for (auto& q : cqs) {
    q.answer_vars.resize(arity);
    for (const auto& a : q.atoms)
      for (const auto& v : a.args)
        if (std::find(q.answer_vars.begin(), q.answer_vars.end(), v) == q.answer_vars.end())
          q.quantified_vars.insert(v);
  }
  inst.q_s.arity = arity;
  inst.q_s.disjuncts = std::move(cqs);
  return inst;
}

Ontology random_normal_form(std::uint64_t seed, std::size_t concepts, std::size_t roles, std::size_t axioms) {
  Gen g(seed);
  InstanceProfile p;
  p.concepts = std::max<std::size_t>(1, concepts);
  p.roles = roles;
  Ontology o;
  o.dialect = Dialect::ELHI;
  for (std::size_t i = 0; i < axioms; ++i) {
    const std::size_t kind = roles ? g.below(6) : g.below(3);
    switch (kind) {
      case 0:
        o.concept_inclusions.push_back({named(g, p), named(g, p)});
        break;
      case 1:
        o.concept_inclusions.push_back({Concept::conj({named(g, p), named(g, p)}), named(g, p)});
        break;
      case 2:
        o.concept_inclusions.push_back({Concept::top(), named(g, p)});
        break;
      case 3:
        o.concept_inclusions.push_back({named(g, p), Concept::exists(random_role(g, p, true), named(g, p))});
        break;
      case 4:
        o.concept_inclusions.push_back({Concept::exists(random_role(g, p, true), named(g, p)), named(g, p)});
        break;
      default:
        o.role_inclusions.push_back({random_role(g, p, true), random_role(g, p, true)});
    }
  }
  return o;
}

ABox random_abox(std::uint64_t seed, std::size_t concepts, std::size_t roles, std::size_t constants,
                 std::size_t facts) {
  Gen g(seed);
  ABox a;
  auto c = [&] { return "a" + std::to_string(g.below(constants)); };
  for (std::size_t i = 0; i < facts; ++i) {
    if (roles == 0 || (concepts > 0 && g.chance(50)))
      a.facts.insert({"A" + std::to_string(g.below(concepts)), {c()}});
    else
      a.facts.insert({"r" + std::to_string(g.below(roles)), {c(), c()}});
  }
  return a;
}

QbfFormula random_qbf(std::uint64_t seed, std::size_t universals, std::size_t existentials, std::size_t clauses) {
  QbfFormula phi;
  phi.universals = universals;
  phi.existentials = existentials;
  validate_qbf(phi);
  Gen g(seed);
  const std::size_t vars = universals + existentials;
  for (std::size_t i = 0; i < clauses; ++i) {
    std::array<int, 3> c{};
    for (int& lit : c) {
      lit = static_cast<int>(g.between(1, vars));
      if (g.chance(50)) lit = -lit;
    }
    phi.clauses.push_back(c);
  }
  return phi;
}

}  // namespace obdax
