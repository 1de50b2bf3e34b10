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


#include <gtest/gtest.h>

#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "decision.hpp"
#include "homomorphism.hpp"
#include "mappings.hpp"
#include "oracle.hpp"
#include "reasoner.hpp"
#include "textio.hpp"

using namespace obdax;

namespace {

ObdaSpec load(const std::string& name) {
  std::ifstream in(std::string(OBDAX_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

// Recursive ∀/∃ expansion, kept apart from the bitmask loop in the library.
bool eval_recursive(const QbfFormula& phi, std::vector<int>& value, std::size_t next) {
  const std::size_t n = phi.universals + phi.existentials;
  if (next == n) {
    for (const auto& c : phi.clauses) {
      bool sat = false;
      for (int l : c) sat = sat || (value[std::abs(l) - 1] == (l > 0 ? 1 : 0));
      if (!sat) return false;
    }
    return true;
  }
  const bool universal = next < phi.universals;
  bool acc = universal;
  for (int b = 0; b < 2; ++b) {
    value[next] = b;
    const bool r = eval_recursive(phi, value, next + 1);
    acc = universal ? acc && r : acc || r;
  }
  return acc;
}

bool eval_recursive(const QbfFormula& phi) {
  std::vector<int> value(phi.universals + phi.existentials, 0);
  return eval_recursive(phi, value, 0);
}

QbfFormula random_formula(std::uint64_t seed, std::size_t u, std::size_t e, std::size_t clauses) {
  std::mt19937_64 rng(seed);
  QbfFormula phi{u, e, {}};
  const int n = static_cast<int>(u + e);
  for (std::size_t i = 0; i < clauses; ++i) {
    std::array<int, 3> c{};
    for (int& l : c) l = static_cast<int>(rng() % n + 1) * (rng() % 2 ? 1 : -1);
    phi.clauses.push_back(c);
  }
  return phi;
}

bool body_has(const GavMapping& m, const std::string& atom) {
  const Atom a = *parse_query_unchecked("q() :- " + atom + ".").disjuncts[0].atoms.begin();
  return std::find(m.body.begin(), m.body.end(), a) != m.body.end();
}

}  // namespace

TEST(Oracle, ManWithoutManagerMapping) {
  const ObdaSpec s = load("managers.obda");
  const UCQ q_s = parse_query("q(x) :- Man(x,y).", s.source_schema);
  const OracleResult r = brute_force_realization_check(s, q_s, apply_forward_query(s.mappings, q_s), {2, 0});
  ASSERT_TRUE(r.counterexample);
  EXPECT_LE(r.counterexample->database.facts.size(), 1u);
  // {Man(c0,c1)} is a discrepancy too: c0 is a source answer with no image.
  const UCQ q_t = apply_forward_query(s.mappings, q_s);
  const Database d = parse_database("facts { Man(c0,c1) }");
  EXPECT_EQ(evaluate(q_s, d), (std::set<Tuple>{{"c0"}}));
  EXPECT_TRUE(certain_answers(s.ontology, s.mapping_schema(), q_t, apply_forward_db(s.mappings, d)).empty());
}

TEST(Oracle, IdentityIsConsistent) {
  const ObdaSpec s = parse_spec("schema { A/1 } mappings { A(x) -> A(x) ; }");
  const UCQ q = parse_query("q(x) :- A(x).", s.source_schema);
  const OracleResult r = brute_force_realization_check(s, q, parse_query_unchecked("q(x) :- A(x)."), {3, 0});
  EXPECT_FALSE(r.counterexample);
  EXPECT_EQ(r.max_facts, 3u);
  EXPECT_EQ(r.databases, 4u);  // 0..3 A-facts
}

TEST(Oracle, ManagersJoinConsistent) {
  const ObdaSpec s = load("managers_full.obda");
  const UCQ q_s = parse_query("q(x,y) :- Man(x,z), Emp(y,z,u).", s.source_schema);
  const OracleResult r =
      brute_force_realization_check(s, q_s, parse_query_unchecked("q(x,y) :- manages(x,y)."), {3, 3});
  EXPECT_FALSE(r.counterexample);
  EXPECT_GT(r.databases, 100u);
}

TEST(Oracle, DefaultDomainAndParallelDeterminism) {
  const ObdaSpec s = load("managers_full.obda");
  const UCQ q_s = parse_query("q(x) :- Emp(x,y,z).", s.source_schema);
  EXPECT_EQ(default_oracle_domain(q_s), 5u);
  const UCQ q_t = parse_query_unchecked("q(x) :- Employee(x).");
  OracleOptions one{3, 2, false, 1}, many{3, 2, false, 3};
  const OracleResult a = brute_force_realization_check(s, q_s, q_t, one);
  const OracleResult b = brute_force_realization_check(s, q_s, q_t, many);
  ASSERT_TRUE(a.counterexample);
  ASSERT_TRUE(b.counterexample);
  EXPECT_EQ(a.counterexample->database, b.counterexample->database);
  EXPECT_EQ(a.databases, b.databases);
}

TEST(Qbf, BruteEvalExamples) {
  EXPECT_TRUE(qbf_brute_eval({1, 2, {{2, 1, 2}}}));
  EXPECT_FALSE(qbf_brute_eval({1, 2, {{2, 2, 2}, {-2, -2, -2}}}));
  EXPECT_TRUE(qbf_brute_eval({1, 2, {}}));
  // ∀x ∃y (x ∨ y) ∧ (¬x ∨ ¬y): y = ¬x.
  EXPECT_TRUE(qbf_brute_eval({1, 2, {{1, 2, 2}, {-1, -2, -2}}}));
  // ∀x ∃y (x ∨ x ∨ x) fails at x = 0.
  EXPECT_FALSE(qbf_brute_eval({1, 2, {{1, 1, 1}}}));
}

TEST(Qbf, BruteEvalMatchesRecursiveExpansion) {
  std::size_t trues = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const QbfFormula phi = random_formula(seed, 1 + seed % 2, 2 + seed % 3, 1 + seed % 7);
    const bool v = qbf_brute_eval(phi);
    EXPECT_EQ(v, eval_recursive(phi)) << render_qdimacs(phi);
    trues += v;
  }
  EXPECT_GT(trues, 20u);
  EXPECT_LT(trues, 380u);
}

TEST(Qbf, QdimacsRoundTrip) {
  const QbfFormula phi = parse_qdimacs("c sample\np cnf 4 2\na 1 0\ne 2 3 4 0\n-2 -1 3 0\n4 4 -1\n0\n");
  EXPECT_EQ(phi, (QbfFormula{1, 3, {{-2, -1, 3}, {4, 4, -1}}}));
  EXPECT_EQ(parse_qdimacs(render_qdimacs(phi)), phi);
}

TEST(Qbf, QdimacsErrors) {
  EXPECT_THROW(parse_qdimacs("a 1 0\n"), Error);
  EXPECT_THROW(parse_qdimacs("p cnf 3 1\na 1 0\ne 2 3 0\n1 2 0\n"), Error);
  EXPECT_THROW(parse_qdimacs("p cnf 3 1\ne 2 3 0\na 1 0\n1 2 3 0\n"), Error);
  EXPECT_THROW(parse_qdimacs("p cnf 2 0\na 1 0\ne 2 0\n"), Error);
  EXPECT_THROW(parse_qdimacs("p cnf 3 1\na 1 0\ne 2 3 0\n1 2 x 0\n"), Error);
  EXPECT_THROW(parse_qdimacs("p cnf 3 1\na 1 0\ne 2 3 0\n1 2 3\n"), Error);
  EXPECT_THROW(qbf_to_instance({0, 2, {}}), Error);
  EXPECT_THROW(qbf_to_instance({1, 2, {{1, 2, 4}}}), Error);
}

TEST(Qbf, RandomFormulas) {
  const QbfFormula a = random_qbf(5, 2, 3, 6);
  EXPECT_EQ(a, random_qbf(5, 2, 3, 6));
  EXPECT_NE(a, random_qbf(6, 2, 3, 6));
  EXPECT_EQ(a.clauses.size(), 6u);
  EXPECT_NO_THROW(validate_qbf(a));
  EXPECT_EQ(parse_qdimacs(render_qdimacs(a)), a);
  EXPECT_THROW(random_qbf(1, 1, 1, 2), Error);
}

TEST(Qbf, ReductionShape) {
  // ∀x0 ∃y0,y1 (¬y0 ∨ ¬x0 ∨ y1)
  const QbfInstance inst = qbf_to_instance({1, 2, {{-2, -1, 3}}});
  EXPECT_EQ(inst.spec.source_schema.arity("C_n_nx0_p"), 2u);
  EXPECT_EQ(inst.spec.source_schema.arity("C_x0_nx0_x0"), 0u);
  EXPECT_EQ(inst.spec.source_schema.arity("Z"), 2u);
  EXPECT_EQ(inst.spec.source_schema.relations().size(), 4u * 4 * 4 + 1);
  EXPECT_EQ(inst.spec.mappings.size(), 3u);
  EXPECT_TRUE(inst.spec.ontology.empty());
  EXPECT_EQ(inst.q_s.arity, 0u);
  const CQ& q = inst.q_s.disjuncts.at(0);
  EXPECT_EQ(q.atoms.size(), 2u);
  EXPECT_TRUE(q.atoms.count(Atom{"C_n_nx0_p", {"y0", "y1"}}));
  EXPECT_TRUE(q.atoms.count(Atom{"Z", {"y0", "y1"}}));
  EXPECT_TRUE(body_has(inst.spec.mappings[0], "C_n_nx0_p(z0,z1)"));
  EXPECT_TRUE(body_has(inst.spec.mappings[0], "Z(z0,z1)"));
}

TEST(Qbf, TauAtomsFollowTheConditions) {
  // Four universals so that x3 exists; the clauses only fix the prefix.
  const QbfInstance inst = qbf_to_instance({4, 2, {{5, 6, 1}}});
  const GavMapping& tau0 = inst.spec.mappings.at(3 * 3 + 1);
  const GavMapping& tau1 = inst.spec.mappings.at(3 * 3 + 2);
  EXPECT_EQ(tau0.head, (Atom{"r3", {"z0", "z1"}}));
  EXPECT_TRUE(body_has(tau0, "C_p_x3_n(z0,z0)"));
  EXPECT_TRUE(body_has(tau0, "C_p_x3_n(z1,z0)"));
  EXPECT_TRUE(body_has(tau0, "C_p_x3_n(z1,z1)"));
  EXPECT_FALSE(body_has(tau0, "C_p_x3_n(z0,z1)"));
  for (const char* a : {"C_p_nx3_n(z0,z0)", "C_p_nx3_n(z0,z1)", "C_p_nx3_n(z1,z0)", "C_p_nx3_n(z1,z1)"})
    EXPECT_TRUE(body_has(tau0, a)) << a;
  EXPECT_TRUE(body_has(tau0, "C_x2_x3_p(z1)"));
  EXPECT_FALSE(body_has(tau0, "C_x2_x3_p(z0)"));
  EXPECT_TRUE(body_has(tau0, "C_x0_nx3_x1()"));
  EXPECT_FALSE(body_has(tau0, "C_x0_x3_x1()"));
  // The dual body swaps the roles of x3 and ¬x3.
  EXPECT_TRUE(body_has(tau1, "C_p_x3_n(z0,z1)"));
  EXPECT_FALSE(body_has(tau1, "C_p_nx3_n(z0,z1)"));
  EXPECT_TRUE(body_has(tau1, "C_x0_x3_x1()"));
  for (const char* z : {"Z(z0,z0)", "Z(z0,z1)", "Z(z1,z0)", "Z(z1,z1)"}) {
    EXPECT_TRUE(body_has(tau0, z));
    EXPECT_TRUE(body_has(tau1, z));
  }
}

TEST(Qbf, ImageIsConjunctionOfRi) {
  const QbfInstance inst = qbf_to_instance({2, 3, {{1, -3, 4}, {-2, 5, -4}, {3, 4, 5}}});
  const UCQ image = apply_forward_query(inst.spec.mappings, inst.q_s);
  EXPECT_TRUE(ucq_equivalent(image, parse_query_unchecked("q() :- r0(y0,y1), r1(y0,y1).")));
}

TEST(Qbf, ExpressibleIffTrue) {
  const std::vector<QbfFormula> cases = {
      {1, 2, {{1, 2, 3}}},
      {1, 2, {{1, 1, 1}}},
      {1, 2, {{1, 2, 2}, {-1, -2, -2}}},
      {1, 2, {{1, 2, 2}, {-1, 2, 2}, {-2, -2, 3}, {-3, -3, -2}}},
      {2, 2, {{1, 2, 3}, {-1, -2, 4}}},
  };
  for (const auto& phi : cases) {
    const QbfInstance inst = qbf_to_instance(phi);
    const Verdict v = expressible(inst.spec, inst.q_s);
    ASSERT_NE(v.outcome, Outcome::Unknown) << render_qdimacs(phi);
    EXPECT_EQ(v.outcome == Outcome::Yes, qbf_brute_eval(phi)) << render_qdimacs(phi);
  }
}

TEST(Random, SeedStableAndValid) {
  for (Dialect d : {Dialect::DLLiteRHorn, Dialect::EL, Dialect::ELHI}) {
    InstanceProfile p;
    p.dialect = d;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const RandomInstance a = random_instance(seed, p), b = random_instance(seed, p);
      ASSERT_EQ(render(a.spec), render(b.spec));
      ASSERT_EQ(render(a.q_s), render(b.q_s));
      EXPECT_TRUE(validate_spec(a.spec).empty()) << render(a.spec);
      EXPECT_TRUE(validate_query(a.q_s, a.spec.source_schema).empty()) << render(a.q_s);
      EXPECT_EQ(a.spec.ontology.dialect, d);
    }
  }
}

TEST(Random, RoundTripsThroughText) {
  InstanceProfile p;
  p.dialect = Dialect::ELHI;
  p.max_disjuncts = 2;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const RandomInstance a = random_instance(seed, p);
    const ObdaSpec s = parse_spec(render(a.spec));
    EXPECT_EQ(render(s), render(a.spec));
    EXPECT_TRUE(ucq_equivalent(parse_query(render(a.q_s), s.source_schema), a.q_s));
  }
}

TEST(Random, ProfileKnobs) {
  InstanceProfile empty;
  empty.max_cis = 0;
  InstanceProfile rooted;
  rooted.rooted = true;
  rooted.max_disjuncts = 2;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    EXPECT_TRUE(random_instance(seed, empty).spec.ontology.empty());
    EXPECT_TRUE(is_rooted(random_instance(seed, rooted).q_s)) << render(random_instance(seed, rooted).q_s);
  }
  EXPECT_NE(render(random_instance(1).spec) + render(random_instance(1).q_s),
            render(random_instance(2).spec) + render(random_instance(2).q_s));
}

TEST(Random, DecisionAgreesWithOracle) {
  InstanceProfile p;
  p.max_relations = 2;
  p.max_mappings = 3;
  p.max_cis = 2;
  p.max_query_vars = 3;
  p.max_query_atoms = 2;
  std::size_t no = 0, yes = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    p.dialect = seed % 2 ? Dialect::DLLiteRHorn : Dialect::EL;
    const RandomInstance inst = random_instance(seed, p);
    DecisionBudget b;
    b.exhaustive = true;
    const Verdict v = expressible(inst.spec, inst.q_s, b);
    const UCQ q_t = apply_forward_query(inst.spec.mappings, inst.q_s);
    const OracleResult o = brute_force_realization_check(inst.spec, inst.q_s, q_t, {0, 3});
    if (o.counterexample) EXPECT_EQ(v.outcome, Outcome::No) << render(inst.spec) << render(inst.q_s);
    if (v.outcome == Outcome::No) {
      ++no;
      ASSERT_TRUE(v.witness);
      const Database& d = v.witness->database;
      EXPECT_NE(evaluate(inst.q_s, d), certain_answers(inst.spec.ontology, inst.spec.mapping_schema(), q_t,
                                                       apply_forward_db(inst.spec.mappings, d)))
          << render(inst.spec) << render(inst.q_s);
    } else {
      yes += v.outcome == Outcome::Yes;
    }
  }
  EXPECT_GT(no, 0u);
  EXPECT_GT(yes, 0u);
}
