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
#include <sstream>
#include <string>

#include "decision.hpp"
#include "homomorphism.hpp"
#include "mappings.hpp"
#include "reasoner.hpp"
#include "supports.hpp"
#include "textio.hpp"

using namespace obdax;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ObdaSpec managers(bool full) {
  return parse_spec(slurp(std::string(OBDAX_TEST_DATA) + (full ? "/managers_full.obda" : "/managers.obda")));
}

ObdaSpec managers_without_ontology() {
  return parse_spec(R"(
    schema { Man/2 Emp/3 }
    mappings { Man(x,z), Emp(y,z,u) -> manages(x,y) ; Emp(x,y,z) -> Employee(x) ; }
  )");
}

UCQ src(const ObdaSpec& s, const char* text) { return parse_query(text, s.source_schema); }
UCQ tgt(const ObdaSpec& s, const char* text) { return parse_query(text, s.target_schema()); }

const char* kJoin = "q(x,y) :- Man(x,z), Emp(y,z,u).";

// The witness must show a difference between source answers and certain answers.
void expect_valid_witness(const ObdaSpec& s, const UCQ& q_s, const UCQ& q_t, const Witness& w) {
  const std::set<Tuple> ans = evaluate(q_s, w.database);
  const std::set<Tuple> cert =
      certain_answers(s.ontology, s.mapping_schema(), q_t, apply_forward_db(s.mappings, w.database));
  EXPECT_NE(ans, cert) << render(w.database);
  EXPECT_TRUE(ans.count(w.tuple) != cert.count(w.tuple));
  EXPECT_EQ(std::vector<Tuple>(ans.begin(), ans.end()), w.source_answers);
  EXPECT_EQ(std::vector<Tuple>(cert.begin(), cert.end()), w.certain_answers);
}

}  // namespace

TEST(Forward, JoinIntoManages) {
  const ObdaSpec s = managers(true);
  EXPECT_TRUE(forward_inclusion(s, src(s, kJoin), tgt(s, "q(x,y) :- manages(x,y).")));
}

TEST(Forward, ImageQueryAlwaysIncluded) {
  const ObdaSpec s = managers(true);
  for (const char* text : {kJoin, "q(x) :- Emp(x,y,z).", "q(x) :- Man(x,y).", "q() :- Man(x,x)."}) {
    const UCQ q_s = src(s, text);
    EXPECT_TRUE(forward_inclusion(s, q_s, apply_forward_query(s.mappings, q_s))) << text;
  }
}

TEST(Forward, AtomlessImageIsTriviallyIncluded) {
  const ObdaSpec s = managers_without_ontology();
  const UCQ q_s = src(s, "q(x) :- Man(x,y).");
  const UCQ q_t = apply_forward_query(s.mappings, q_s);
  EXPECT_TRUE(q_t.disjuncts[0].atoms.empty());
  EXPECT_TRUE(forward_inclusion(s, q_s, q_t));
}

TEST(Forward, DetectsMissingAnswers) {
  const ObdaSpec s = managers(true);
  EXPECT_FALSE(forward_inclusion(s, src(s, "q(x) :- Emp(x,y,z)."), tgt(s, "q(x) :- Manager(x).")));
}

TEST(Backward, EmployeeFailsWithManagerWitness) {
  const ObdaSpec s = managers(true);
  const UCQ q_s = src(s, "q(x) :- Emp(x,y,z).");
  const UCQ q_t = tgt(s, "q(x) :- Employee(x).");
  const BackwardOutcome b = backward_inclusion(s, q_s, q_t);
  ASSERT_EQ(b.status, Inclusion::Fails);
  ASSERT_TRUE(b.witness);
  ASSERT_EQ(b.witness->database.facts.size(), 1u);
  EXPECT_EQ(b.witness->database.facts.begin()->relation, "Man");
  expect_valid_witness(s, q_s, q_t, *b.witness);
}

TEST(Backward, JoinHoldsDespiteAnonymousSecretaries) {
  const ObdaSpec s = managers(true);
  const BackwardOutcome b = backward_inclusion(s, src(s, kJoin), tgt(s, "q(x,y) :- manages(x,y)."));
  EXPECT_EQ(b.status, Inclusion::Holds);
  EXPECT_TRUE(b.bounds.exhaustive);
}

TEST(Backward, IdentityMappingsHold) {
  const ObdaSpec s = parse_spec("schema { A/1 r/2 } mappings { A(x) -> A(x) ; r(x,y) -> r(x,y) ; }");
  for (const char* text : {"q(x) :- r(x,y), A(y).", "q() :- r(x,y), r(y,x).", "q(x,y) :- r(x,y), r(y,z), A(z)."}) {
    const UCQ q_s = src(s, text);
    EXPECT_EQ(backward_inclusion(s, q_s, apply_forward_query(s.mappings, q_s)).status, Inclusion::Holds) << text;
  }
}

TEST(Verify, ManagersJoin) {
  const ObdaSpec s = managers(true);
  EXPECT_EQ(verify(s, src(s, kJoin), tgt(s, "q(x,y) :- manages(x,y).")).outcome, Outcome::Yes);
  const UCQ q_s = src(s, "q(x) :- Emp(x,y,z).");
  const UCQ q_t = tgt(s, "q(x) :- Employee(x).");
  const Verdict v = verify(s, q_s, q_t);
  ASSERT_EQ(v.outcome, Outcome::No);
  ASSERT_TRUE(v.witness);
  expect_valid_witness(s, q_s, q_t, *v.witness);
}

TEST(Verify, ClassicalEquivalenceUnderIdentityMappings) {
  const ObdaSpec s = parse_spec("schema { A/1 r/2 } mappings { A(x) -> A(x) ; r(x,y) -> r(x,y) ; }");
  const UCQ q_s = src(s, "q(x) :- r(x,y), A(y).");
  EXPECT_EQ(verify(s, q_s, tgt(s, "q(x) :- r(x,y), A(y), r(x,z).")).outcome, Outcome::Yes);
  for (const char* other : {"q(x) :- r(x,y).", "q(x) :- r(x,y), A(y), A(x).", "q(x) :- r(y,x), A(y)."}) {
    const UCQ q_t = tgt(s, other);
    const Verdict v = verify(s, q_s, q_t);
    ASSERT_EQ(v.outcome, Outcome::No) << other;
    expect_valid_witness(s, q_s, q_t, *v.witness);
  }
}

TEST(Verify, ArityMismatchIsAnError) {
  const ObdaSpec s = managers(true);
  EXPECT_THROW(verify(s, src(s, kJoin), tgt(s, "q(x) :- Employee(x).")), Error);
}

TEST(Verify, AnswerOutsideTheImageDomain) {
  // z is free in both queries but M(D) only keeps the x-column.
  const ObdaSpec s = parse_spec("schema { R/1 P/1 } mappings { R(x) -> A(x) ; }");
  const UCQ q_s = src(s, "q(x,z) :- R(x).");
  const UCQ q_t = apply_forward_query(s.mappings, q_s);
  EXPECT_TRUE(forward_inclusion(s, q_s, q_t));
  const Verdict v = verify(s, q_s, q_t);
  ASSERT_EQ(v.outcome, Outcome::No);
  expect_valid_witness(s, q_s, q_t, *v.witness);
}

TEST(Expressible, MappingsWithoutManagerHead) {
  const ObdaSpec s = managers_without_ontology();
  const UCQ q_s = src(s, "q(x) :- Man(x,y).");
  const Verdict v = expressible(s, q_s);
  ASSERT_EQ(v.outcome, Outcome::No);
  expect_valid_witness(s, q_s, apply_forward_query(s.mappings, q_s), *v.witness);
}

TEST(Expressible, ManagerHeadMakesItExpressible) {
  ObdaSpec s = managers_without_ontology();
  s.mappings.push_back(parse_spec("schema { Man/2 } mappings { Man(x,y) -> Manager(x) ; }").mappings[0]);
  const Verdict v = expressible(s, src(s, "q(x) :- Man(x,y)."));
  ASSERT_EQ(v.outcome, Outcome::Yes);
  ASSERT_TRUE(v.realization);
  EXPECT_TRUE(ucq_equivalent(*v.realization, parse_query_unchecked("q(x) :- Manager(x).")));
  EXPECT_EQ(v.realization->disjuncts.size(), 1u);
}

TEST(Expressible, ManagersWithOntology) {
  const ObdaSpec s = managers(true);
  EXPECT_EQ(expressible(s, src(s, "q(x) :- Emp(x,y,z).")).outcome, Outcome::No);
  EXPECT_EQ(expressible(s, src(s, kJoin)).outcome, Outcome::Yes);
  EXPECT_EQ(expressible(s, src(s, "q(x) :- Man(x,y).")).outcome, Outcome::Yes);
}

TEST(Expressible, BooleanQueryWithoutMappings) {
  const ObdaSpec s = parse_spec("schema { A/1 }");
  const UCQ q_s = src(s, "q() :- A(x).");
  const Verdict v = expressible(s, q_s);
  ASSERT_EQ(v.outcome, Outcome::No);
  // Every model satisfies the atomless image, including that of the empty database.
  EXPECT_TRUE(v.witness->database.empty());
  expect_valid_witness(s, q_s, apply_forward_query(s.mappings, q_s), *v.witness);
}

TEST(Expressible, UnrootedRecursionIsUnknown) {
  const ObdaSpec s = parse_spec(R"(
    schema { SA/1 Sr/2 }
    mappings { SA(x) -> A(x) ; Sr(x,y) -> r(x,y) ; }
    ontology el { exists r.A [= A ; }
  )");
  const Verdict v = expressible(s, src(s, "q() :- SA(x)."));
  EXPECT_EQ(v.outcome, Outcome::Unknown);
  ASSERT_TRUE(v.bounds);
  EXPECT_FALSE(v.bounds->rooted);
  DecisionBudget b;
  b.exhaustive = true;
  EXPECT_EQ(expressible(s, src(s, "q() :- SA(x)."), b).outcome, Outcome::Yes);
}

TEST(Expressible, RootedRecursionIsDecided) {
  const ObdaSpec s = parse_spec(R"(
    schema { SA/1 Sr/2 }
    mappings { SA(x) -> A(x) ; Sr(x,y) -> r(x,y) ; }
    ontology el { exists r.A [= A ; }
  )");
  // A(x) is entailed by any r-path to an SA-element, which q_s(x) = SA(x) misses.
  const UCQ q_s = src(s, "q(x) :- SA(x).");
  const Verdict v = expressible(s, q_s);
  ASSERT_EQ(v.outcome, Outcome::No);
  expect_valid_witness(s, q_s, apply_forward_query(s.mappings, q_s), *v.witness);
  // With the r-edge required, the query is still not expressible.
  EXPECT_EQ(expressible(s, src(s, "q(x) :- Sr(x,y), SA(y).")).outcome, Outcome::No);
}

TEST(Expressible, ConsistentOnlySemantics) {
  const ObdaSpec s = parse_spec(R"(
    schema { S/1 T/1 }
    mappings { S(x) -> A(x) ; T(x) -> B(x) ; }
    ontology dllite { A & B [= bot ; }
  )");
  const UCQ q_s = src(s, "q(x) :- S(x).");
  const Verdict all = expressible(s, q_s);
  ASSERT_EQ(all.outcome, Outcome::No);
  expect_valid_witness(s, q_s, apply_forward_query(s.mappings, q_s), *all.witness);
  DecisionBudget b;
  b.consistent_only = true;
  EXPECT_EQ(expressible(s, q_s, b).outcome, Outcome::Yes);
}

TEST(Expressible, RoleDisjointnessInconsistency) {
  const ObdaSpec s = parse_spec(R"(
    schema { S/2 T/2 }
    mappings { S(x,y) -> r(x,y) ; T(x,y) -> t(x,y) ; }
    ontology dllite { r & t [= bot ; }
  )");
  const UCQ q_s = src(s, "q(x) :- S(x,y).");
  const Verdict v = expressible(s, q_s);
  ASSERT_EQ(v.outcome, Outcome::No);
  expect_valid_witness(s, q_s, apply_forward_query(s.mappings, q_s), *v.witness);
}

TEST(Strategies, AgreeOnDlLite) {
  const ObdaSpec s = parse_spec(R"(
    schema { P/2 Q/1 }
    mappings { P(x,y) -> r(x,y) ; Q(x) -> A(x) ; P(x,x) -> B(x) ; }
    ontology dllite { A [= exists r ; B [= A ; }
  )");
  for (const char* text : {"q(x) :- P(x,y).", "q(x) :- Q(x).", "q(x) :- P(x,x).", "q(x) :- P(x,y), Q(x)."}) {
    const UCQ q_s = src(s, text);
    DecisionBudget sup, rw, en;
    rw.strategy = Strategy::Rewriting;
    rw.exhaustive = true;
    en.strategy = Strategy::Enumerate;
    en.max_abox = 3;
    en.exhaustive = true;
    const Verdict a = expressible(s, q_s, sup), b = expressible(s, q_s, rw), c = expressible(s, q_s, en);
    EXPECT_NE(a.outcome, Outcome::Unknown) << text;
    EXPECT_EQ(a.outcome, b.outcome) << text;
    EXPECT_EQ(a.outcome, c.outcome) << text;
  }
}

TEST(Strategies, EnumerationWithoutExhaustiveFlagIsUnknownOrNo) {
  const ObdaSpec s = managers(true);
  DecisionBudget en;
  en.strategy = Strategy::Enumerate;
  en.max_abox = 2;
  EXPECT_EQ(expressible(s, src(s, kJoin), en).outcome, Outcome::Unknown);
  EXPECT_EQ(expressible(s, src(s, "q(x) :- Emp(x,y,z)."), en).outcome, Outcome::No);
}

TEST(Strategies, RewritingNeedsDlLite) {
  const ObdaSpec s = managers(true);
  DecisionBudget rw;
  rw.strategy = Strategy::Rewriting;
  EXPECT_THROW(expressible(s, src(s, kJoin), rw), Error);
}

TEST(Jobs, WitnessIndependentOfParallelism) {
  const ObdaSpec s = managers(true);
  const UCQ q_s = src(s, "q(x) :- Emp(x,y,z).");
  DecisionBudget one, four;
  four.jobs = 4;
  const Verdict a = expressible(s, q_s, one), b = expressible(s, q_s, four);
  ASSERT_EQ(a.outcome, Outcome::No);
  ASSERT_EQ(b.outcome, Outcome::No);
  EXPECT_EQ(a.witness->database, b.witness->database);
}

TEST(CheckDatabase, MatchesDefinition) {
  const ObdaSpec s = managers(true);
  const UCQ q_s = src(s, "q(x) :- Emp(x,y,z).");
  const UCQ q_t = tgt(s, "q(x) :- Employee(x).");
  EXPECT_TRUE(check_database(s, q_s, q_t, parse_database("facts { Man(m,d) }")).has_value());
  EXPECT_FALSE(check_database(s, q_s, q_t, parse_database("facts { Emp(e,d,o) }")).has_value());
}

TEST(Supports, CandidatesAreCertainAndCoverManagerCase) {
  const ObdaSpec s = managers(true);
  const UCQ q_t = tgt(s, "q(x) :- Employee(x).");
  Schema extra = s.mapping_schema();
  const Reasoner r(s.ontology, extra);
  const SupportSet set = generate_supports(r, s.mapping_schema(), q_t, {0, 0, false});
  EXPECT_FALSE(set.truncated);
  ASSERT_EQ(set.candidates.size(), 2u);
  for (const auto& c : set.candidates) EXPECT_TRUE(r.is_certain(q_t, c.abox, c.tuple));
}

TEST(Supports, RecursionIsTruncated) {
  const Ontology o = parse_spec("roles { r } ontology el { exists r.A [= A ; }").ontology;
  Schema sch;
  sch.add("A", 1);
  sch.add("r", 2);
  const Reasoner r(o, sch);
  const UCQ q = parse_query_unchecked("q(x) :- A(x).");
  const SupportSet d2 = generate_supports(r, sch, q, {2, 0, false});
  EXPECT_TRUE(d2.truncated);
  // A(x), r(x,t)+A(t), r(x,t)+r(t,u)+A(u), and the cut chain ending in a full node.
  EXPECT_GE(d2.candidates.size(), 3u);
}
