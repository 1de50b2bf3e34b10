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

#include <random>

#include "derivation.hpp"
#include "homomorphism.hpp"
#include "reasoner.hpp"
#include "support.hpp"
#include "textio.hpp"

using namespace obdax;
using obdax::testing::for_each_interp;
using obdax::testing::Interp;

namespace {

Ontology onto(const std::string& dialect, const std::string& body, const std::string& roles = "") {
  return parse_spec("roles { " + roles + " } ontology " + dialect + " { " + body + " }").ontology;
}

Database db(const char* text) { return parse_database(text); }
UCQ q(const char* text) { return parse_query_unchecked(text); }

Schema sig(std::initializer_list<std::pair<const char*, int>> rels) {
  Schema s;
  for (const auto& [n, k] : rels) s.add(n, static_cast<std::size_t>(k));
  return s;
}

const char* kManagers = "Manager [= Employee ; Manager [= exists manages.Secretary ;";

// Checks that every model of `o` over `n` elements extends to a model of the
// normal form and that every model of the normal form is a model of `o`.
void expect_conservative(const Ontology& o, int n) {
  const NormalFormOntology nf = normalize(o);
  const Ontology out = nf.to_ontology();
  const std::set<Name> cset = o.concept_names(), rset = o.role_names();
  std::vector<Name> orig_c(cset.begin(), cset.end());
  std::vector<Name> roles(rset.begin(), rset.end());
  std::vector<Name> fresh;
  for (std::size_t i = 0; i < nf.concepts.size(); ++i)
    if (nf.internal[i]) fresh.push_back(nf.concepts[i]);
  std::size_t models = 0;
  for_each_interp(n, orig_c, roles, [&](const Interp& I) {
    const bool m = I.satisfies(o);
    bool extends = false;
    for_each_interp(n, fresh, {}, [&](const Interp& J) {
      if (J.satisfies(out)) {
        extends = true;
        return false;
      }
      return true;
    }, I);
    EXPECT_EQ(m, extends);
    models += m;
    return !::testing::Test::HasFailure();
  });
  EXPECT_GT(models, 0u);
}

}  // namespace

TEST(Normalize, AlreadyNormalIsUnchanged) {
  const NormalFormOntology nf = normalize(onto("el", kManagers));
  EXPECT_EQ(nf.axiom_count(), 2u);
  EXPECT_EQ(nf.exists_rhs.size(), 1u);
  EXPECT_EQ(nf.conj_axioms.size(), 1u);
  for (bool b : nf.internal) EXPECT_FALSE(b);
}

TEST(Normalize, SplitsConjunctiveFiller) {
  const Ontology o = onto("el", "A [= exists r.(B & C) ;");
  const NormalFormOntology nf = normalize(o);
  ASSERT_EQ(nf.exists_rhs.size(), 1u);
  const int x = nf.exists_rhs[0].filler;
  EXPECT_TRUE(nf.internal[static_cast<std::size_t>(x)]);
  EXPECT_EQ(nf.conj_axioms.size(), 2u);
  expect_conservative(o, 2);
}

TEST(Normalize, SplitsNestedExistentialLhs) {
  const Ontology o = onto("el", "exists r.exists s.A [= B ;");
  const NormalFormOntology nf = normalize(o);
  EXPECT_EQ(nf.exists_lhs.size(), 2u);
  expect_conservative(o, 2);
}

TEST(Normalize, ConservativeOnThreeElements) {
  expect_conservative(onto("elhi", "A [= exists r-.B ;"), 3);
  expect_conservative(onto("el", "top [= exists r.A ; A & B [= C ;"), 2);
}

TEST(Normalize, RejectsDlLite) {
  EXPECT_THROW(normalize(onto("dllite", "A [= B ;")), Error);
}

TEST(Reasoner, RoleEntailment) {
  const Reasoner r(onto("elhi", "r [= s ; s [= t ; u [= v- ;", "r s t u v"));
  EXPECT_TRUE(r.role_entailed(Role{"r"}, Role{"r"}));
  EXPECT_TRUE(r.role_entailed(Role{"r"}, Role{"t"}));
  EXPECT_FALSE(r.role_entailed(Role{"t"}, Role{"r"}));
  EXPECT_TRUE(r.role_entailed(Role{"u", true}, Role{"v"}));
  EXPECT_FALSE(r.role_entailed(Role{"u"}, Role{"v"}));
}

TEST(Reasoner, RoleEntailmentMatchesSemantics) {
  const Ontology o = onto("elhi", "u [= v- ; v [= w ;", "u v w");
  const Reasoner r(o);
  const std::vector<Name> names{"u", "v", "w"};
  for (const auto& a : names)
    for (const auto& b : names)
      for (bool ia : {false, true})
        for (bool ib : {false, true}) {
          const Role ra{a, ia}, rb{b, ib};
          bool semantic = true;
          for_each_interp(2, {}, names, [&](const Interp& I) {
            if (!I.satisfies(o)) return true;
            for (int x = 0; x < 2; ++x)
              for (int y = 0; y < 2; ++y)
                if (I.has_role(ra, x, y) && !I.has_role(rb, x, y)) semantic = false;
            return semantic;
          });
          EXPECT_EQ(r.role_entailed(ra, rb), semantic) << a << ia << " " << b << ib;
        }
}

TEST(Reasoner, Subsumption) {
  const Reasoner ex2(onto("el", kManagers));
  EXPECT_TRUE(ex2.subsumes({"Manager"}, "Employee"));
  EXPECT_FALSE(ex2.subsumes({"Employee"}, "Manager"));
  const Reasoner empty(Ontology{}, sig({{"A", 1}}));
  EXPECT_TRUE(empty.subsumes({"A"}, "A"));
  const Reasoner two(onto("el", "A [= exists r.B ; exists r.B [= C ;"));
  EXPECT_TRUE(two.subsumes({"A"}, "C"));
  EXPECT_FALSE(two.subsumes({"B"}, "C"));
}

TEST(Reasoner, SaturateAbox) {
  const Reasoner ex2(onto("el", kManagers));
  const SaturatedABox s = ex2.saturate_abox(db("facts { Manager(a) }"));
  EXPECT_FALSE(s.inconsistent);
  EXPECT_EQ(s.facts, db("facts { Manager(a) Employee(a) }"));

  const Reasoner empty(Ontology{}, sig({{"A", 1}, {"r", 2}}));
  const Database a = db("facts { A(a) r(a,b) }");
  EXPECT_EQ(empty.saturate_abox(a).facts, a);

  const Reasoner two(onto("el", "A [= exists r.B ; exists r.B [= C ;"));
  EXPECT_EQ(two.saturate_abox(db("facts { A(a) }")).facts, db("facts { A(a) C(a) }"));
}

TEST(Reasoner, InverseRolesPropagateThroughAnonymousPart) {
  // a has an anonymous r-successor; that successor is an r⁻-successor of an A.
  const Reasoner r(onto("elhi", "A [= exists r.B ; exists r-.A [= D ; D [= exists s.top ; exists s-.top [= E ; B & D [= F ; exists r.F [= G ;"));
  const SaturatedABox s = r.saturate_abox(db("facts { A(a) }"));
  EXPECT_TRUE(s.facts.facts.count({"G", {"a"}}));
  EXPECT_FALSE(s.facts.facts.count({"E", {"a"}}));
}

TEST(Reasoner, RoleInclusionsOnNamedEdges) {
  const Reasoner r(onto("elhi", "r [= s- ; exists s.A [= B ;"));
  const SaturatedABox s = r.saturate_abox(db("facts { r(a,b) A(a) }"));
  EXPECT_TRUE(s.facts.facts.count({"s", {"b", "a"}}));
  EXPECT_TRUE(s.facts.facts.count({"B", {"b"}}));
}

TEST(Reasoner, DlLiteDisjointness) {
  const Ontology o = onto("dllite", "r & s [= bot ; t [= s ;", "r s t");
  const Reasoner r(o);
  EXPECT_TRUE(r.saturate_abox(db("facts { r(a,b) t(a,b) }")).inconsistent);
  EXPECT_FALSE(r.saturate_abox(db("facts { r(a,b) t(b,a) }")).inconsistent);
  const auto all = r.certain_answers(q("q(x) :- A(x)."), db("facts { r(a,b) s(a,b) }"));
  EXPECT_EQ(all, (std::set<Tuple>{{"a"}, {"b"}}));
}

TEST(Reasoner, DlLiteBasicConcepts) {
  const Reasoner r(onto("dllite", "A [= exists r ; exists r- [= B ; exists r & C [= D ; A [= C ;"));
  const SaturatedABox s = r.saturate_abox(db("facts { A(a) r(c,d) }"));
  EXPECT_TRUE(s.facts.facts.count({"D", {"a"}}));
  EXPECT_TRUE(s.facts.facts.count({"B", {"d"}}));
  EXPECT_FALSE(s.facts.facts.count({"D", {"c"}}));
  EXPECT_TRUE(r.is_certain(q("q(x) :- r(x,y), B(y)."), db("facts { A(a) }"), {"a"}));
}

TEST(Reasoner, DlLiteBottomConcept) {
  const Reasoner r(onto("dllite", "A & B [= bot ; exists r [= B ;"));
  EXPECT_TRUE(r.saturate_abox(db("facts { A(a) r(a,b) }")).inconsistent);
  EXPECT_FALSE(r.consistent(db("facts { A(a) r(a,b) }")));
  EXPECT_TRUE(r.consistent(db("facts { A(b) r(a,b) }")));
}

TEST(Reasoner, UniversalModel) {
  const Reasoner ex2(onto("el", kManagers));
  EXPECT_EQ(ex2.universal_model(db("facts { Manager(a) }"), 1),
            db("facts { Manager(a) Employee(a) manages(a,_n1) Secretary(_n1) }"));
  const Reasoner empty(Ontology{}, sig({{"A", 1}, {"r", 2}}));
  EXPECT_EQ(empty.universal_model(db("facts { A(a) r(a,b) }"), 4), db("facts { A(a) r(a,b) }"));
  const Reasoner chain(onto("el", "A [= exists r.A ;"));
  EXPECT_EQ(chain.universal_model(db("facts { A(a) }"), 3),
            db("facts { A(a) r(a,_n1) A(_n1) r(_n1,_n2) A(_n2) r(_n2,_n3) A(_n3) }"));
}

TEST(Reasoner, CertainAnswers) {
  const Ontology ex2 = onto("el", kManagers);
  const Schema s = sig({{"Manager", 1}, {"Employee", 1}, {"manages", 2}});
  EXPECT_EQ(certain_answers(ex2, s, q("q(x) :- Employee(x)."), db("facts { Manager(a) }")),
            (std::set<Tuple>{{"a"}}));
  const Database d = db("facts { A(a) r(a,b) A(c) }");
  EXPECT_EQ(certain_answers(Ontology{}, sig({{"A", 1}, {"r", 2}}), q("q(x) :- A(x), r(x,y)."), d),
            evaluate(q("q(x) :- A(x), r(x,y)."), d));
  const Ontology o = onto("el", "A [= exists r.B ;");
  EXPECT_EQ(certain_answers(o, sig({{"A", 1}}), q("q(x) :- r(x,y), B(y)."), db("facts { A(a) }")),
            (std::set<Tuple>{{"a"}}));
}

TEST(Reasoner, AnonymousElementsNeverAnswers) {
  const Reasoner r(onto("el", kManagers), sig({{"manages", 2}}));
  const auto ans = r.certain_answers(q("q(x,y) :- manages(x,y)."), db("facts { Manager(a) manages(b,c) }"));
  EXPECT_EQ(ans, (std::set<Tuple>{{"b", "c"}}));
  EXPECT_EQ(r.certain_answers(q("q(x) :- manages(x,y), Secretary(y)."), db("facts { Manager(a) }")),
            (std::set<Tuple>{{"a"}}));
}

TEST(Reasoner, BooleanMatchInsideAnonymousTree) {
  // The match of r(y,z), s(z,w) lives two levels below a.
  const Reasoner r(onto("el", "A [= exists t.B ; B [= exists r.C ; C [= exists s.D ;"));
  EXPECT_TRUE(r.is_certain(q("q() :- r(y,z), s(z,w), D(w)."), db("facts { A(a) }"), {}));
  EXPECT_FALSE(r.is_certain(q("q() :- s(y,z), r(z,w)."), db("facts { A(a) }"), {}));
  EXPECT_FALSE(r.is_certain(q("q() :- r(y,z)."), Database{}, {}));
}

TEST(Reasoner, CyclicQueryNeedsNamedCycle) {
  const Reasoner r(onto("elhi", "A [= exists r.A ; r [= s- ;"));
  EXPECT_FALSE(r.is_certain(q("q(x) :- r(x,y), r(y,x)."), db("facts { A(a) }"), {"a"}));
  EXPECT_TRUE(r.is_certain(q("q(x) :- r(x,y), s(y,x)."), db("facts { A(a) }"), {"a"}));
  EXPECT_TRUE(r.is_certain(q("q(x) :- r(x,y), r(y,x)."), db("facts { r(a,b) r(b,a) }"), {"a"}));
}

TEST(Reasoner, FreeAnswerVariables) {
  const Reasoner r(Ontology{}, sig({{"A", 1}, {"B", 1}}));
  const auto ans = r.certain_answers(q("q(x,z) :- A(x)."), db("facts { A(a) B(b) }"));
  EXPECT_EQ(ans, (std::set<Tuple>{{"a", "a"}, {"a", "b"}}));
  EXPECT_TRUE(r.is_certain(q("q(x,z) :- A(x)."), db("facts { A(a) B(b) }"), {"a", "b"}));
  EXPECT_FALSE(r.is_certain(q("q(x,z) :- A(x)."), db("facts { A(a) B(b) }"), {"a", "c"}));
}

// ---------------------------------------------------------------------------
// Properties on random normal-form ontologies.

namespace {

Ontology random_elhi(std::mt19937& rng, int concepts, int roles, int axioms) {
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  auto cname = [&]() { return Concept::named("C" + std::to_string(pick(concepts))); };
  auto role = [&]() { return Role{"r" + std::to_string(pick(roles)), pick(2) == 1}; };
  Ontology o;
  o.dialect = Dialect::ELHI;
  for (int i = 0; i < axioms; ++i) {
    switch (pick(5)) {
      case 0:
        o.concept_inclusions.push_back({cname(), cname()});
        break;
      case 1:
        o.concept_inclusions.push_back({Concept::conj({cname(), cname()}), cname()});
        break;
      case 2:
        o.concept_inclusions.push_back({cname(), Concept::exists(role(), cname())});
        break;
      case 3:
        o.concept_inclusions.push_back({Concept::exists(role(), cname()), cname()});
        break;
      default:
        o.role_inclusions.push_back({role(), role()});
    }
  }
  return o;
}

Database random_abox(std::mt19937& rng, int concepts, int roles, int consts, int facts) {
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  Database d;
  for (int i = 0; i < facts; ++i) {
    const Name a = "a" + std::to_string(pick(consts));
    if (pick(2))
      d.facts.insert({"C" + std::to_string(pick(concepts)), {a}});
    else
      d.facts.insert({"r" + std::to_string(pick(roles)), {a, "a" + std::to_string(pick(consts))}});
  }
  return d;
}

Schema random_sig(int concepts, int roles) {
  Schema s;
  for (int i = 0; i < concepts; ++i) s.add("C" + std::to_string(i), 1);
  for (int i = 0; i < roles; ++i) s.add("r" + std::to_string(i), 2);
  return s;
}

UCQ random_cq(std::mt19937& rng, int concepts, int roles, int vars, int atoms, int arity) {
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
  CQ c;
  for (int i = 0; i < arity; ++i) c.answer_vars.push_back("v" + std::to_string(i));
  for (int i = 0; i < atoms; ++i) {
    const Name x = "v" + std::to_string(pick(vars));
    if (pick(2))
      c.atoms.insert({"C" + std::to_string(pick(concepts)), {x}});
    else
      c.atoms.insert({"r" + std::to_string(pick(roles)), {x, "v" + std::to_string(pick(vars))}});
  }
  for (const auto& a : c.atoms)
    for (const auto& v : a.args)
      if (std::find(c.answer_vars.begin(), c.answer_vars.end(), v) == c.answer_vars.end())
        c.quantified_vars.insert(v);
  return UCQ(c);
}

}  // namespace

TEST(ReasonerProperties, UnravelingPrefixIsStable) {
  std::mt19937 rng(7);
  for (int round = 0; round < 60; ++round) {
    const Ontology o = random_elhi(rng, 4, 2, 6);
    const Reasoner r(o, random_sig(4, 2));
    const Database a = random_abox(rng, 4, 2, 3, 4);
    if (!r.consistent(a)) continue;
    for (std::size_t d = 0; d < 3; ++d) {
      const Database small = r.universal_model(a, d);
      const Database big = r.universal_model(a, d + 1);
      EXPECT_TRUE(std::includes(big.facts.begin(), big.facts.end(), small.facts.begin(), small.facts.end()));
      // Restricting depth d+1 to the elements of depth d gives depth d.
      const std::set<Name> dom = small.adom();
      Database restricted;
      for (const auto& f : big.facts) {
        bool inside = true;
        for (const auto& x : f.args) inside = inside && dom.count(x);
        if (inside) restricted.facts.insert(f);
      }
      if (!a.empty()) EXPECT_EQ(restricted, small);
    }
  }
}

TEST(ReasonerProperties, CertainAnswersMonotoneInAbox) {
  std::mt19937 rng(11);
  for (int round = 0; round < 80; ++round) {
    const Ontology o = random_elhi(rng, 4, 2, 5);
    const Reasoner r(o, random_sig(4, 2));
    const Database a = random_abox(rng, 4, 2, 3, 3);
    Database b = a;
    for (const auto& f : random_abox(rng, 4, 2, 3, 2).facts) b.facts.insert(f);
    const UCQ query = random_cq(rng, 4, 2, 3, 3, 1);
    const auto small = r.certain_answers(query, a);
    const auto big = r.certain_answers(query, b);
    EXPECT_TRUE(std::includes(big.begin(), big.end(), small.begin(), small.end()));
  }
}

TEST(ReasonerProperties, LazyMatchingAgreesWithDeepUnraveling) {
  std::mt19937 rng(3);
  for (int round = 0; round < 80; ++round) {
    const Ontology o = random_elhi(rng, 3, 2, 6);
    const Reasoner r(o, random_sig(3, 2));
    const Database a = random_abox(rng, 3, 2, 2, 3);
    if (!r.consistent(a)) continue;
    const UCQ query = random_cq(rng, 3, 2, 3, 3, round % 2);
    const std::size_t depth = r.reachable_types(a) + 3;
    const Database model = r.universal_model(a, depth);
    std::set<Tuple> expected;
    const std::set<Name> adom = a.adom();
    for (const auto& t : evaluate(query, model)) {
      bool named = true;
      for (const auto& x : t) named = named && adom.count(x);
      if (named) expected.insert(t);
    }
    EXPECT_EQ(r.certain_answers(query, a), expected) << render(query) << render(a);
    // The value is stable at a deeper unraveling.
    std::set<Tuple> deeper;
    for (const auto& t : evaluate(query, r.universal_model(a, depth + 2))) {
      bool named = true;
      for (const auto& x : t) named = named && adom.count(x);
      if (named) deeper.insert(t);
    }
    EXPECT_EQ(deeper, expected);
  }
}

TEST(Derivation, ExamplesHaveTrees) {
  const NormalFormOntology nf = normalize(onto("el", "A [= exists r.B ; exists r.B [= C ;"));
  const DerivationOracle oracle(nf);
  const auto tree = oracle.derive(db("facts { A(a) }"), "a", "C");
  ASSERT_TRUE(tree.has_value());
  EXPECT_EQ(tree->children.size(), 1u);
  EXPECT_EQ(tree->children[0].concept_name, "A");
  EXPECT_FALSE(oracle.derive(db("facts { B(a) }"), "a", "C").has_value());

  const NormalFormOntology lhs = normalize(onto("el", "exists r.B [= C ;"));
  const auto via = DerivationOracle(lhs).derive(db("facts { r(a,b) B(b) }"), "a", "C");
  ASSERT_TRUE(via.has_value());
  EXPECT_TRUE(via->via_role);
}

TEST(Derivation, AgreesWithSaturation) {
  std::mt19937 rng(23);
  for (int round = 0; round < 150; ++round) {
    const Ontology o = random_elhi(rng, 5, 2, 7);
    NormalFormOntology nf = normalize_any(o, random_sig(5, 2));
    const DerivationOracle oracle(nf);
    const Reasoner r(nf);
    const Database a = random_abox(rng, 5, 2, 3, 4);
    EXPECT_EQ(r.saturate_abox(a).facts, oracle.entailed_facts(a)) << render(a);
    for (int c = 0; c < 5; ++c)
      EXPECT_EQ(r.subsumes({"C0"}, "C" + std::to_string(c)),
                oracle.subsumes(std::uint64_t{1} << nf.concept_id("C0"), nf.concept_id("C" + std::to_string(c))));
  }
}
