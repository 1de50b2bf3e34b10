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


// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "decision.hpp"
#include "derivation.hpp"
#include "homomorphism.hpp"
#include "mappings.hpp"
#include "oracle.hpp"
#include "reasoner.hpp"
#include "textio.hpp"

using namespace obdax;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Result {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void fail(const std::string& why) {
    pass = false;
    if (failures.size() < 5) failures.push_back(why);
  }
};

ObdaSpec load(const std::string& name) {
  std::ifstream in(std::string(OBDAX_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

DecisionBudget exhaustive() {
  DecisionBudget b;
  b.exhaustive = true;
  return b;
}

// Definition-level check of a witness, independent of the decision module.
bool witness_differs(const ObdaSpec& spec, const UCQ& q_s, const UCQ& q_t, const Database& d) {
  Schema sch = spec.mapping_schema();
  for (const auto& c : q_t.disjuncts)
    for (const auto& a : c.atoms) sch.add(a.relation, a.args.size());
  return evaluate(q_s, d) != certain_answers(spec.ontology, sch, q_t, apply_forward_db(spec.mappings, d));
}

// --- 1 -----------------------------------------------------------------------

Result managers_suite() {
  Result r;
  const ObdaSpec with_o = load("managers.obda");
  ObdaSpec plain = with_o;
  plain.ontology = Ontology{};
  plain.ontology.dialect = Dialect::EL;
  ObdaSpec third = with_o;
  third.mappings.push_back(load("managers_full.obda").mappings.back());

  struct Case {
    const char* name;
    const ObdaSpec* spec;
    const char* q_s;
    Outcome expected;
    const char* realization;
  };
  const std::vector<Case> cases = {
      {"a", &with_o, "q(x) :- Man(x,y).", Outcome::No, nullptr},
      {"b", &third, "q(x) :- Man(x,y).", Outcome::Yes, "q(x) :- Manager(x)."},
      {"c/plain", &plain, "q(x) :- Emp(x,y,z).", Outcome::Yes, "q(x) :- Employee(x)."},
      {"c/onto", &third, "q(x) :- Emp(x,y,z).", Outcome::No, nullptr},
      {"d", &third, "q(x,y) :- Man(x,z), Emp(y,z,u).", Outcome::Yes, nullptr},
  };
  double worst = 0;
  for (const auto& c : cases) {
    const UCQ q_s = parse_query(c.q_s, c.spec->source_schema);
    const auto t0 = Clock::now();
    const Verdict v = expressible(*c.spec, q_s);
    const double t = seconds_since(t0);
    worst = std::max(worst, t);
    if (v.outcome != c.expected) {
      r.fail(std::string(c.name) + ": got " + outcome_name(v.outcome));
      continue;
    }
    if (t >= 1.0) r.fail(std::string(c.name) + ": took " + std::to_string(t) + " s");
    if (c.realization && !(v.realization && ucq_equivalent(*v.realization, parse_query_unchecked(c.realization))))
      r.fail(std::string(c.name) + ": realization not equivalent to " + c.realization);
    if (c.expected == Outcome::No &&
        !(v.witness && witness_differs(*c.spec, q_s, apply_forward_query(c.spec->mappings, q_s), v.witness->database)))
      r.fail(std::string(c.name) + ": witness does not re-validate");
  }
  // M(q_s) for (d) also has Employee(y); manages(x,y) alone is verified directly.
  const UCQ join = parse_query("q(x,y) :- Man(x,z), Emp(y,z,u).", third.source_schema);
  if (verify(third, join, parse_query_unchecked("q(x,y) :- manages(x,y).")).outcome != Outcome::Yes)
    r.fail("d: verify(manages) is not Yes");
  const UCQ emp = parse_query("q(x) :- Emp(x,y,z).", third.source_schema);
  if (verify(third, emp, parse_query_unchecked("q(x) :- Employee(x).")).outcome != Outcome::No)
    r.fail("c: verify(Employee) with the ontology is not No");
  char buf[96];
  std::snprintf(buf, sizeof buf, "5 cases, slowest %.3f s", worst);
  r.detail = buf;
  return r;
}

// --- 2 -----------------------------------------------------------------------

Result forward_with_equality() {
  Result r;
  const ObdaSpec s = parse_spec("schema { r/2 s/2 } mappings { r(x,y) -> r(x,y) ; }");
  const UCQ q = parse_query("q(x,y,z) :- r(x,y), s(x,z), s(z,u), x = y.", s.source_schema);
  const UCQ image = apply_forward_query(s.mappings, q);
  if (!ucq_equivalent(image, parse_query_unchecked("p(x,y,z) :- r(x,y), x = y.")))
    r.fail("M(q) = " + render(image));
  const std::set<Tuple> ans = evaluate(image, parse_database("facts { r(a,a) r(b,c) }"));
  const std::set<Tuple> expected = {{"a", "a", "a"}, {"a", "a", "b"}, {"a", "a", "c"}};
  if (ans != expected) r.fail("z is not evaluated as a free answer variable");
  r.detail = "M(q) = " + render(image, "p");
  if (!r.detail.empty() && r.detail.back() == '\n') r.detail.pop_back();
  return r;
}

// --- 3 -----------------------------------------------------------------------

CQ random_target_cq(std::mt19937_64& rng, const Schema& sch, std::size_t arity, std::size_t vars,
                    std::size_t atoms) {
  CQ c;
  const auto& rels = sch.relations();
  std::vector<std::pair<Name, std::size_t>> list(rels.begin(), rels.end());
  for (std::size_t i = 0; i < atoms && !list.empty(); ++i) {
    const auto& [rel, k] = list[rng() % list.size()];
    Atom a{rel, {}};
    for (std::size_t j = 0; j < k; ++j) a.args.push_back("w" + std::to_string(rng() % vars));
    c.atoms.insert(a);
  }
  std::vector<Name> vs;
  for (const auto& a : c.atoms)
    for (const auto& v : a.args)
      if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
  for (std::size_t i = 0; i < arity; ++i) c.answer_vars.push_back(i < vs.size() ? vs[i] : "w" + std::to_string(vars + i));
  for (const auto& v : vs)
    if (std::find(c.answer_vars.begin(), c.answer_vars.end(), v) == c.answer_vars.end()) c.quantified_vars.insert(v);
  return c;
}

// Drops each atom with probability 1/3; dropped answer variables stay free.
CQ weaken(std::mt19937_64& rng, const CQ& q) {
  CQ w = q;
  w.atoms.clear();
  w.quantified_vars.clear();
  for (const auto& a : q.atoms)
    if (rng() % 3) w.atoms.insert(a);
  for (const auto& a : w.atoms)
    for (const auto& v : a.args)
      if (std::find(w.answer_vars.begin(), w.answer_vars.end(), v) == w.answer_vars.end()) w.quantified_vars.insert(v);
  for (const auto& e : w.equalities)
    for (const Name* v : {&e.left, &e.right})
      if (std::find(w.answer_vars.begin(), w.answer_vars.end(), *v) == w.answer_vars.end())
        w.quantified_vars.insert(*v);
  return w;
}

Result mapping_properties() {
  Result r;
  InstanceProfile p;
  p.max_relations = 3;
  p.max_mappings = 4;
  p.max_body_atoms = 2;
  p.max_cis = 0;
  p.max_query_atoms = 3;
  std::size_t both = 0, neither = 0, mono1 = 0, mono2 = 0, skipped = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    std::mt19937_64 rng(seed * 7919 + 1);
    const RandomInstance inst = random_instance(seed, p);
    const Mappings& m = inst.spec.mappings;
    const Schema sch = inst.spec.mapping_schema();
    const UCQ& q = inst.q_s;
    const UCQ mq = apply_forward_query(m, q);

    // Adjunction: r is either a weakening of M(q) or a random query over sch(M).
    UCQ rr;
    rr.arity = q.arity;
    if (seed % 2 == 0 && !mq.disjuncts.empty()) {
      rr.disjuncts.push_back(weaken(rng, mq.disjuncts[0]));
    } else {
      rr.disjuncts.push_back(random_target_cq(rng, sch, q.arity, 3, 1 + rng() % 3));
    }
    const BackwardResult back = apply_backward_query(m, rr, 20000);
    if (back.capped) {
      ++skipped;
      continue;
    }
    const bool lhs = ucq_contained(q, back.query);
    const bool rhs = ucq_contained(mq, rr);
    if (lhs != rhs) r.fail("adjunction seed " + std::to_string(seed) + ": q <= M-(r) is " + (lhs ? "true" : "false"));
    (lhs ? both : neither) += 1;

    // Forward monotonicity: q1 ⊆ q2 when q2 drops atoms of q1.
    UCQ q2;
    q2.arity = q.arity;
    for (const auto& d : q.disjuncts) q2.disjuncts.push_back(weaken(rng, d));
    if (ucq_contained(q, q2)) {
      ++mono1;
      if (!ucq_contained(mq, apply_forward_query(m, q2))) r.fail("forward monotonicity seed " + std::to_string(seed));
    }
    // Backward monotonicity: r1 ⊆ r2 when r2 drops atoms of r1.
    UCQ r2;
    r2.arity = rr.arity;
    r2.disjuncts.push_back(weaken(rng, rr.disjuncts[0]));
    const BackwardResult back2 = apply_backward_query(m, r2, 20000);
    if (!back2.capped && ucq_contained(rr, r2)) {
      ++mono2;
      if (!ucq_contained(back.query, back2.query)) r.fail("backward monotonicity seed " + std::to_string(seed));
    }
  }
  if (both == 0 || neither == 0) r.fail("adjunction cases are one-sided");
  r.detail = "500 instances; adjunction true/false " + std::to_string(both) + "/" + std::to_string(neither) +
             ", forward pairs " + std::to_string(mono1) + ", backward pairs " + std::to_string(mono2) + ", capped " +
             std::to_string(skipped);
  return r;
}

// --- 4 -----------------------------------------------------------------------

std::size_t query_vars(const UCQ& q) {
  std::size_t n = 0;
  for (const auto& d : q.disjuncts) n = std::max(n, d.variables().size());
  return n;
}

Result oracle_equivalence() {
  Result r;
  const auto t0 = Clock::now();
  InstanceProfile p;
  p.max_relations = 3;
  p.max_mappings = 4;
  p.max_cis = 3;
  p.max_query_vars = 4;
  p.max_query_atoms = 3;
  std::size_t yes = 0, no = 0, oracle_no = 0, confirmed = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    p.dialect = seed % 3 == 0 ? Dialect::DLLiteRHorn : seed % 3 == 1 ? Dialect::EL : Dialect::ELHI;
    const RandomInstance inst = random_instance(1000 + seed, p);
    const UCQ q_t = apply_forward_query(inst.spec.mappings, inst.q_s);
    const Verdict v = expressible(inst.spec, inst.q_s, exhaustive());
    OracleOptions o;
    o.max_domain = query_vars(inst.q_s) + 2;
    o.max_facts = 4;
    const OracleResult orc = brute_force_realization_check(inst.spec, inst.q_s, q_t, o);
    const std::string tag = "seed " + std::to_string(1000 + seed);
    if (v.outcome == Outcome::Unknown) r.fail(tag + ": Unknown under exhaustive budget");
    if (orc.counterexample) {
      ++oracle_no;
      if (v.outcome != Outcome::No) r.fail(tag + ": oracle counterexample but decision " + outcome_name(v.outcome));
    }
    if (v.outcome == Outcome::No) {
      ++no;
      if (!v.witness || !witness_differs(inst.spec, inst.q_s, q_t, v.witness->database))
        r.fail(tag + ": No-witness does not re-validate");
      confirmed += orc.counterexample.has_value();
    }
    yes += v.outcome == Outcome::Yes;
  }
  const double t = seconds_since(t0);
  if (t > 300) r.fail("took " + std::to_string(t) + " s");
  if (yes == 0 || no == 0) r.fail("verdicts are one-sided");
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "200 instances: %zu Yes, %zu No (all witnesses re-validate, %zu also found by the oracle), "
                "oracle counterexamples %zu, %.1f s",
                yes, no, confirmed, oracle_no, t);
  r.detail = buf;
  return r;
}

// --- 5 -----------------------------------------------------------------------

// 2 universal (1,2) and 3 existential (3,4,5) variables.
const std::vector<std::array<int, 3>> kClausePool = {
    {-1, -2, -3}, {3, 3, 3}, {3, -2, -2}, {1, 2, -4}, {-5, 3, -1}, {3, 5, -4}, {-2, -4, 2}, {1, -3, -3},
};

std::vector<QbfFormula> qbf_family() {
  std::vector<QbfFormula> out;
  const std::size_t n = kClausePool.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    const int k = __builtin_popcountll(mask);
    if (k < 2 || k > 4) continue;
    QbfFormula phi{2, 3, {}};
    for (std::size_t i = 0; i < n; ++i)
      if ((mask >> i) & 1) phi.clauses.push_back(kClausePool[i]);
    out.push_back(std::move(phi));
  }
  return out;
}

Result qbf_round_trip() {
  Result r;
  const auto t0 = Clock::now();
  const std::vector<QbfFormula> family = qbf_family();
  std::size_t truths = 0;
  for (const auto& phi : family) {
    const QbfInstance inst = qbf_to_instance(phi);
    const std::string tag = render_qdimacs(phi);
    const UCQ image = apply_forward_query(inst.spec.mappings, inst.q_s);
    if (!ucq_equivalent(image, parse_query_unchecked("q() :- r0(y0,y1), r1(y0,y1).")))
      r.fail("M(q_s) shape: " + render(image));
    const bool truth = qbf_brute_eval(phi);
    truths += truth;
    const Verdict v = expressible(inst.spec, inst.q_s);
    if (v.outcome != (truth ? Outcome::Yes : Outcome::No))
      r.fail(std::string("expected ") + (truth ? "yes" : "no") + ", got " + outcome_name(v.outcome) + " for\n" + tag);
  }
  if (family.size() < 100) r.fail("family too small");
  if (truths == 0 || truths == family.size()) r.fail("family is one-sided");
  char buf[160];
  std::snprintf(buf, sizeof buf, "%zu formulas (%zu true, %zu false), %.1f s", family.size(), truths,
                family.size() - truths, seconds_since(t0));
  r.detail = buf;
  return r;
}

// --- 6 -----------------------------------------------------------------------

Result chase_cross_oracle() {
  Result r;
  std::size_t facts = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const std::size_t concepts = 2 + seed % 5;  // 2..6
    const Ontology o = random_normal_form(seed, concepts, 2, 3 + seed % 6);
    Schema sig;
    for (std::size_t i = 0; i < concepts; ++i) sig.add("A" + std::to_string(i), 1);
    for (std::size_t i = 0; i < 2; ++i) sig.add("r" + std::to_string(i), 2);
    const NormalFormOntology nf = normalize_any(o, sig);
    const ABox a = random_abox(seed + 5000, concepts, 2, 3, 2 + seed % 4);
    const Reasoner reasoner(nf);
    const DerivationOracle oracle(nf);
    const ABox chase = reasoner.saturate_abox(a).facts;
    const ABox trees = oracle.entailed_facts(a);
    facts += chase.facts.size();
    if (chase != trees) r.fail("seed " + std::to_string(seed) + ":\n" + render(a));
  }
  r.detail = "300 (O, A) pairs, " + std::to_string(facts) + " entailed facts compared";
  return r;
}

// --- 7 -----------------------------------------------------------------------

Result monotonicity() {
  Result r;
  InstanceProfile p;
  p.max_relations = 3;
  p.max_mappings = 4;
  p.max_cis = 4;
  p.max_query_vars = 3;
  p.max_query_atoms = 2;
  std::size_t yes1 = 0, yes2 = 0, pairs = 0;
  for (std::uint64_t seed = 0; pairs < 100; ++seed) {
    p.dialect = seed % 3 == 0 ? Dialect::DLLiteRHorn : seed % 3 == 1 ? Dialect::EL : Dialect::ELHI;
    const RandomInstance inst = random_instance(20000 + seed, p);
    if (inst.spec.ontology.empty()) continue;
    ++pairs;
    std::mt19937_64 rng(seed);
    ObdaSpec weaker = inst.spec;
    Ontology& o2 = weaker.ontology;
    auto thin = [&](auto& v) {
      std::decay_t<decltype(v)> kept;
      for (auto& x : v)
        if (rng() % 2) kept.push_back(x);
      v = kept;
    };
    thin(o2.concept_inclusions);
    thin(o2.role_inclusions);
    thin(o2.role_disjointness);
    const Verdict v1 = expressible(inst.spec, inst.q_s, exhaustive());
    const Verdict v2 = expressible(weaker, inst.q_s, exhaustive());
    yes1 += v1.outcome == Outcome::Yes;
    yes2 += v2.outcome == Outcome::Yes;
    if (v1.outcome == Outcome::Yes && v2.outcome == Outcome::No)
      r.fail("seed " + std::to_string(20000 + seed) + ":\n" + render(inst.spec) + render(inst.q_s));
  }
  if (yes1 == 0) r.fail("no instance is expressible under O1");
  r.detail = "100 pairs: Yes under O1 " + std::to_string(yes1) + ", Yes under O2 " + std::to_string(yes2);
  return r;
}

// --- 8 -----------------------------------------------------------------------

Result scaling_smoke() {
  Result r;
  std::string detail = "QBF family, median ms by clause count:";
  for (std::size_t clauses = 1; clauses <= 6; ++clauses) {
    std::vector<double> times;
    for (std::uint64_t seed = 0; seed < 7; ++seed) {
      std::mt19937_64 rng(seed * 31 + clauses);
      QbfFormula phi{2, 3, {}};
      for (std::size_t i = 0; i < clauses; ++i) {
        std::array<int, 3> c{};
        for (int& l : c) l = static_cast<int>(rng() % 5 + 1) * (rng() % 2 ? 1 : -1);
        phi.clauses.push_back(c);
      }
      const QbfInstance inst = qbf_to_instance(phi);
      const auto t0 = Clock::now();
      const Verdict v = expressible(inst.spec, inst.q_s);
      times.push_back(1000 * seconds_since(t0));
      if (v.outcome != (qbf_brute_eval(phi) ? Outcome::Yes : Outcome::No)) r.fail("wrong verdict");
    }
    std::sort(times.begin(), times.end());
    char buf[48];
    std::snprintf(buf, sizeof buf, " %zu:%.1f", clauses + 1, times[times.size() / 2]);
    detail += buf;
  }
  r.detail = detail + " (|q_s| atoms incl. Z; informational, no threshold)";
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Result()>>> criteria = {
      {"managers suite", managers_suite},
      {"forward application with equality", forward_with_equality},
      {"mapping adjunction and monotonicity", mapping_properties},
      {"Oracle equivalence", oracle_equivalence},
      {"QBF reduction round-trip", qbf_round_trip},
      {"Chase/derivation-tree cross-oracle", chase_cross_oracle},
      {"ontology monotonicity", monotonicity},
      {"Scaling smoke test", scaling_smoke},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Result res;
    try {
      res = criteria[i].second();
    } catch (const std::exception& e) {
      res.fail(std::string("exception: ") + e.what());
    }
    std::printf("%s %zu %s: %s\n", res.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, res.detail.c_str());
    for (const auto& f : res.failures) std::printf("    %s\n", f.c_str());
    std::fflush(stdout);
    failed += !res.pass;
  }
  return failed == 0 ? 0 : 1;
}
