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

#include "decision.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "canon.hpp"
#include "homomorphism.hpp"
#include "mappings.hpp"
#include "reasoner.hpp"
#include "rewriting.hpp"
#include "supports.hpp"

namespace obdax {

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Supports:
      return "supports";
    case Strategy::Enumerate:
      return "enumerate";
    case Strategy::Rewriting:
      return "rewriting";
  }
  return "?";
}

std::optional<Strategy> parse_strategy(const std::string& s) {
  for (Strategy x : {Strategy::Supports, Strategy::Enumerate, Strategy::Rewriting})
    if (s == strategy_name(x)) return x;
  return std::nullopt;
}

namespace {

void require(const std::vector<Diagnostic>& diags, const std::string& what) {
  if (!diags.empty()) throw Error(Error::Kind::Validation, what + ": " + diags.front().str(), diags);
}

Schema reasoner_signature(const ObdaSpec& spec, const UCQ& q_t) {
  Schema extra = spec.mapping_schema();
  const Schema target = spec.target_schema();
  for (const auto& r : relation_names(q_t))
    if (auto k = target.arity(r)) extra.add(r, *k);
  return extra;
}

std::size_t max_variables(const UCQ& q) {
  std::size_t n = 0;
  for (const auto& d : q.disjuncts) n = std::max(n, quotient(d).variables.size());
  return n;
}

std::uint64_t saturating_pow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (b != 0 && r > std::numeric_limits<std::uint64_t>::max() / b) return std::numeric_limits<std::uint64_t>::max();
    r *= b;
  }
  return r;
}

// |q_t| + |q_t|·|O|^(|q_s|+1), saturating.
std::uint64_t pseudo_tree_bound(const Ontology& o, const UCQ& q_s, const UCQ& q_t) {
  const std::uint64_t qt = size(q_t);
  const std::uint64_t p = saturating_pow(size(o), size(q_s) + 1);
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  if (p != 0 && qt > max / p) return max;
  return qt * p > max - qt ? max : qt + qt * p;
}

class Context {
 public:
  Context(const ObdaSpec& spec, const UCQ& q_s, const UCQ& q_t, bool consistent_only)
      : spec_(checked(spec, q_s, q_t)),
        q_s_(q_s),
        q_t_(q_t),
        sch_m_(spec.mapping_schema()),
        reasoner_(spec.ontology, reasoner_signature(spec, q_t)),
        consistent_only_(consistent_only) {}

  const ObdaSpec& spec() const { return spec_; }
  const UCQ& q_s() const { return q_s_; }
  const UCQ& q_t() const { return q_t_; }
  const Schema& sch_m() const { return sch_m_; }
  const Reasoner& reasoner() const { return reasoner_; }
  bool consistent_only() const { return consistent_only_; }

  std::optional<Witness> witness_for(const Database& d) const {
    const Database md = apply_forward_db(spec_.mappings, d);
    if (consistent_only_ && !reasoner_.consistent(md)) return std::nullopt;
    const std::set<Tuple> ans = evaluate(q_s_, d);
    const std::set<Tuple> cert = reasoner_.certain_answers(q_t_, md);
    if (ans == cert) return std::nullopt;
    std::vector<Tuple> diff;
    std::set_symmetric_difference(ans.begin(), ans.end(), cert.begin(), cert.end(), std::back_inserter(diff));
    Witness w;
    w.database = d;
    w.tuple = diff.front();
    w.source_answers.assign(ans.begin(), ans.end());
    w.certain_answers.assign(cert.begin(), cert.end());
    return w;
  }

 private:
  static const ObdaSpec& checked(const ObdaSpec& spec, const UCQ& q_s, const UCQ& q_t) {
    require(validate_spec(spec), "invalid specification");
    require(validate_query(q_s, spec.source_schema), "invalid source query");
    require(validate_query(q_t, spec.target_schema()), "invalid target query");
    if (q_s.arity != q_t.arity)
      throw Error(Error::Kind::Argument, "source and target queries differ in arity (" +
                                             std::to_string(q_s.arity) + " vs " + std::to_string(q_t.arity) + ")");
    return spec;
  }

  const ObdaSpec& spec_;
  const UCQ& q_s_;
  const UCQ& q_t_;
  Schema sch_m_;
  Reasoner reasoner_;
  bool consistent_only_;
};

// Calls `cb` on `base` extended so that every constant of `tuple` occurs in
// it: each missing constant is identified with a present one or placed in one
// fact over `schema` with fresh companions. Returns false iff `cb` stopped.
bool answer_family(std::set<Fact> base, const Tuple& tuple, const Schema& schema,
                   const std::function<bool(const Database&, const Tuple&)>& cb) {
  std::vector<Name> missing;
  std::set<Name> taken;
  for (const auto& f : base) taken.insert(f.args.begin(), f.args.end());
  const std::set<Name> present = taken;
  for (const auto& t : tuple) {
    if (!present.count(t) && std::find(missing.begin(), missing.end(), t) == missing.end()) missing.push_back(t);
    taken.insert(t);
  }
  std::map<Name, Name> ident;
  std::size_t counter = 0;
  std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
    if (i == missing.size()) {
      Tuple t = tuple;
      for (auto& c : t)
        if (auto it = ident.find(c); it != ident.end()) c = it->second;
      return cb(Database(base), t);
    }
    const Name& v = missing[i];
    std::set<Name> dom;
    for (const auto& f : base) dom.insert(f.args.begin(), f.args.end());
    for (const auto& c : dom) {
      ident[v] = c;
      if (!go(i + 1)) return false;
    }
    ident.erase(v);
    for (const auto& [rel, arity] : schema.relations())
      for (std::size_t pos = 0; pos < arity; ++pos) {
        Fact f{rel, {}};
        for (std::size_t j = 0; j < arity; ++j) {
          if (j == pos) {
            f.args.push_back(v);
            continue;
          }
          Name n;
          do n = "_e" + std::to_string(counter++);
          while (taken.count(n));
          taken.insert(n);
          f.args.push_back(n);
        }
        base.insert(f);
        const bool go_on = go(i + 1);
        base.erase(f);
        if (!go_on) return false;
      }
    return true;
  };
  return go(0);
}

bool forward_exact(const Context& ctx) {
  const Mappings& m = ctx.spec().mappings;
  for (const auto& d : ctx.q_s().disjuncts) {
    const QuotientCQ quo = quotient(d);
    const Database image = apply_forward_db(m, Database(quo.atoms));
    bool ok = true;
    answer_family(image.facts, quo.answer, ctx.sch_m(), [&](const Database& a, const Tuple& t) {
      if (ctx.consistent_only() && !ctx.reasoner().consistent(a)) return true;
      ok = ctx.reasoner().is_certain(ctx.q_t(), a, t);
      return ok;
    });
    if (!ok) return false;
  }
  return true;
}

// ans_{q_s}(D) ⊆ cert_Q(M(D)) for all D, checked on the source databases
// generated by the disjuncts of q_s. Returns a witness on failure.
std::optional<Witness> source_family_witness(const Context& ctx) {
  const Mappings& m = ctx.spec().mappings;
  std::optional<Witness> found;
  for (const auto& d : ctx.q_s().disjuncts) {
    const QuotientCQ quo = quotient(d);
    answer_family(quo.atoms, quo.answer, ctx.spec().source_schema, [&](const Database& f, const Tuple& t) {
      const Database md = apply_forward_db(m, f);
      if (ctx.consistent_only() && !ctx.reasoner().consistent(md)) return true;
      if (ctx.reasoner().is_certain(ctx.q_t(), md, t)) return true;
      found = ctx.witness_for(f);
      if (!found) throw Error(Error::Kind::Internal, "forward counterexample did not re-validate");
      return false;
    });
    if (found) break;
  }
  return found;
}

struct ChoiceSearch {
  std::uint64_t max_nodes = 0;
  std::uint64_t nodes = 0;
  bool capped = false;
};

// Searches M⁻(A, ā) for a disjunct p that q_s does not map into and whose
// database re-validates as a witness.
std::optional<Witness> choice_search(const Context& ctx, const ABox& a, const Tuple& tuple,
                                     ChoiceSearch& st, const std::function<bool()>& cancelled) {
  const Mappings& m = ctx.spec().mappings;
  std::set<Name> taken = a.adom();
  std::size_t counter = 0;
  auto fresh = [&] {
    Name n;
    do n = "_v" + std::to_string(counter++);
    while (taken.count(n));
    taken.insert(n);
    return n;
  };

  struct Slot {
    std::vector<std::vector<Atom>> options;
  };
  std::vector<Slot> slots;
  for (const auto& f : a.facts) {
    Slot s;
    std::vector<CQ> views;
    for (const auto& sm : suitable_mappings(m, f)) {
      s.options.push_back(instantiate_body(m[sm.mapping], sm.sigma, fresh));
      CQ v;
      for (const auto& c : f.args)
        if (std::find(v.answer_vars.begin(), v.answer_vars.end(), c) == v.answer_vars.end()) v.answer_vars.push_back(c);
      for (const auto& at : s.options.back()) {
        v.atoms.insert(at);
        for (const auto& c : at.args)
          if (std::find(v.answer_vars.begin(), v.answer_vars.end(), c) == v.answer_vars.end())
            v.quantified_vars.insert(c);
      }
      views.push_back(std::move(v));
    }
    if (s.options.empty()) return std::nullopt;  // M⁻(A, ā) is empty
    // An option that maps into another one makes the other redundant.
    std::vector<bool> drop(views.size(), false);
    for (std::size_t j = 0; j < views.size(); ++j)
      for (std::size_t i = 0; i < views.size() && !drop[j]; ++i) {
        if (i == j || drop[i]) continue;
        if (find_cq_hom(views[i], views[j]) && (i < j || !find_cq_hom(views[j], views[i]))) drop[j] = true;
      }
    Slot kept;
    for (std::size_t j = 0; j < views.size(); ++j)
      if (!drop[j]) kept.options.push_back(std::move(s.options[j]));
    slots.push_back(std::move(kept));
  }
  std::stable_sort(slots.begin(), slots.end(),
                   [](const Slot& x, const Slot& y) { return x.options.size() < y.options.size(); });

  std::map<Atom, int> p;
  std::optional<Witness> found;
  std::function<bool(std::size_t)> dfs = [&](std::size_t i) -> bool {
    if (cancelled()) return true;
    if (++st.nodes > st.max_nodes) {
      st.capped = true;
      return true;
    }
    Database db;
    for (const auto& [atom, count] : p) db.facts.insert(atom);
    // Adding atoms keeps every match of q_s, so the whole branch is safe.
    if (is_answer(ctx.q_s(), db, tuple)) return false;
    if (i == slots.size()) {
      found = ctx.witness_for(db);
      if (!found && !ctx.consistent_only())
        throw Error(Error::Kind::Internal, "backward counterexample did not re-validate");
      return found.has_value();
    }
    for (const auto& opt : slots[i].options) {
      for (const auto& at : opt) ++p[at];
      const bool stop = dfs(i + 1);
      for (const auto& at : opt)
        if (--p[at] == 0) p.erase(at);
      if (stop) return true;
    }
    return false;
  };
  dfs(0);
  return found;
}

struct SearchOutcome {
  std::optional<Witness> witness;
  bool capped = false;
  std::uint64_t choices = 0;
};

// A mapping with head r(v,v) applies to r(a,b) only in images of the
// candidate where a = b. Adds, after each candidate, its quotients under every
// set of such identifications (certainty is preserved by homomorphisms).
std::vector<SupportCandidate> with_loop_quotients(const Context& ctx, const std::vector<SupportCandidate>& cands,
                                                  bool& capped) {
  constexpr std::size_t kMaxLoopable = 12;
  std::set<Name> loop_heads;
  for (const auto& m : ctx.spec().mappings)
    if (m.head.args.size() == 2 && m.head.args[0] == m.head.args[1]) loop_heads.insert(m.head.relation);
  if (loop_heads.empty()) return cands;

  std::vector<SupportCandidate> out;
  for (const auto& c : cands) {
    out.push_back(c);
    std::vector<std::pair<Name, Name>> loopable;
    for (const auto& f : c.abox.facts)
      if (loop_heads.count(f.relation) && f.args[0] != f.args[1]) loopable.emplace_back(f.args[0], f.args[1]);
    if (loopable.size() > kMaxLoopable) {
      capped = true;
      loopable.resize(kMaxLoopable);
    }
    std::set<std::string> seen{canonical_form(c.abox, c.tuple).key};
    for (std::size_t mask = 1; mask < (std::size_t{1} << loopable.size()); ++mask) {
      std::map<Name, Name> parent;
      std::function<Name(const Name&)> find = [&](const Name& x) -> Name {
        auto it = parent.find(x);
        if (it == parent.end() || it->second == x) return x;
        return it->second = find(it->second);
      };
      for (std::size_t k = 0; k < loopable.size(); ++k) {
        if (!((mask >> k) & 1)) continue;
        const Name a = find(loopable[k].first), b = find(loopable[k].second);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
      SupportCandidate q;
      for (const auto& f : c.abox.facts) {
        Fact g{f.relation, {}};
        for (const auto& x : f.args) g.args.push_back(find(x));
        q.abox.facts.insert(std::move(g));
      }
      for (const auto& x : c.tuple) q.tuple.push_back(find(x));
      if (ctx.consistent_only() && !ctx.reasoner().consistent(q.abox)) continue;
      if (seen.insert(canonical_form(q.abox, q.tuple).key).second) out.push_back(std::move(q));
    }
  }
  return out;
}

// Runs the choice search over all candidates; the witness reported is the
// one of the lowest-index failing candidate, independent of `jobs`.
SearchOutcome search(const Context& ctx, const std::vector<SupportCandidate>& given, const DecisionBudget& b) {
  SearchOutcome out;
  const std::vector<SupportCandidate> cands = with_loop_quotients(ctx, given, out.capped);
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::atomic<std::size_t> next{0}, best{kNone};
  std::atomic<std::uint64_t> choices{0};
  std::atomic<bool> capped{false};
  std::mutex mu;
  std::map<std::size_t, Witness> witnesses;
  std::exception_ptr error;

  auto worker = [&] {
    try {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= cands.size() || i > best.load()) return;
        ChoiceSearch st;
        st.max_nodes = b.max_choices;
        auto w = choice_search(ctx, cands[i].abox, cands[i].tuple, st, [&] { return best.load() < i; });
        choices += st.nodes;
        if (st.capped) capped = true;
        if (w) {
          std::lock_guard lock(mu);
          witnesses.emplace(i, std::move(*w));
          std::size_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!error) error = std::current_exception();
      best = 0;
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(b.jobs, static_cast<unsigned>(cands.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  out.choices = choices.load();
  out.capped = out.capped || capped.load();
  if (!witnesses.empty()) out.witness = std::move(witnesses.begin()->second);
  return out;
}

void keep_new(std::vector<SupportCandidate>& cands, std::set<std::string>& seen) {
  std::vector<SupportCandidate> out;
  for (auto& c : cands)
    if (seen.insert(canonical_form(c.abox, c.tuple).key).second) out.push_back(std::move(c));
  cands = std::move(out);
}

BackwardOutcome backward_supports(const Context& ctx, const DecisionBudget& b, BackwardOutcome out) {
  const std::size_t needed = max_variables(ctx.q_s());
  const std::size_t max_depth = b.max_depth.value_or(needed);
  out.bounds.frontier_depth = max_depth;
  std::set<std::string> seen;
  for (std::size_t depth = 0; depth <= max_depth; ++depth) {
    out.bounds.depth_reached = depth;
    SupportSet set = generate_supports(ctx.reasoner(), ctx.sch_m(), ctx.q_t(),
                                       {depth, b.max_candidates, b.consistent_only});
    keep_new(set.candidates, seen);
    out.bounds.candidates += set.candidates.size();
    const SearchOutcome s = search(ctx, set.candidates, b);
    out.bounds.choices += s.choices;
    if (s.witness) {
      out.status = Inclusion::Fails;
      out.witness = s.witness;
      return out;
    }
    if (s.capped || set.capped) {
      out.status = b.exhaustive ? Inclusion::Holds : Inclusion::Unknown;
      out.bounds.reason = s.capped ? "choice search cap reached" : "candidate cap reached";
      return out;
    }
    if (!set.truncated) {
      out.status = Inclusion::Holds;
      out.bounds.exhaustive = true;
      out.bounds.reason = "every derivation fits within depth " + std::to_string(depth);
      return out;
    }
  }
  if (out.bounds.rooted && max_depth >= needed) {
    out.status = Inclusion::Holds;
    out.bounds.exhaustive = true;
    out.bounds.reason = "rooted source query; frontier at depth " + std::to_string(max_depth);
  } else if (b.exhaustive) {
    out.status = Inclusion::Holds;
    out.bounds.reason = "budget declared exhaustive";
  } else {
    out.status = Inclusion::Unknown;
    out.bounds.reason = "derivations deeper than max depth " + std::to_string(max_depth);
  }
  return out;
}

BackwardOutcome backward_enumerate(const Context& ctx, const DecisionBudget& b, BackwardOutcome out) {
  const std::uint64_t bound = pseudo_tree_bound(ctx.spec().ontology, ctx.q_s(), ctx.q_t());
  const std::size_t frontier = b.max_depth.value_or(size(ctx.q_s()));
  const std::size_t max_abox = b.max_abox.value_or(static_cast<std::size_t>(std::min<std::uint64_t>(bound, 3)));
  out.bounds.frontier_depth = frontier;
  out.bounds.max_abox = max_abox;
  RewritingBudget rb;
  rb.max_abox_size = max_abox;
  rb.max_core = std::max<std::size_t>(1, max_variables(ctx.q_t()));
  rb.max_outdegree = size(ctx.spec().ontology);
  rb.max_depth = frontier;
  rb.exhaustive = b.exhaustive;
  std::vector<SupportCandidate> cands;
  std::set<std::string> seen;
  bool capped = false;
  enumerate_pseudo_tree_aboxes(ctx.sch_m(), rb, ctx.q_t().arity,
                               [&](const PseudoTreeAbox& p, const std::vector<Tuple>& tuples) {
                                 const ABox closed = frontier_closure(p, frontier, ctx.sch_m());
                                 if (b.consistent_only && !ctx.reasoner().consistent(closed)) return true;
                                 for (const auto& t : tuples) {
                                   if (!ctx.reasoner().is_certain(ctx.q_t(), closed, t)) continue;
                                   if (seen.insert(canonical_form(closed, t).key).second) cands.push_back({closed, t});
                                 }
                                 if (b.max_candidates && cands.size() > b.max_candidates) capped = true;
                                 return !capped;
                               });
  out.bounds.candidates = cands.size();
  const SearchOutcome s = search(ctx, cands, b);
  out.bounds.choices = s.choices;
  if (s.witness) {
    out.status = Inclusion::Fails;
    out.witness = s.witness;
    return out;
  }
  const bool complete = out.bounds.rooted && max_abox >= bound && !capped && !s.capped;
  out.bounds.exhaustive = complete;
  if (complete) {
    out.status = Inclusion::Holds;
    out.bounds.reason = "pseudo-tree bound reached";
  } else if (b.exhaustive) {
    out.status = Inclusion::Holds;
    out.bounds.reason = "budget declared exhaustive";
  } else {
    out.status = Inclusion::Unknown;
    out.bounds.reason = "ABox size " + std::to_string(max_abox) + " below bound " + std::to_string(bound);
  }
  return out;
}

BackwardOutcome backward_rewriting(const Context& ctx, const DecisionBudget& b, BackwardOutcome out) {
  if (ctx.spec().ontology.dialect != Dialect::DLLiteRHorn)
    throw Error(Error::Kind::Argument, "the rewriting strategy needs a DL-Lite ontology");
  const std::size_t bound = b.max_abox.value_or(default_rewriting_bound(ctx.spec().ontology, ctx.q_t()));
  out.bounds.max_abox = bound;
  const UCQ rw = canonical_rewriting_dllite(ctx.spec().ontology, ctx.sch_m(), ctx.q_t(), bound);
  std::vector<SupportCandidate> cands;
  for (const auto& d : rw.disjuncts) {
    const QuotientCQ quo = quotient(d);
    ABox a(quo.atoms);
    if (b.consistent_only && !ctx.reasoner().consistent(a)) continue;
    cands.push_back({std::move(a), quo.answer});
  }
  out.bounds.candidates = cands.size();
  const SearchOutcome s = search(ctx, cands, b);
  out.bounds.choices = s.choices;
  if (s.witness) {
    out.status = Inclusion::Fails;
    out.witness = s.witness;
  } else if (b.exhaustive && !s.capped) {
    out.status = Inclusion::Holds;
    out.bounds.exhaustive = true;
    out.bounds.reason = "rewriting bound declared sufficient";
  } else {
    out.status = Inclusion::Unknown;
    out.bounds.reason = "rewriting bound " + std::to_string(bound) + " not declared sufficient";
  }
  return out;
}

BackwardOutcome backward(const Context& ctx, const DecisionBudget& b) {
  BackwardOutcome out;
  out.bounds.strategy = strategy_name(b.strategy);
  out.bounds.dialect = dialect_name(ctx.spec().ontology.dialect);
  out.bounds.rooted = is_rooted(ctx.q_s());
  out.bounds.consistent_only = b.consistent_only;
  out.bounds.max_abox = b.max_abox.value_or(0);
  switch (b.strategy) {
    case Strategy::Supports:
      return backward_supports(ctx, b, std::move(out));
    case Strategy::Enumerate:
      return backward_enumerate(ctx, b, std::move(out));
    case Strategy::Rewriting:
      return backward_rewriting(ctx, b, std::move(out));
  }
  return out;
}

Verdict decide(const Context& ctx, const DecisionBudget& b) {
  Verdict v;
  if (auto w = source_family_witness(ctx)) {
    v.outcome = Outcome::No;
    v.witness = std::move(w);
    BoundsReport rep;
    rep.strategy = strategy_name(b.strategy);
    rep.dialect = dialect_name(ctx.spec().ontology.dialect);
    rep.rooted = is_rooted(ctx.q_s());
    rep.consistent_only = b.consistent_only;
    rep.exhaustive = true;
    rep.reason = "source answer not certain on its own database";
    v.bounds = std::move(rep);
    return v;
  }
  BackwardOutcome bo = backward(ctx, b);
  v.bounds = bo.bounds;
  switch (bo.status) {
    case Inclusion::Holds:
      v.outcome = Outcome::Yes;
      break;
    case Inclusion::Fails:
      v.outcome = Outcome::No;
      v.witness = std::move(bo.witness);
      break;
    case Inclusion::Unknown:
      v.outcome = Outcome::Unknown;
      break;
  }
  return v;
}

}  // namespace

bool forward_inclusion(const ObdaSpec& spec, const UCQ& q_s, const UCQ& q_t, bool consistent_only) {
  const Context ctx(spec, q_s, q_t, consistent_only);
  return forward_exact(ctx);
}

BackwardOutcome backward_inclusion(const ObdaSpec& spec, const UCQ& q_s, const UCQ& q_t,
                                   const DecisionBudget& budget) {
  const Context ctx(spec, q_s, q_t, budget.consistent_only);
  return backward(ctx, budget);
}

Verdict verify(const ObdaSpec& spec, const UCQ& q_s, const UCQ& q_t, const DecisionBudget& budget) {
  const Context ctx(spec, q_s, q_t, budget.consistent_only);
  return decide(ctx, budget);
}

Verdict expressible(const ObdaSpec& spec, const UCQ& q_s, const DecisionBudget& budget) {
  const UCQ q_t = apply_forward_query(spec.mappings, q_s);
  const Context ctx(spec, q_s, q_t, budget.consistent_only);
  Verdict v = decide(ctx, budget);
  if (v.outcome == Outcome::Yes) v.realization = q_t;
  return v;
}

std::optional<Witness> check_database(const ObdaSpec& spec, const UCQ& q_s, const UCQ& q_t,
                                      const Database& d, bool consistent_only) {
  const Context ctx(spec, q_s, q_t, consistent_only);
  return ctx.witness_for(d);
}

}  // namespace obdax
