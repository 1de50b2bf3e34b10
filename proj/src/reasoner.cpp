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

#include "reasoner.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace obdax {

int NormalFormOntology::concept_id(const Name& n) const {
  auto it = std::find(concepts.begin(), concepts.end(), n);
  return it == concepts.end() ? -1 : static_cast<int>(it - concepts.begin());
}

int NormalFormOntology::role_id(const Name& n) const {
  auto it = std::find(roles.begin(), roles.end(), n);
  return it == roles.end() ? -1 : static_cast<int>(it - roles.begin());
}

int NormalFormOntology::intern_concept(const Name& n, bool is_internal) {
  if (int id = concept_id(n); id >= 0) return id;
  concepts.push_back(n);
  internal.push_back(is_internal);
  return static_cast<int>(concepts.size()) - 1;
}

int NormalFormOntology::intern_role(const Name& n) {
  if (int id = role_id(n); id >= 0) return id;
  roles.push_back(n);
  return static_cast<int>(roles.size()) - 1;
}

std::string NormalFormOntology::role_str(int code) const {
  return roles[static_cast<std::size_t>(code / 2)] + (code % 2 ? "-" : "");
}

namespace {

Role to_role(const NormalFormOntology& nf, int code) {
  return Role{nf.roles[static_cast<std::size_t>(code / 2)], code % 2 == 1};
}

Concept to_concept(const NormalFormOntology& nf, int id) {
  if (id == nf.bottom) return Concept::bottom();
  return Concept::named(nf.concepts[static_cast<std::size_t>(id)]);
}

}  // namespace

Ontology NormalFormOntology::to_ontology() const {
  Ontology o;
  o.dialect = Dialect::ELHI;
  for (int a : top_axioms) o.concept_inclusions.push_back({Concept::top(), to_concept(*this, a)});
  for (const auto& c : conj_axioms) {
    std::vector<Concept> ops;
    for (int a : c.lhs) ops.push_back(to_concept(*this, a));
    Concept lhs = ops.size() == 1 ? ops.front() : Concept::conj(ops);
    o.concept_inclusions.push_back({lhs, to_concept(*this, c.rhs)});
  }
  for (const auto& e : exists_rhs)
    o.concept_inclusions.push_back(
        {to_concept(*this, e.lhs), Concept::exists(to_role(*this, e.role), to_concept(*this, e.filler))});
  for (const auto& e : exists_lhs)
    o.concept_inclusions.push_back(
        {Concept::exists(to_role(*this, e.role), to_concept(*this, e.filler)), to_concept(*this, e.rhs)});
  for (const auto& r : role_inclusions)
    o.role_inclusions.push_back({to_role(*this, r.sub), to_role(*this, r.sup)});
  for (const auto& d : disjoint_roles) {
    RoleDisjointness rd;
    for (int r : d) rd.roles.push_back(roles[static_cast<std::size_t>(r)]);
    o.role_disjointness.push_back(rd);
  }
  return o;
}

std::size_t NormalFormOntology::axiom_count() const {
  return top_axioms.size() + conj_axioms.size() + exists_rhs.size() + exists_lhs.size() +
         role_inclusions.size() + disjoint_roles.size();
}

namespace {

class Normalizer {
 public:
  Normalizer(NormalFormOntology& nf, std::set<Name> taken) : nf_(nf), taken_(std::move(taken)) {}

  void inclusion(const Concept& lhs, const Concept& rhs) {
    switch (rhs.kind) {
      case Concept::Kind::Top:
        return;
      case Concept::Kind::Name:
        return lhs_into(lhs, nf_.intern_concept(rhs.name));
      case Concept::Kind::Bottom:
        return lhs_into(lhs, bottom());
      default:
        rhs_from(lhs_name(lhs), rhs);
    }
  }

  int bottom() {
    if (nf_.bottom < 0) nf_.bottom = fresh("_bot");
    return nf_.bottom;
  }

 private:
  int fresh(const Name& base) {
    const Name n = fresh_name(base, taken_);
    taken_.insert(n);
    return nf_.intern_concept(n, true);
  }

  int top() {
    if (nf_.top < 0) {
      nf_.top = fresh("_top");
      nf_.top_axioms.push_back(nf_.top);
    }
    return nf_.top;
  }

  int role(const Role& r) { return role_code(nf_.intern_role(r.name), r.inverse); }

  // X with c ⊑ X.
  int lhs_name(const Concept& c) {
    if (c.kind == Concept::Kind::Name) return nf_.intern_concept(c.name);
    if (c.kind == Concept::Kind::Top) return top();
    if (c.kind == Concept::Kind::Bottom) return bottom();
    const int x = fresh("_N" + std::to_string(counter_++));
    lhs_into(c, x);
    return x;
  }

  // c ⊑ b.
  void lhs_into(const Concept& c, int b) {
    switch (c.kind) {
      case Concept::Kind::Top:
        nf_.top_axioms.push_back(b);
        return;
      case Concept::Kind::Bottom:
        return;
      case Concept::Kind::Name:
        if (nf_.intern_concept(c.name) != b) nf_.conj_axioms.push_back({{nf_.intern_concept(c.name)}, b});
        return;
      case Concept::Kind::And: {
        std::vector<int> ids;
        for (const auto& op : c.operands) {
          if (op.kind == Concept::Kind::Top) continue;
          if (op.kind == Concept::Kind::Bottom) return;
          const int id = lhs_name(op);
          if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
        }
        if (ids.empty())
          nf_.top_axioms.push_back(b);
        else
          nf_.conj_axioms.push_back({ids, b});
        return;
      }
      case Concept::Kind::Exists:
        nf_.exists_lhs.push_back({role(c.role), lhs_name(c.operands.front()), b});
        return;
    }
  }

  // X with X ⊑ c.
  int rhs_name(const Concept& c) {
    if (c.kind == Concept::Kind::Name) return nf_.intern_concept(c.name);
    if (c.kind == Concept::Kind::Top) return top();
    if (c.kind == Concept::Kind::Bottom) return bottom();
    const int x = fresh("_N" + std::to_string(counter_++));
    rhs_from(x, c);
    return x;
  }

  // a ⊑ c.
  void rhs_from(int a, const Concept& c) {
    switch (c.kind) {
      case Concept::Kind::Top:
        return;
      case Concept::Kind::Bottom:
        nf_.conj_axioms.push_back({{a}, bottom()});
        return;
      case Concept::Kind::Name:
        if (nf_.intern_concept(c.name) != a) nf_.conj_axioms.push_back({{a}, nf_.intern_concept(c.name)});
        return;
      case Concept::Kind::And:
        for (const auto& op : c.operands) rhs_from(a, op);
        return;
      case Concept::Kind::Exists:
        nf_.exists_rhs.push_back({a, role(c.role), rhs_name(c.operands.front())});
        return;
    }
  }

  NormalFormOntology& nf_;
  std::set<Name> taken_;
  int counter_ = 0;
};

NormalFormOntology build(const Ontology& o, const Schema& extra) {
  NormalFormOntology nf;
  nf.source_dialect = o.dialect;
  std::set<Name> taken;
  for (const auto& n : o.concept_names()) {
    nf.intern_concept(n);
    taken.insert(n);
  }
  for (const auto& n : o.role_names()) {
    nf.intern_role(n);
    taken.insert(n);
  }
  for (const auto& [n, arity] : extra.relations()) {
    taken.insert(n);
    if (arity == 1) nf.intern_concept(n);
    if (arity == 2) nf.intern_role(n);
  }
  Normalizer norm(nf, taken);
  for (const auto& ci : o.concept_inclusions) norm.inclusion(ci.lhs, ci.rhs);
  for (const auto& ri : o.role_inclusions)
    nf.role_inclusions.push_back({role_code(nf.intern_role(ri.lhs.name), ri.lhs.inverse),
                                  role_code(nf.intern_role(ri.rhs.name), ri.rhs.inverse)});
  for (const auto& d : o.role_disjointness) {
    std::vector<int> ids;
    for (const auto& r : d.roles) ids.push_back(nf.intern_role(r));
    nf.disjoint_roles.push_back(ids);
  }
  if (!nf.disjoint_roles.empty()) norm.bottom();
  return nf;
}

}  // namespace

NormalFormOntology normalize(const Ontology& o) {
  if (o.dialect == Dialect::DLLiteRHorn)
    throw Error(Error::Kind::Argument, "normalize: DL-Lite ontologies are handled natively");
  return build(o, {});
}

NormalFormOntology normalize_any(const Ontology& o, const Schema& extra) { return build(o, extra); }

// ---------------------------------------------------------------------------

namespace {

struct KindKey {
  int role;
  int filler;
  Bits parent;
  bool operator==(const KindKey& o) const {
    return role == o.role && filler == o.filler && parent == o.parent;
  }
};

struct KindKeyHash {
  std::size_t operator()(const KindKey& k) const {
    return (k.parent.hash() * 31U + static_cast<std::size_t>(k.role)) * 131U + static_cast<std::size_t>(k.filler);
  }
};

using Edges = std::vector<std::vector<std::pair<int, int>>>;  // per element: (role code, element)

}  // namespace

struct Reasoner::Impl {
  NormalFormOntology nf;
  std::size_t nc = 0;
  std::size_t ncodes = 0;
  std::vector<std::vector<char>> sup;  // sup[r][s]: r ⊑ s entailed
  std::vector<std::vector<std::size_t>> rhs_by_lhs;
  std::vector<std::vector<int>> disjoint_codes;

  mutable std::shared_mutex cache_mu;
  mutable std::unordered_map<KindKey, Bits, KindKeyHash> kinds;
  mutable std::mutex sub_mu;
  mutable std::map<Bits, Bits> sub_memo;

  explicit Impl(NormalFormOntology n) : nf(std::move(n)) {
    nc = nf.concepts.size();
    ncodes = 2 * nf.roles.size();
    sup.assign(ncodes, std::vector<char>(ncodes, 0));
    std::vector<std::vector<int>> up(ncodes);
    for (const auto& ri : nf.role_inclusions) {
      up[static_cast<std::size_t>(ri.sub)].push_back(ri.sup);
      up[static_cast<std::size_t>(inverse_code(ri.sub))].push_back(inverse_code(ri.sup));
    }
    for (std::size_t r = 0; r < ncodes; ++r) {
      std::vector<int> stack{static_cast<int>(r)};
      sup[r][r] = 1;
      while (!stack.empty()) {
        const int x = stack.back();
        stack.pop_back();
        for (int y : up[static_cast<std::size_t>(x)])
          if (!sup[r][static_cast<std::size_t>(y)]) {
            sup[r][static_cast<std::size_t>(y)] = 1;
            stack.push_back(y);
          }
      }
    }
    rhs_by_lhs.resize(nc);
    for (std::size_t i = 0; i < nf.exists_rhs.size(); ++i)
      rhs_by_lhs[static_cast<std::size_t>(nf.exists_rhs[i].lhs)].push_back(i);
    for (const auto& d : nf.disjoint_roles) {
      std::vector<int> codes;
      for (int r : d) codes.push_back(role_code(r, false));
      disjoint_codes.push_back(codes);
    }
  }

  bool entails(int r, int s) const { return sup[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)] != 0; }

  Bits empty_type() const { return Bits(nc); }

  void close(Bits& x) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int a : nf.top_axioms) changed |= x.set(static_cast<std::size_t>(a));
      for (const auto& c : nf.conj_axioms) {
        if (x.test(static_cast<std::size_t>(c.rhs))) continue;
        bool all = true;
        for (int a : c.lhs) all = all && x.test(static_cast<std::size_t>(a));
        if (all) changed |= x.set(static_cast<std::size_t>(c.rhs));
      }
    }
  }

  // True iff a link carrying every role in `roles` (the closure of one or more
  // asserted codes) violates some disjointness axiom, in either direction.
  bool violates(const std::vector<char>& roles) const {
    for (const auto& d : disjoint_codes) {
      bool fwd = true, bwd = true;
      for (int c : d) {
        fwd = fwd && roles[static_cast<std::size_t>(c)];
        bwd = bwd && roles[static_cast<std::size_t>(inverse_code(c))];
      }
      if (fwd || bwd) return true;
    }
    return false;
  }

  // Anonymous children demanded by a type, deduplicated by (role, filler).
  std::vector<std::pair<int, int>> children(const Bits& x) const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t a : x.members())
      for (std::size_t i : rhs_by_lhs[a]) {
        const auto& e = nf.exists_rhs[i];
        std::pair<int, int> k{e.role, e.filler};
        if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
      }
    return out;
  }

  // Initial label of a child reached via `role` with filler, below `parent`.
  Bits child_seed(int role, int filler, const Bits& parent) const {
    Bits x = empty_type();
    x.set(static_cast<std::size_t>(filler));
    const int back = inverse_code(role);
    for (const auto& e : nf.exists_lhs)
      if (entails(back, e.role) && parent.test(static_cast<std::size_t>(e.filler)))
        x.set(static_cast<std::size_t>(e.rhs));
    if (nf.bottom >= 0 && !disjoint_codes.empty() && violates(sup[static_cast<std::size_t>(role)]))
      x.set(static_cast<std::size_t>(nf.bottom));
    close(x);
    return x;
  }

  // Concepts a child (role, label y) contributes to its parent.
  void lift(int role, const Bits& y, Bits& parent) const {
    for (const auto& e : nf.exists_lhs)
      if (entails(role, e.role) && y.test(static_cast<std::size_t>(e.filler)))
        parent.set(static_cast<std::size_t>(e.rhs));
    if (nf.bottom >= 0 && y.test(static_cast<std::size_t>(nf.bottom))) parent.set(static_cast<std::size_t>(nf.bottom));
  }

  std::optional<Bits> cached(const KindKey& k) const {
    std::shared_lock lock(cache_mu);
    auto it = kinds.find(k);
    if (it == kinds.end()) return std::nullopt;
    return it->second;
  }

  struct Run {
    std::vector<Bits> labels;
    bool inconsistent = false;
  };
  Run saturate(std::vector<Bits> asserted, const Edges& edges) const;
  Bits kind_final(int role, int filler, const Bits& parent) const;

  int concept_of(const Name& n) const { return nf.concept_id(n); }
  int role_of(const Name& n) const { return nf.role_id(n); }
};

namespace {

// Least fixpoint over the named elements and the anonymous kinds they reach.
// Kinds are memoized by (role, filler, parent label); entries confirmed in a
// pass without changes are published to the reasoner-wide cache.
class Engine {
 public:
  explicit Engine(const Reasoner::Impl& c) : c_(c) {}

  Bits kind(int role, int filler, const Bits& parent) {
    KindKey key{role, filler, parent};
    if (auto g = c_.cached(key)) return *g;
    auto it = local_.find(key);
    if (it == local_.end()) {
      it = local_.emplace(key, Entry{c_.child_seed(role, filler, parent), -1, false}).first;
      dirty_ = true;
    }
    Entry& e = it->second;
    if (e.in_progress || e.visited == pass_) return e.label;
    e.visited = pass_;
    e.in_progress = true;
    Bits x = e.label;
    while (true) {
      Bits y = x;
      expand(y);
      c_.close(y);
      if (y == x) break;
      x = y;
      e.label = x;
      dirty_ = true;
    }
    e.in_progress = false;
    return x;
  }

  // Adds to y what its anonymous children contribute.
  void expand(Bits& y) {
    const Bits snapshot = y;
    for (const auto& [role, filler] : c_.children(snapshot)) c_.lift(role, kind(role, filler, snapshot), y);
  }

  void begin_pass() {
    ++pass_;
    dirty_ = false;
  }
  bool dirty() const { return dirty_; }

  void commit() {
    std::unique_lock lock(c_.cache_mu);
    for (auto& [k, e] : local_)
      if (e.visited == pass_) c_.kinds.emplace(k, e.label);
  }

 private:
  struct Entry {
    Bits label;
    int visited;
    bool in_progress;
  };
  const Reasoner::Impl& c_;
  std::unordered_map<KindKey, Entry, KindKeyHash> local_;
  int pass_ = 0;
  bool dirty_ = false;
};

}  // namespace

Reasoner::Impl::Run Reasoner::Impl::saturate(std::vector<Bits> asserted, const Edges& edges) const {
  Run run;
  run.labels = std::move(asserted);
  for (auto& l : run.labels) close(l);
  const std::size_t n = run.labels.size();

  if (!disjoint_codes.empty()) {
    for (std::size_t a = 0; a < n; ++a) {
      std::map<int, std::vector<char>> per_target;
      for (const auto& [code, b] : edges[a]) {
        auto& roles = per_target.try_emplace(b, ncodes, 0).first->second;
        for (std::size_t s = 0; s < ncodes; ++s)
          if (sup[static_cast<std::size_t>(code)][s]) roles[s] = 1;
      }
      for (const auto& [b, roles] : per_target)
        if (violates(roles)) run.inconsistent = true;
    }
  }

  Engine eng(*this);
  bool changed = true;
  while (changed || eng.dirty()) {
    eng.begin_pass();
    changed = false;
    for (std::size_t a = 0; a < n; ++a) {
      Bits y = run.labels[a];
      for (const auto& [code, b] : edges[a])
        for (const auto& e : nf.exists_lhs)
          if (entails(code, e.role) && run.labels[static_cast<std::size_t>(b)].test(static_cast<std::size_t>(e.filler)))
            y.set(static_cast<std::size_t>(e.rhs));
      eng.expand(y);
      close(y);
      if (y != run.labels[a]) {
        run.labels[a] = std::move(y);
        changed = true;
      }
    }
  }
  eng.commit();
  if (nf.bottom >= 0)
    for (const auto& l : run.labels)
      if (l.test(static_cast<std::size_t>(nf.bottom))) run.inconsistent = true;
  return run;
}

Bits Reasoner::Impl::kind_final(int role, int filler, const Bits& parent) const {
  KindKey key{role, filler, parent};
  if (auto g = cached(key)) return *g;
  Engine eng(*this);
  Bits out;
  bool first = true;
  while (first || eng.dirty()) {
    first = false;
    eng.begin_pass();
    out = eng.kind(role, filler, parent);
  }
  eng.commit();
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct Indexed {
  std::vector<Name> names;
  std::map<Name, int> ids;
  std::vector<Bits> asserted;
  Edges edges;
};

Indexed index_abox(const Reasoner::Impl& c, const ABox& a) {
  Indexed ix;
  for (const auto& n : a.adom()) {
    ix.ids.emplace(n, static_cast<int>(ix.names.size()));
    ix.names.push_back(n);
  }
  ix.asserted.assign(ix.names.size(), c.empty_type());
  ix.edges.resize(ix.names.size());
  for (const auto& f : a.facts) {
    if (f.args.size() == 1) {
      const int id = c.concept_of(f.relation);
      if (id < 0) throw Error(Error::Kind::Argument, "concept not in reasoner signature: " + f.relation);
      ix.asserted[static_cast<std::size_t>(ix.ids[f.args[0]])].set(static_cast<std::size_t>(id));
    } else if (f.args.size() == 2) {
      const int id = c.role_of(f.relation);
      if (id < 0) throw Error(Error::Kind::Argument, "role not in reasoner signature: " + f.relation);
      const int x = ix.ids[f.args[0]], y = ix.ids[f.args[1]];
      ix.edges[static_cast<std::size_t>(x)].emplace_back(role_code(id, false), y);
      ix.edges[static_cast<std::size_t>(y)].emplace_back(role_code(id, true), x);
    } else {
      throw Error(Error::Kind::Argument, "ABox fact of arity " + std::to_string(f.args.size()) + ": " + f.relation);
    }
  }
  return ix;
}

void emit_role_facts(const Reasoner::Impl& c, int code, const Name& from, const Name& to, std::set<Fact>& out) {
  for (std::size_t s = 0; s < c.ncodes; ++s) {
    if (!c.sup[static_cast<std::size_t>(code)][s]) continue;
    const Name& r = c.nf.roles[s / 2];
    if (s % 2 == 0)
      out.insert(Fact{r, {from, to}});
    else
      out.insert(Fact{r, {to, from}});
  }
}

void emit_concept_facts(const Reasoner::Impl& c, const Bits& label, const Name& e, std::set<Fact>& out) {
  for (std::size_t a : label.members())
    if (!c.nf.internal[a]) out.insert(Fact{c.nf.concepts[a], {e}});
}

// Lazily expanded universal model used for CQ matching.
class LazyModel {
 public:
  LazyModel(const Reasoner::Impl& c, const Indexed& ix, const std::vector<Bits>& labels) : c_(c) {
    for (std::size_t i = 0; i < labels.size(); ++i) elems_.push_back(Elem{labels[i], ix.edges[i], false, true});
    named_ = elems_.size();
  }

  std::size_t named() const { return named_; }
  const Bits& label(int e) const { return elems_[static_cast<std::size_t>(e)].label; }
  bool is_named(int e) const { return elems_[static_cast<std::size_t>(e)].named; }

  const std::vector<std::pair<int, int>>& neighbours(int e) {
    if (!elems_[static_cast<std::size_t>(e)].expanded) {
      elems_[static_cast<std::size_t>(e)].expanded = true;
      const Bits lab = elems_[static_cast<std::size_t>(e)].label;
      for (const auto& [role, filler] : c_.children(lab)) {
        const int child = add(c_.kind_final(role, filler, lab));
        elems_[static_cast<std::size_t>(child)].nbr.emplace_back(inverse_code(role), e);
        elems_[static_cast<std::size_t>(e)].nbr.emplace_back(role, child);
      }
    }
    return elems_[static_cast<std::size_t>(e)].nbr;
  }

  // Parentless representatives of every anonymous type reachable from the
  // named part.
  const std::vector<int>& representatives() {
    if (!reps_done_) {
      reps_done_ = true;
      std::set<Bits> seen;
      std::deque<Bits> queue;
      for (std::size_t i = 0; i < named_; ++i) queue.push_back(elems_[i].label);
      while (!queue.empty()) {
        const Bits x = queue.front();
        queue.pop_front();
        for (const auto& [role, filler] : c_.children(x)) {
          Bits y = c_.kind_final(role, filler, x);
          if (seen.insert(y).second) {
            reps_.push_back(add(y));
            queue.push_back(std::move(y));
          }
        }
      }
    }
    return reps_;
  }

 private:
  struct Elem {
    Bits label;
    std::vector<std::pair<int, int>> nbr;
    bool expanded;
    bool named;
  };
  int add(Bits label) {
    elems_.push_back(Elem{std::move(label), {}, false, false});
    return static_cast<int>(elems_.size()) - 1;
  }

  const Reasoner::Impl& c_;
  std::vector<Elem> elems_;
  std::size_t named_ = 0;
  std::vector<int> reps_;
  bool reps_done_ = false;
};

struct QAtom {
  int rel = -1;  // concept id or role id; -1 if unsatisfiable
  int x = -1;
  int y = -1;  // -1 for concept atoms
};

struct Component {
  std::vector<int> vars;
  std::vector<QAtom> atoms;
  std::vector<int> answer_vars;  // subset of vars that are answer variables
};

struct CompiledQuery {
  int num_vars = 0;
  std::vector<int> answer;  // per answer position: variable index
  std::vector<Component> comps;
  std::vector<char> is_answer;
  bool unsatisfiable = false;
};

CompiledQuery compile_cq(const Reasoner::Impl& c, const CQ& q) {
  CompiledQuery cq;
  const QuotientCQ quo = quotient(q);
  std::map<Name, int> vid;
  for (const auto& v : quo.variables) vid.emplace(v, static_cast<int>(vid.size()));
  cq.num_vars = static_cast<int>(vid.size());
  cq.is_answer.assign(vid.size(), 0);
  for (const auto& a : quo.answer) {
    cq.answer.push_back(vid.at(a));
    cq.is_answer[static_cast<std::size_t>(vid.at(a))] = 1;
  }
  std::vector<QAtom> atoms;
  for (const auto& a : quo.atoms) {
    QAtom qa;
    if (a.args.size() == 1) {
      qa.rel = c.concept_of(a.relation);
      qa.x = vid.at(a.args[0]);
    } else if (a.args.size() == 2) {
      qa.rel = c.role_of(a.relation);
      qa.x = vid.at(a.args[0]);
      qa.y = vid.at(a.args[1]);
    }
    if (qa.rel < 0) cq.unsatisfiable = true;
    atoms.push_back(qa);
  }
  // Connected components over variables linked by role atoms.
  std::vector<int> parent(vid.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int v) {
    return parent[static_cast<std::size_t>(v)] == v ? v : parent[static_cast<std::size_t>(v)] = find(parent[static_cast<std::size_t>(v)]);
  };
  for (const auto& a : atoms)
    if (a.y >= 0) parent[static_cast<std::size_t>(find(a.x))] = find(a.y);
  std::set<int> in_atoms;
  for (const auto& a : atoms) {
    in_atoms.insert(a.x);
    if (a.y >= 0) in_atoms.insert(a.y);
  }
  std::map<int, std::size_t> comp_of;
  for (int v : in_atoms) {
    auto [it, inserted] = comp_of.emplace(find(v), cq.comps.size());
    if (inserted) cq.comps.emplace_back();
    auto& comp = cq.comps[it->second];
    comp.vars.push_back(v);
    if (cq.is_answer[static_cast<std::size_t>(v)]) comp.answer_vars.push_back(v);
  }
  for (const auto& a : atoms) cq.comps[comp_of.at(find(a.x))].atoms.push_back(a);
  return cq;
}

// Enumerates matches of one connected component into the lazy model.
class ComponentMatcher {
 public:
  ComponentMatcher(const Reasoner::Impl& c, LazyModel& m, const Component& comp, const std::vector<char>& is_answer)
      : c_(c), m_(m), comp_(comp), is_answer_(is_answer) {}

  // Calls cb with the assignment for every match extending `asg`; stops when cb
  // returns false. Returns false iff stopped.
  bool run(std::vector<int>& asg, const std::function<bool(const std::vector<int>&)>& cb) {
    cb_ = &cb;
    done_.assign(comp_.atoms.size(), 0);
    return step(asg, comp_.atoms.size());
  }

 private:
  bool var_ok(int v, int e) const { return !is_answer_[static_cast<std::size_t>(v)] || m_.is_named(e); }

  bool role_holds(int code, int from, int to) {
    for (const auto& [k, b] : m_.neighbours(from))
      if (b == to && c_.entails(k, code)) return true;
    return false;
  }

  bool step(std::vector<int>& asg, std::size_t remaining) {
    if (remaining == 0) return (*cb_)(asg);
    // Prefer fully bound atoms, then atoms with one bound variable.
    int pick = -1;
    int best = -1;
    for (std::size_t i = 0; i < comp_.atoms.size(); ++i) {
      if (done_[i]) continue;
      const QAtom& a = comp_.atoms[i];
      const bool bx = asg[static_cast<std::size_t>(a.x)] >= 0;
      const bool by = a.y < 0 || asg[static_cast<std::size_t>(a.y)] >= 0;
      const int score = (bx && by) ? 2 : (bx || (a.y >= 0 && by)) ? 1 : 0;
      if (score > best) {
        best = score;
        pick = static_cast<int>(i);
      }
    }
    const QAtom& a = comp_.atoms[static_cast<std::size_t>(pick)];
    done_[static_cast<std::size_t>(pick)] = 1;
    bool keep = true;
    int& ex = asg[static_cast<std::size_t>(a.x)];
    if (a.y < 0) {
      if (ex < 0) throw Error(Error::Kind::Internal, "unanchored concept atom");
      if (m_.label(ex).test(static_cast<std::size_t>(a.rel))) keep = step(asg, remaining - 1);
    } else {
      int& ey = asg[static_cast<std::size_t>(a.y)];
      const int code = role_code(a.rel, false);
      if (ex >= 0 && ey >= 0) {
        if (role_holds(code, ex, ey)) keep = step(asg, remaining - 1);
      } else if (ex >= 0 || ey >= 0) {
        const bool forward = ex >= 0;
        const int from = forward ? ex : ey;
        const int want = forward ? code : inverse_code(code);
        const int var = forward ? a.y : a.x;
        const auto nbrs = m_.neighbours(from);  // copy: expansion may grow the vector
        std::set<int> tried;
        for (const auto& [k, b] : nbrs) {
          if (!c_.entails(k, want) || !var_ok(var, b) || !tried.insert(b).second) continue;
          asg[static_cast<std::size_t>(var)] = b;
          keep = step(asg, remaining - 1);
          asg[static_cast<std::size_t>(var)] = -1;
          if (!keep) break;
        }
      } else {
        throw Error(Error::Kind::Internal, "unanchored role atom");
      }
    }
    done_[static_cast<std::size_t>(pick)] = 0;
    return keep;
  }

  const Reasoner::Impl& c_;
  LazyModel& m_;
  const Component& comp_;
  const std::vector<char>& is_answer_;
  const std::function<bool(const std::vector<int>&)>* cb_ = nullptr;
  std::vector<char> done_;
};

// True iff the component has a match extending `asg` (answer variables of the
// component already bound, or none present).
bool component_exists(const Reasoner::Impl& c, LazyModel& m, const Component& comp,
                      const std::vector<char>& is_answer, std::vector<int> asg) {
  ComponentMatcher cm(c, m, comp, is_answer);
  auto stop = [](const std::vector<int>&) { return false; };
  bool anchored = false;
  for (int v : comp.vars) anchored = anchored || asg[static_cast<std::size_t>(v)] >= 0;
  if (anchored) return !cm.run(asg, stop);
  // Anchor each variable in turn at a named element or at a type
  // representative; a match inside one anonymous tree moves to the
  // representative of its topmost element's type.
  std::vector<int> anchors;
  for (std::size_t e = 0; e < m.named(); ++e) anchors.push_back(static_cast<int>(e));
  const auto& reps = m.representatives();
  anchors.insert(anchors.end(), reps.begin(), reps.end());
  for (int v : comp.vars)
    for (int e : anchors) {
      asg[static_cast<std::size_t>(v)] = e;
      if (!cm.run(asg, stop)) return true;
      asg[static_cast<std::size_t>(v)] = -1;
    }
  return false;
}

}  // namespace

// ---------------------------------------------------------------------------

Reasoner::Reasoner(const Ontology& o, const Schema& extra)
    : impl_(std::make_unique<Impl>(normalize_any(o, extra))) {}

Reasoner::Reasoner(NormalFormOntology nf) : impl_(std::make_unique<Impl>(std::move(nf))) {}

Reasoner::~Reasoner() = default;

const NormalFormOntology& Reasoner::ontology() const { return impl_->nf; }

bool Reasoner::role_entailed(const Role& r, const Role& s) const {
  const int a = impl_->role_of(r.name), b = impl_->role_of(s.name);
  if (a < 0 || b < 0) return r == s;
  return impl_->entails(role_code(a, r.inverse), role_code(b, s.inverse));
}

Bits Reasoner::derived_type(const Bits& premise) const {
  {
    std::lock_guard lock(impl_->sub_mu);
    auto it = impl_->sub_memo.find(premise);
    if (it != impl_->sub_memo.end()) return it->second;
  }
  Impl::Run run = impl_->saturate({premise}, Edges(1));
  Bits label = run.labels.front();
  if (run.inconsistent && impl_->nf.bottom >= 0) label.set(static_cast<std::size_t>(impl_->nf.bottom));
  std::lock_guard lock(impl_->sub_mu);
  impl_->sub_memo.emplace(premise, label);
  return label;
}

bool Reasoner::subsumes(const std::set<Name>& premise, const Name& a) const {
  if (premise.count(a)) return true;
  const int target = impl_->concept_of(a);
  if (target < 0) return false;
  Bits p = impl_->empty_type();
  for (const auto& n : premise)
    if (int id = impl_->concept_of(n); id >= 0) p.set(static_cast<std::size_t>(id));
  const Bits label = derived_type(p);
  if (impl_->nf.bottom >= 0 && label.test(static_cast<std::size_t>(impl_->nf.bottom))) return true;
  return label.test(static_cast<std::size_t>(target));
}

SaturatedABox Reasoner::saturate_abox(const ABox& a) const {
  const Indexed ix = index_abox(*impl_, a);
  const Impl::Run run = impl_->saturate(ix.asserted, ix.edges);
  SaturatedABox out;
  out.inconsistent = run.inconsistent;
  if (run.inconsistent) return out;
  for (std::size_t i = 0; i < ix.names.size(); ++i) {
    emit_concept_facts(*impl_, run.labels[i], ix.names[i], out.facts.facts);
    for (const auto& [code, b] : ix.edges[i])
      emit_role_facts(*impl_, code, ix.names[i], ix.names[static_cast<std::size_t>(b)], out.facts.facts);
  }
  return out;
}

bool Reasoner::consistent(const ABox& a) const {
  const Indexed ix = index_abox(*impl_, a);
  return !impl_->saturate(ix.asserted, ix.edges).inconsistent;
}

UniversalModelRep Reasoner::model_rep(const ABox& a) const {
  UniversalModelRep rep;
  rep.abox_part = saturate_abox(a);
  if (rep.abox_part.inconsistent) return rep;
  const Indexed ix = index_abox(*impl_, a);
  const Impl::Run run = impl_->saturate(ix.asserted, ix.edges);
  std::map<Bits, int> type_id;
  std::deque<int> queue;
  auto intern = [&](const Bits& t) {
    auto [it, inserted] = type_id.emplace(t, static_cast<int>(rep.types.size()));
    if (inserted) {
      rep.types.push_back(t);
      rep.anon_graph.emplace_back();
      queue.push_back(it->second);
    }
    return it->second;
  };
  for (std::size_t i = 0; i < ix.names.size(); ++i) {
    auto& att = rep.attachment[ix.names[i]];
    for (const auto& [role, filler] : impl_->children(run.labels[i]))
      att.push_back({role, intern(impl_->kind_final(role, filler, run.labels[i]))});
  }
  while (!queue.empty()) {
    const int t = queue.front();
    queue.pop_front();
    const Bits x = rep.types[static_cast<std::size_t>(t)];
    for (const auto& [role, filler] : impl_->children(x)) {
      const int u = intern(impl_->kind_final(role, filler, x));
      rep.anon_graph[static_cast<std::size_t>(t)].push_back({role, u});
    }
  }
  return rep;
}

std::size_t Reasoner::reachable_types(const ABox& a) const { return model_rep(a).types.size(); }

ABox Reasoner::universal_model(const ABox& a, std::size_t depth) const {
  const Indexed ix = index_abox(*impl_, a);
  const Impl::Run run = impl_->saturate(ix.asserted, ix.edges);
  if (run.inconsistent) throw Error(Error::Kind::Argument, "universal_model: inconsistent ABox");
  ABox out;
  for (std::size_t i = 0; i < ix.names.size(); ++i) {
    emit_concept_facts(*impl_, run.labels[i], ix.names[i], out.facts);
    for (const auto& [code, b] : ix.edges[i])
      emit_role_facts(*impl_, code, ix.names[i], ix.names[static_cast<std::size_t>(b)], out.facts);
  }
  std::set<Name> taken(ix.names.begin(), ix.names.end());
  std::size_t counter = 0;
  auto fresh = [&]() {
    Name n;
    do n = "_n" + std::to_string(++counter);
    while (taken.count(n));
    return n;
  };
  struct Item {
    Name name;
    Bits label;
    std::size_t depth;
  };
  std::deque<Item> queue;
  for (std::size_t i = 0; i < ix.names.size(); ++i) queue.push_back({ix.names[i], run.labels[i], 0});
  while (!queue.empty()) {
    Item it = std::move(queue.front());
    queue.pop_front();
    if (it.depth >= depth) continue;
    for (const auto& [role, filler] : impl_->children(it.label)) {
      Bits y = impl_->kind_final(role, filler, it.label);
      const Name n = fresh();
      emit_concept_facts(*impl_, y, n, out.facts);
      emit_role_facts(*impl_, role, it.name, n, out.facts);
      queue.push_back({n, std::move(y), it.depth + 1});
    }
  }
  return out;
}

namespace {

std::vector<Tuple> all_tuples(const std::vector<Name>& dom, std::size_t arity) {
  std::vector<Tuple> out;
  if (arity > 0 && dom.empty()) return out;
  std::vector<std::size_t> idx(arity, 0);
  while (true) {
    Tuple t;
    for (auto i : idx) t.push_back(dom[i]);
    out.push_back(std::move(t));
    std::size_t k = 0;
    while (k < arity && ++idx[k] == dom.size()) idx[k++] = 0;
    if (k == arity) break;
  }
  return out;
}

}  // namespace

bool Reasoner::is_certain(const CQ& q, const ABox& a, const Tuple& tuple) const {
  if (tuple.size() != q.arity()) return false;
  const Indexed ix = index_abox(*impl_, a);
  for (const auto& n : tuple)
    if (!ix.ids.count(n)) return false;
  const Impl::Run run = impl_->saturate(ix.asserted, ix.edges);
  if (run.inconsistent) return true;
  const CompiledQuery cq = compile_cq(*impl_, q);
  if (cq.unsatisfiable) return false;
  std::vector<int> asg(static_cast<std::size_t>(cq.num_vars), -1);
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    int& slot = asg[static_cast<std::size_t>(cq.answer[i])];
    const int e = ix.ids.at(tuple[i]);
    if (slot >= 0 && slot != e) return false;
    slot = e;
  }
  // Quantified variables outside atoms need a nonempty model.
  if (ix.names.empty() && cq.num_vars > 0) {
    std::size_t in_atoms = 0;
    for (const auto& comp : cq.comps) in_atoms += comp.vars.size();
    if (in_atoms < static_cast<std::size_t>(cq.num_vars)) return false;
  }
  LazyModel m(*impl_, ix, run.labels);
  for (const auto& comp : cq.comps)
    if (!component_exists(*impl_, m, comp, cq.is_answer, asg)) return false;
  return true;
}

bool Reasoner::is_certain(const UCQ& q, const ABox& a, const Tuple& tuple) const {
  if (tuple.size() != q.arity) return false;
  for (const auto& d : q.disjuncts)
    if (is_certain(d, a, tuple)) return true;
  if (q.disjuncts.empty()) {
    // Only inconsistency makes a tuple certain for the empty UCQ.
    const std::set<Name> dom = a.adom();
    for (const auto& n : tuple)
      if (!dom.count(n)) return false;
    return !consistent(a);
  }
  return false;
}

std::set<Tuple> Reasoner::certain_answers(const UCQ& q, const ABox& a) const {
  const Indexed ix = index_abox(*impl_, a);
  const Impl::Run run = impl_->saturate(ix.asserted, ix.edges);
  std::set<Tuple> out;
  if (run.inconsistent) {
    for (auto& t : all_tuples(ix.names, q.arity)) out.insert(std::move(t));
    return out;
  }
  LazyModel m(*impl_, ix, run.labels);
  for (const auto& d : q.disjuncts) {
    const CompiledQuery cq = compile_cq(*impl_, d);
    if (cq.unsatisfiable) continue;
    std::size_t in_atoms = 0;
    for (const auto& comp : cq.comps) in_atoms += comp.vars.size();
    if (ix.names.empty() && in_atoms < static_cast<std::size_t>(cq.num_vars)) continue;

    // Per component, the projections of its matches onto its answer variables.
    std::vector<std::set<std::vector<int>>> projections;
    bool dead = false;
    for (const auto& comp : cq.comps) {
      std::set<std::vector<int>> proj;
      std::vector<int> asg(static_cast<std::size_t>(cq.num_vars), -1);
      if (comp.answer_vars.empty()) {
        if (component_exists(*impl_, m, comp, cq.is_answer, asg)) proj.insert(std::vector<int>{});
      } else {
        ComponentMatcher cm(*impl_, m, comp, cq.is_answer);
        const int anchor = comp.answer_vars.front();
        for (std::size_t e = 0; e < m.named(); ++e) {
          asg[static_cast<std::size_t>(anchor)] = static_cast<int>(e);
          cm.run(asg, [&](const std::vector<int>& full) {
            std::vector<int> p;
            for (int v : comp.answer_vars) p.push_back(full[static_cast<std::size_t>(v)]);
            proj.insert(std::move(p));
            return true;
          });
        }
      }
      if (proj.empty()) {
        dead = true;
        break;
      }
      projections.push_back(std::move(proj));
    }
    if (dead) continue;

    // Combine: free answer variables range over adom(A).
    std::vector<std::vector<int>> partial{std::vector<int>(static_cast<std::size_t>(cq.num_vars), -1)};
    for (std::size_t ci = 0; ci < cq.comps.size(); ++ci) {
      std::vector<std::vector<int>> next;
      for (const auto& base : partial)
        for (const auto& p : projections[ci]) {
          auto asg = base;
          for (std::size_t k = 0; k < p.size(); ++k)
            asg[static_cast<std::size_t>(cq.comps[ci].answer_vars[k])] = p[k];
          next.push_back(std::move(asg));
        }
      partial = std::move(next);
    }
    std::vector<int> free_vars;
    for (int v : cq.answer)
      if (std::find(free_vars.begin(), free_vars.end(), v) == free_vars.end() &&
          partial.front()[static_cast<std::size_t>(v)] < 0)
        free_vars.push_back(v);
    for (auto asg : partial) {
      std::vector<Name> dom = ix.names;
      for (const auto& choice : all_tuples(dom, free_vars.size())) {
        for (std::size_t k = 0; k < free_vars.size(); ++k)
          asg[static_cast<std::size_t>(free_vars[k])] = ix.ids.at(choice[k]);
        Tuple t;
        for (int v : cq.answer) t.push_back(ix.names[static_cast<std::size_t>(asg[static_cast<std::size_t>(v)])]);
        out.insert(std::move(t));
      }
    }
  }
  return out;
}

std::set<Tuple> certain_answers(const Ontology& o, const Schema& schema, const UCQ& q, const ABox& a) {
  Schema extra = schema;
  for (const auto& n : relation_names(q))
    for (const auto& d : q.disjuncts)
      for (const auto& at : d.atoms)
        if (at.relation == n) extra.add(n, at.args.size());
  for (const auto& f : a.facts) extra.add(f.relation, f.args.size());
  return Reasoner(o, extra).certain_answers(q, a);
}

}  // namespace obdax
