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

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "model.hpp"

namespace obdax {

using Mappings = std::vector<GavMapping>;
using Substitution = std::map<Name, Name>;

Database apply_forward_db(const Mappings& m, const Database& d);
// M(q): the equality-quotient of q read as a database, mapped forward, read
// back as a CQ with q's answer variables and equality atoms.
CQ apply_forward_query(const Mappings& m, const CQ& q);
UCQ apply_forward_query(const Mappings& m, const UCQ& q);

// Most general unifier of the mapping head with a fact, if any.
std::optional<Substitution> suitable(const GavMapping& mapping, const Fact& fact);

struct Suitable {
  std::size_t mapping = 0;
  Substitution sigma;
  // Query atoms only: variables the unifier identifies, e.g. x = y when the
  // head r(v,v) meets r(x,y).
  std::vector<Equality> equalities;
};
std::vector<Suitable> suitable_mappings(const Mappings& m, const Fact& fact);
// As suitable_mappings, but the atom's arguments are variables and may be
// identified by the unifier.
std::vector<Suitable> unifiable_mappings(const Mappings& m, const Atom& atom);

// Body of `mapping` under sigma; body-only variables are named by `fresh`,
// called once per distinct variable.
std::vector<Atom> instantiate_body(const GavMapping& mapping, const Substitution& sigma,
                                   const std::function<Name()>& fresh);

// Streams the disjuncts of M⁻(r) one backward choice at a time. Fresh
// constants are _f0, _f1, ... counted across the whole stream and chosen to
// avoid the names already used by r. With `constants`, the terms of r are
// treated as ABox constants that no unifier may identify.
class BackwardChoices {
 public:
  BackwardChoices(const Mappings& m, const CQ& r, bool constants = false);

  // True iff some fact has no suitable mapping; the stream is then empty.
  bool has_dead_fact() const { return dead_; }
  // Number of choices, saturating at UINT64_MAX.
  std::uint64_t count() const;
  std::optional<CQ> next();
  // Mapping index chosen for each fact by the last disjunct returned.
  std::vector<std::size_t> last_choice() const;
  const std::vector<Fact>& facts() const { return facts_; }

 private:
  const Mappings& m_;
  CQ r_;
  std::vector<Fact> facts_;
  std::vector<std::vector<Suitable>> options_;
  std::vector<std::size_t> cursor_;
  std::vector<std::size_t> last_;
  std::set<Name> taken_;
  std::size_t counter_ = 0;
  bool dead_ = false;
  bool exhausted_ = false;
};

struct BackwardResult {
  UCQ query;
  bool dead_fact = false;  // some fact had no suitable mapping
  bool capped = false;     // stopped at the disjunct cap
};

// M⁻(A, ā); cap == 0 means no cap.
BackwardResult apply_backward(const Mappings& m, const ABox& a, const Tuple& tuple,
                              std::size_t cap = 0);
// Query-level M⁻(r); r's answer variables and equality atoms are kept, and
// unifiers may identify variables of r (added as equality atoms).
BackwardResult apply_backward_query(const Mappings& m, const CQ& r, std::size_t cap = 0);
BackwardResult apply_backward_query(const Mappings& m, const UCQ& r, std::size_t cap = 0);

}  // namespace obdax
