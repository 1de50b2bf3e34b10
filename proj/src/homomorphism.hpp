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

#include <map>
#include <optional>
#include <set>

#include "model.hpp"

namespace obdax {

struct Homomorphism {
  std::map<Name, Name> assignment;  // defined on every variable of the source CQ
};

// Homomorphism from `from` to `to`: atoms map to atoms of `to` and equality
// atoms to pairs in the equality closure of `to`, both modulo that closure;
// answer variables map positionally.
std::optional<Homomorphism> find_cq_hom(const CQ& from, const CQ& to);

// q1 is contained in q2 iff q2 maps homomorphically into q1.
bool cq_contained(const CQ& q1, const CQ& q2);
bool ucq_contained(const UCQ& u1, const UCQ& u2);
bool ucq_equivalent(const UCQ& u1, const UCQ& u2);

std::set<Tuple> evaluate(const UCQ& u, const Database& d);
std::set<Tuple> evaluate(const CQ& q, const Database& d);

// Whether `tuple` is an answer of q (resp. u) on d, without enumerating all answers.
bool is_answer(const CQ& q, const Database& d, const Tuple& tuple);
bool is_answer(const UCQ& u, const Database& d, const Tuple& tuple);

}  // namespace obdax
