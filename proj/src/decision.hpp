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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "model.hpp"
#include "verdict.hpp"

namespace obdax {

// How candidate ABoxes for the backward inclusion are produced.
//   Supports:  support-directed generation with iterative deepening (default)
//   Enumerate: pseudo-tree ABoxes with frontier closure
//   Rewriting: disjuncts of the canonical DL-Lite rewriting
enum class Strategy { Supports, Enumerate, Rewriting };

const char* strategy_name(Strategy s);
std::optional<Strategy> parse_strategy(const std::string& s);

struct DecisionBudget {
  Strategy strategy = Strategy::Supports;
  // Supports: derivation depth; Enumerate: frontier depth. Default |q_s|.
  std::optional<std::size_t> max_depth;
  // Enumerate: ABox size; Rewriting: disjunct size bound.
  std::optional<std::size_t> max_abox;
  std::size_t max_candidates = 200000;
  std::uint64_t max_choices = 2000000;  // M⁻ choice-search nodes per candidate
  bool exhaustive = false;              // treat the budget as covering all candidates
  bool consistent_only = false;         // quantify only over D with M(D) consistent
  unsigned jobs = 1;
};

enum class Inclusion { Holds, Fails, Unknown };

struct BackwardOutcome {
  Inclusion status = Inclusion::Unknown;
  std::optional<Witness> witness;
  BoundsReport bounds;
};

// q_s ⊆ M⁻(q_r) for a rewriting q_r of (O, sch(M), q_t). Exact.
bool forward_inclusion(const ObdaSpec& spec, const UCQ& q_s, const UCQ& q_t,
                       bool consistent_only = false);

// M⁻(q_r) ⊆ q_s for a rewriting q_r of (O, sch(M), q_t).
BackwardOutcome backward_inclusion(const ObdaSpec& spec, const UCQ& q_s, const UCQ& q_t,
                                   const DecisionBudget& budget = {});

// Whether q_t is a realization of q_s.
Verdict verify(const ObdaSpec& spec, const UCQ& q_s, const UCQ& q_t, const DecisionBudget& budget = {});

// Whether q_s has a realization; Yes carries M(q_s).
Verdict expressible(const ObdaSpec& spec, const UCQ& q_s, const DecisionBudget& budget = {});

// A witness if ans_{q_s}(D) differs from cert_Q(M(D)) for Q = (O, sch(M), q_t).
// With consistent_only, databases with M(D) inconsistent never differ.
std::optional<Witness> check_database(const ObdaSpec& spec, const UCQ& q_s, const UCQ& q_t,
                                      const Database& d, bool consistent_only = false);

}  // namespace obdax
