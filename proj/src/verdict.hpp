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
#include <optional>
#include <string>
#include <vector>

#include "model.hpp"

namespace obdax {

enum class Outcome { Yes, No, Unknown };

struct Witness {
  Database database;
  Tuple tuple;
  std::vector<Tuple> source_answers;
  std::vector<Tuple> certain_answers;
};

struct BoundsReport {
  std::string strategy;
  std::string dialect;
  bool rooted = false;
  bool exhaustive = false;
  bool consistent_only = false;
  std::uint64_t frontier_depth = 0;
  std::uint64_t depth_reached = 0;
  std::uint64_t max_abox = 0;
  std::uint64_t candidates = 0;
  std::uint64_t choices = 0;
  std::string reason;
};

struct Verdict {
  Outcome outcome = Outcome::Unknown;
  std::optional<UCQ> realization;
  std::optional<Witness> witness;
  std::optional<BoundsReport> bounds;
};

const char* outcome_name(Outcome o);

}  // namespace obdax
