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
#include <string>

#include "model.hpp"

namespace obdax {

struct Canonical {
  std::string key;                   // equal iff the inputs are isomorphic
  std::map<Name, Name> renaming;     // constant -> canonical name (c0, c1, ...)
  Database database;                 // the renamed database
  Tuple tuple;                       // the renamed tuple
};

// Canonical labeling of a database with a distinguished tuple, by colour
// refinement and individualization. Isomorphisms must map tuple[i] to the
// other tuple's tuple[i].
Canonical canonical_form(const Database& d, const Tuple& tuple = {});

// Canonical key of a CQ up to variable renaming (via its equality-quotient).
std::string canonical_key(const CQ& q);

}  // namespace obdax
