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

#include <string>
#include <string_view>

#include "model.hpp"
#include "verdict.hpp"

namespace obdax {

// Text formats:
//
//   schema { Man/2 Emp/3 }
//   roles { r s }                        optional, declares role names
//   mappings { Man(x,z), Emp(y,z,u) -> manages(x,y) ; }
//   ontology el { Manager [= Employee ; Manager [= exists manages.Secretary ; }
//
//   q(x) :- Man(x,y), x = y.            one rule per disjunct
//   facts { Man(m,d) Emp(e,d,o) }
//
// All parse errors are thrown as Error with located diagnostics.
ObdaSpec parse_spec(std::string_view text);
UCQ parse_query(std::string_view text, const Schema& schema);
// Parses without schema checks; arities are taken from use.
UCQ parse_query_unchecked(std::string_view text);
Database parse_database(std::string_view text);

std::string render(const ObdaSpec& spec);
std::string render(const UCQ& q, const std::string& head = "q");
std::string render(const CQ& q, const std::string& head = "q");
std::string render(const Database& d);
std::string render_fact(const Fact& f);
std::string render(const Concept& c);
std::string render_json(const Verdict& v);
std::string render_text(const Verdict& v);

}  // namespace obdax
