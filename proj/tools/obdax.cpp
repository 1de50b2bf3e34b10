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


// obdax command-line front end. Links only the C interface.
//
// Exit codes: 0 yes, 1 no, 2 unknown, 3 usage, 4 parse or validation,
// 5 i/o, 6 internal error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "obdax/obdax.h"

namespace {

constexpr int kExitUsage = 3;
constexpr int kExitParse = 4;
constexpr int kExitIo = 5;
constexpr int kExitInternal = 6;

struct Failure {
  int code;
};

int exit_code(obdax_status s) {
  switch (s) {
    case OBDAX_OK: return 0;
    case OBDAX_ERR_PARSE:
    case OBDAX_ERR_VALIDATION: return kExitParse;
    case OBDAX_ERR_ARGUMENT: return kExitUsage;
    case OBDAX_ERR_IO: return kExitIo;
    case OBDAX_ERR_INTERNAL: break;
  }
  return kExitInternal;
}

void check(obdax_status s) {
  if (s == OBDAX_OK) return;
  std::cerr << "obdax: " << obdax_status_name(s) << ": " << obdax_last_error() << "\n";
  throw Failure{exit_code(s)};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Spec = std::unique_ptr<obdax_spec, Deleter<obdax_spec, obdax_spec_free>>;
using Query = std::unique_ptr<obdax_query, Deleter<obdax_query, obdax_query_free>>;
using Db = std::unique_ptr<obdax_database, Deleter<obdax_database, obdax_database_free>>;
using VerdictPtr = std::unique_ptr<obdax_verdict, Deleter<obdax_verdict, obdax_verdict_free>>;

// Takes ownership of a string returned by the library.
std::string take(char* s) {
  std::string out = s ? s : "";
  obdax_string_free(s);
  return out;
}

Spec load_spec(const std::string& path) {
  obdax_spec* s = nullptr;
  check(obdax_spec_load(path.c_str(), &s));
  return Spec(s);
}

Query load_query(const obdax_spec* spec, obdax_query_side side, const std::string& path) {
  obdax_query* q = nullptr;
  check(obdax_query_load(spec, side, path.c_str(), &q));
  return Query(q);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "obdax: cannot read " << path << "\n";
    throw Failure{kExitIo};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "obdax: cannot write " << path << "\n";
    throw Failure{kExitIo};
  }
}

struct Config {
  std::string spec;
  std::string source_query;
  std::string target_query;
  std::string abox;
  std::string input;
  std::string out_prefix;
  std::string side = "target";
  std::string strategy = "supports";
  std::int64_t max_abox = -1;
  std::int64_t max_depth = -1;
  std::int64_t max_domain = -1;
  std::int64_t max_facts = -1;
  std::uint64_t max_candidates = 0;
  std::uint64_t max_choices = 0;
  bool exhaustive = false;
  bool consistent_only = false;
  bool json = false;
  unsigned jobs = 1;
  std::optional<std::uint64_t> seed;
  std::size_t universals = 1;
  std::size_t existentials = 2;
  std::size_t clauses = 3;
  std::string query1;
  std::string query2;
};

obdax_budget budget_of(const Config& c) {
  obdax_budget b;
  obdax_budget_init(&b);
  if (c.strategy == "supports") b.strategy = OBDAX_STRATEGY_SUPPORTS;
  else if (c.strategy == "enumerate") b.strategy = OBDAX_STRATEGY_ENUMERATE;
  else b.strategy = OBDAX_STRATEGY_REWRITING;
  b.max_depth = c.max_depth;
  b.max_abox = c.max_abox;
  if (c.max_candidates) b.max_candidates = c.max_candidates;
  if (c.max_choices) b.max_choices = c.max_choices;
  b.exhaustive = c.exhaustive;
  b.consistent_only = c.consistent_only;
  b.jobs = c.jobs;
  return b;
}

int report(obdax_verdict* raw, bool json) {
  VerdictPtr v(raw);
  char* text = nullptr;
  check(obdax_verdict_render(v.get(), json, &text));
  std::cout << take(text);
  return static_cast<int>(obdax_verdict_outcome(v.get()));
}

int cmd_check(const Config& c) {
  const Spec spec = load_spec(c.spec);
  const Query q_s = load_query(spec.get(), OBDAX_SOURCE, c.source_query);
  const obdax_budget b = budget_of(c);
  obdax_verdict* v = nullptr;
  check(obdax_check(spec.get(), q_s.get(), &b, &v));
  return report(v, c.json);
}

int cmd_verify(const Config& c) {
  const Spec spec = load_spec(c.spec);
  const Query q_s = load_query(spec.get(), OBDAX_SOURCE, c.source_query);
  const Query q_t = load_query(spec.get(), OBDAX_TARGET, c.target_query);
  const obdax_budget b = budget_of(c);
  obdax_verdict* v = nullptr;
  check(obdax_verify(spec.get(), q_s.get(), q_t.get(), &b, &v));
  return report(v, c.json);
}

int cmd_rewrite(const Config& c) {
  const Spec spec = load_spec(c.spec);
  const Query q_t = load_query(spec.get(), OBDAX_TARGET, c.target_query);
  char* text = nullptr;
  check(obdax_rewrite(spec.get(), q_t.get(), c.max_abox, &text));
  std::cout << take(text);
  return 0;
}

int cmd_chase(const Config& c) {
  const Spec spec = load_spec(c.spec);
  obdax_database* raw = nullptr;
  check(obdax_database_load(spec.get(), OBDAX_TARGET, c.abox.c_str(), &raw));
  const Db abox(raw);
  const std::size_t depth = c.max_depth >= 0 ? static_cast<std::size_t>(c.max_depth) : 2;
  int consistent = 0;
  char* text = nullptr;
  check(obdax_chase(spec.get(), abox.get(), depth, &consistent, &text));
  std::cout << take(text);
  return consistent ? 0 : 1;
}

int cmd_containment(const Config& c) {
  const Spec spec = load_spec(c.spec);
  const obdax_query_side side = c.side == "source" ? OBDAX_SOURCE : OBDAX_TARGET;
  const Query q1 = load_query(spec.get(), side, c.query1);
  const Query q2 = load_query(spec.get(), side, c.query2);
  int contained = 0;
  check(obdax_containment(q1.get(), q2.get(), &contained));
  std::cout << (contained ? "true" : "false") << "\n";
  return contained ? 0 : 1;
}

int cmd_gen_qbf(const Config& c) {
  std::string qdimacs;
  if (!c.input.empty()) {
    qdimacs = read_text(c.input);
  } else if (c.seed) {
    char* text = nullptr;
    check(obdax_random_qbf(*c.seed, c.universals, c.existentials, c.clauses, &text));
    qdimacs = take(text);
  } else {
    std::cerr << "obdax: gen-qbf needs --input or --seed\n";
    return kExitUsage;
  }
  char* spec_text = nullptr;
  char* query_text = nullptr;
  int truth = -1;
  check(obdax_gen_qbf(qdimacs.c_str(), &spec_text, &query_text, &truth));
  const std::string spec = take(spec_text), query = take(query_text);
  const char* value = truth < 0 ? "not evaluated" : truth ? "true" : "false";
  if (c.out_prefix.empty()) {
    std::cout << "# formula\n";
    std::istringstream lines(qdimacs);
    for (std::string line; std::getline(lines, line);) std::cout << "# " << line << "\n";
    std::cout << "# value: " << value << "\n" << spec << "\n" << query;
  } else {
    write_text(c.out_prefix + ".qdimacs", qdimacs);
    write_text(c.out_prefix + ".obda", spec);
    write_text(c.out_prefix + ".uq", query);
    std::cout << "wrote " << c.out_prefix << ".{qdimacs,obda,uq}; formula value: " << value << "\n";
  }
  return 0;
}

int cmd_oracle(const Config& c) {
  const Spec spec = load_spec(c.spec);
  const Query q_s = load_query(spec.get(), OBDAX_SOURCE, c.source_query);
  Query q_t;
  if (!c.target_query.empty()) q_t = load_query(spec.get(), OBDAX_TARGET, c.target_query);
  obdax_oracle_options o;
  obdax_oracle_options_init(&o);
  o.max_domain = c.max_domain;
  o.max_facts = c.max_facts;
  o.consistent_only = c.consistent_only;
  o.jobs = c.jobs;
  int found = 0;
  char* text = nullptr;
  check(obdax_oracle(spec.get(), q_s.get(), q_t.get(), &o, c.json, &found, &text));
  std::cout << take(text);
  return found ? 1 : 0;
}

void add_budget(CLI::App* cmd, Config& c) {
  cmd->add_option("--strategy", c.strategy, "backward search: supports, enumerate or rewriting (DL-Lite)")
      ->check(CLI::IsMember({"supports", "enumerate", "rewriting"}))
      ->capture_default_str();
  cmd->add_option("--max-depth", c.max_depth,
                  "derivation depth (supports) or frontier depth (enumerate); default: atoms of q_s");
  cmd->add_option("--max-abox", c.max_abox,
                  "ABox size for enumerate, default min(pseudo-tree bound, 3); disjunct size for rewriting, "
                  "default |q_t| * (1 + |O|)");
  cmd->add_option("--max-candidates", c.max_candidates, "candidate ABox cap; default 200000");
  cmd->add_option("--max-choices", c.max_choices, "backward choice nodes per candidate; default 2000000");
  cmd->add_flag("--exhaustive", c.exhaustive, "treat the budget as complete (turns Unknown into Yes)");
  cmd->add_flag("--consistent-only", c.consistent_only, "only databases D with M(D) consistent count");
  cmd->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_flag("--json", c.json, "print the verdict as JSON");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide realizability of source queries through GAV mappings and an ontology."};
  app.set_version_flag("--version", obdax_version());
  app.require_subcommand(1);
  Config c;

  auto* check_cmd = app.add_subcommand("check", "decide whether the source query has a realization");
  check_cmd->add_option("--spec", c.spec, "spec file (.obda)")->required();
  check_cmd->add_option("--source-query", c.source_query, "source query (.uq)")->required();
  add_budget(check_cmd, c);

  auto* verify_cmd = app.add_subcommand("verify", "decide whether the target query realizes the source query");
  verify_cmd->add_option("--spec", c.spec, "spec file (.obda)")->required();
  verify_cmd->add_option("--source-query", c.source_query, "source query (.uq)")->required();
  verify_cmd->add_option("--target-query", c.target_query, "target query (.uq)")->required();
  add_budget(verify_cmd, c);

  auto* rewrite_cmd = app.add_subcommand("rewrite", "print the canonical DL-Lite rewriting of a target query");
  rewrite_cmd->add_option("--spec", c.spec, "spec file (.obda)")->required();
  rewrite_cmd->add_option("--target-query", c.target_query, "target query (.uq)")->required();
  rewrite_cmd->add_option("--max-abox", c.max_abox, "disjunct size bound; default |q_t| * (1 + |O|)");

  auto* chase_cmd = app.add_subcommand("chase", "print the saturated ABox and the unraveled universal model");
  chase_cmd->add_option("--spec", c.spec, "spec file (.obda)")->required();
  chase_cmd->add_option("--abox", c.abox, "ABox file (.db) over the target signature")->required();
  chase_cmd->add_option("--max-depth", c.max_depth, "unraveling depth; default 2");

  auto* cont_cmd = app.add_subcommand("containment", "test UCQ containment of the first query in the second");
  cont_cmd->add_option("--spec", c.spec, "spec file (.obda) declaring the signature")->required();
  cont_cmd->add_option("query1", c.query1, "contained query (.uq)")->required();
  cont_cmd->add_option("query2", c.query2, "containing query (.uq)")->required();
  cont_cmd->add_option("--side", c.side, "signature of the queries: source or target")
      ->check(CLI::IsMember({"source", "target"}))
      ->capture_default_str();

  auto* qbf_cmd = app.add_subcommand("gen-qbf", "build the instance for a forall-exists 3-CNF formula");
  auto* input_opt = qbf_cmd->add_option("--input", c.input, "QDIMACS file");
  qbf_cmd->add_option("--seed", c.seed, "generate a random formula instead of reading one")->excludes(input_opt);
  qbf_cmd->add_option("--universals", c.universals, "universal variables for --seed")->capture_default_str();
  qbf_cmd->add_option("--existentials", c.existentials, "existential variables for --seed")->capture_default_str();
  qbf_cmd->add_option("--clauses", c.clauses, "clauses for --seed")->capture_default_str();
  qbf_cmd->add_option("--out", c.out_prefix, "write PREFIX.qdimacs, PREFIX.obda and PREFIX.uq");

  auto* oracle_cmd = app.add_subcommand("oracle", "compare source answers with certain answers on small databases");
  oracle_cmd->add_option("--spec", c.spec, "spec file (.obda)")->required();
  oracle_cmd->add_option("--source-query", c.source_query, "source query (.uq)")->required();
  oracle_cmd->add_option("--target-query", c.target_query, "target query (.uq); default M(q_s)");
  oracle_cmd->add_option("--max-domain", c.max_domain, "constants per database; default variables of q_s + 2");
  oracle_cmd->add_option("--max-facts", c.max_facts, "facts per database; default max-domain");
  oracle_cmd->add_flag("--consistent-only", c.consistent_only, "skip databases D with M(D) inconsistent");
  oracle_cmd->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  oracle_cmd->add_flag("--json", c.json, "print the result as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*check_cmd) return cmd_check(c);
    if (*verify_cmd) return cmd_verify(c);
    if (*rewrite_cmd) return cmd_rewrite(c);
    if (*chase_cmd) return cmd_chase(c);
    if (*cont_cmd) return cmd_containment(c);
    if (*qbf_cmd) return cmd_gen_qbf(c);
    if (*oracle_cmd) return cmd_oracle(c);
  } catch (const Failure& f) {
    return f.code;
  }
  return kExitUsage;
}
