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


#include "obdax/obdax.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include "decision.hpp"
#include "homomorphism.hpp"
#include "mappings.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "reasoner.hpp"
#include "rewriting.hpp"
#include "textio.hpp"
#include "verdict.hpp"

#include "json.hpp"

struct obdax_spec {
  obdax::ObdaSpec value;
};
struct obdax_query {
  obdax::UCQ value;
};
struct obdax_database {
  obdax::Database value;
};
struct obdax_verdict {
  obdax::Verdict value;
};

namespace {

thread_local std::string last_error;

// Larger formulas are not evaluated by obdax_gen_qbf.
constexpr std::size_t kMaxEvalVariables = 24;

obdax_status fail(obdax_status s, std::string message) {
  last_error = std::move(message);
  return s;
}

std::string describe(const obdax::Error& e) {
  std::string out = e.what();
  for (const auto& d : e.diagnostics()) {
    const std::string line = d.str();
    if (out.find(line) == std::string::npos) out += "\n  " + line;
  }
  return out;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
obdax_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const obdax::Error& e) {
    switch (e.kind()) {
      case obdax::Error::Kind::Parse: return fail(OBDAX_ERR_PARSE, describe(e));
      case obdax::Error::Kind::Validation: return fail(OBDAX_ERR_VALIDATION, describe(e));
      case obdax::Error::Kind::Argument: return fail(OBDAX_ERR_ARGUMENT, describe(e));
      case obdax::Error::Kind::Internal: break;
    }
    return fail(OBDAX_ERR_INTERNAL, describe(e));
  } catch (const std::bad_alloc&) {
    return fail(OBDAX_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(OBDAX_ERR_INTERNAL, e.what());
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

bool read_file(const char* path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return !in.bad();
}

obdax::Schema side_schema(const obdax::ObdaSpec& spec, obdax_query_side side) {
  return side == OBDAX_SOURCE ? spec.source_schema : spec.target_schema();
}

obdax::DecisionBudget to_budget(const obdax_budget* b) {
  obdax::DecisionBudget out;
  if (!b) return out;
  switch (b->strategy) {
    case OBDAX_STRATEGY_SUPPORTS: out.strategy = obdax::Strategy::Supports; break;
    case OBDAX_STRATEGY_ENUMERATE: out.strategy = obdax::Strategy::Enumerate; break;
    case OBDAX_STRATEGY_REWRITING: out.strategy = obdax::Strategy::Rewriting; break;
    default: throw obdax::Error(obdax::Error::Kind::Argument, "unknown strategy");
  }
  if (b->max_depth >= 0) out.max_depth = static_cast<std::size_t>(b->max_depth);
  if (b->max_abox >= 0) out.max_abox = static_cast<std::size_t>(b->max_abox);
  out.max_candidates = b->max_candidates;
  out.max_choices = b->max_choices;
  out.exhaustive = b->exhaustive != 0;
  out.consistent_only = b->consistent_only != 0;
  out.jobs = b->jobs ? b->jobs : 1;
  return out;
}

#define OBDAX_REQUIRE(cond) \
  if (!(cond)) return fail(OBDAX_ERR_ARGUMENT, "null argument: " #cond)

obdax::Schema rewrite_schema(const obdax::ObdaSpec& spec) {
  return spec.mappings.empty() ? spec.target_schema() : spec.mapping_schema();
}

}  // namespace

extern "C" {

const char* obdax_version(void) { return OBDAX_VERSION_STRING; }

const char* obdax_last_error(void) { return last_error.c_str(); }

const char* obdax_status_name(obdax_status s) {
  switch (s) {
    case OBDAX_OK: return "ok";
    case OBDAX_ERR_PARSE: return "parse error";
    case OBDAX_ERR_VALIDATION: return "validation error";
    case OBDAX_ERR_ARGUMENT: return "invalid argument";
    case OBDAX_ERR_IO: return "i/o error";
    case OBDAX_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void obdax_string_free(char* s) { std::free(s); }

void obdax_budget_init(obdax_budget* b) {
  if (!b) return;
  const obdax::DecisionBudget d;
  b->strategy = OBDAX_STRATEGY_SUPPORTS;
  b->max_depth = -1;
  b->max_abox = -1;
  b->max_candidates = d.max_candidates;
  b->max_choices = d.max_choices;
  b->exhaustive = 0;
  b->consistent_only = 0;
  b->jobs = 1;
}

void obdax_oracle_options_init(obdax_oracle_options* o) {
  if (!o) return;
  o->max_domain = -1;
  o->max_facts = -1;
  o->consistent_only = 0;
  o->jobs = 1;
}

obdax_status obdax_spec_parse(const char* text, obdax_spec** out) {
  OBDAX_REQUIRE(text && out);
  return guarded([&] {
    *out = new obdax_spec{obdax::parse_spec(text)};
    return OBDAX_OK;
  });
}

obdax_status obdax_spec_load(const char* path, obdax_spec** out) {
  OBDAX_REQUIRE(path && out);
  std::string text;
  if (!read_file(path, text)) return fail(OBDAX_ERR_IO, std::string("cannot read ") + path);
  const obdax_status s = obdax_spec_parse(text.c_str(), out);
  if (s != OBDAX_OK) last_error = std::string(path) + ": " + last_error;
  return s;
}

obdax_status obdax_spec_render(const obdax_spec* spec, char** out) {
  OBDAX_REQUIRE(spec && out);
  return guarded([&] {
    *out = copy_string(obdax::render(spec->value));
    return OBDAX_OK;
  });
}

void obdax_spec_free(obdax_spec* spec) { delete spec; }

obdax_status obdax_query_parse(const obdax_spec* spec, obdax_query_side side, const char* text, obdax_query** out) {
  OBDAX_REQUIRE(spec && text && out);
  return guarded([&] {
    *out = new obdax_query{obdax::parse_query(text, side_schema(spec->value, side))};
    return OBDAX_OK;
  });
}

obdax_status obdax_query_load(const obdax_spec* spec, obdax_query_side side, const char* path, obdax_query** out) {
  OBDAX_REQUIRE(spec && path && out);
  std::string text;
  if (!read_file(path, text)) return fail(OBDAX_ERR_IO, std::string("cannot read ") + path);
  const obdax_status s = obdax_query_parse(spec, side, text.c_str(), out);
  if (s != OBDAX_OK) last_error = std::string(path) + ": " + last_error;
  return s;
}

obdax_status obdax_query_render(const obdax_query* q, char** out) {
  OBDAX_REQUIRE(q && out);
  return guarded([&] {
    *out = copy_string(obdax::render(q->value));
    return OBDAX_OK;
  });
}

size_t obdax_query_arity(const obdax_query* q) { return q ? q->value.arity : 0; }

void obdax_query_free(obdax_query* q) { delete q; }

obdax_status obdax_database_parse(const obdax_spec* spec, obdax_query_side side, const char* text,
                                  obdax_database** out) {
  OBDAX_REQUIRE(spec && text && out);
  return guarded([&] {
    obdax::Database d = obdax::parse_database(text);
    const obdax::Schema schema = side_schema(spec->value, side);
    for (const auto& f : d.facts) {
      const auto k = schema.arity(f.relation);
      if (!k)
        throw obdax::Error(obdax::Error::Kind::Validation, "undeclared relation in fact " + obdax::render_fact(f));
      if (*k != f.args.size())
        throw obdax::Error(obdax::Error::Kind::Validation, "arity mismatch in fact " + obdax::render_fact(f));
    }
    *out = new obdax_database{std::move(d)};
    return OBDAX_OK;
  });
}

obdax_status obdax_database_load(const obdax_spec* spec, obdax_query_side side, const char* path,
                                 obdax_database** out) {
  OBDAX_REQUIRE(spec && path && out);
  std::string text;
  if (!read_file(path, text)) return fail(OBDAX_ERR_IO, std::string("cannot read ") + path);
  const obdax_status s = obdax_database_parse(spec, side, text.c_str(), out);
  if (s != OBDAX_OK) last_error = std::string(path) + ": " + last_error;
  return s;
}

obdax_status obdax_database_render(const obdax_database* d, char** out) {
  OBDAX_REQUIRE(d && out);
  return guarded([&] {
    *out = copy_string(obdax::render(d->value));
    return OBDAX_OK;
  });
}

void obdax_database_free(obdax_database* d) { delete d; }

obdax_status obdax_check(const obdax_spec* spec, const obdax_query* q_s, const obdax_budget* budget,
                         obdax_verdict** out) {
  OBDAX_REQUIRE(spec && q_s && out);
  return guarded([&] {
    *out = new obdax_verdict{obdax::expressible(spec->value, q_s->value, to_budget(budget))};
    return OBDAX_OK;
  });
}

obdax_status obdax_verify(const obdax_spec* spec, const obdax_query* q_s, const obdax_query* q_t,
                          const obdax_budget* budget, obdax_verdict** out) {
  OBDAX_REQUIRE(spec && q_s && q_t && out);
  return guarded([&] {
    *out = new obdax_verdict{obdax::verify(spec->value, q_s->value, q_t->value, to_budget(budget))};
    return OBDAX_OK;
  });
}

obdax_outcome obdax_verdict_outcome(const obdax_verdict* v) {
  if (!v) return OBDAX_UNKNOWN;
  switch (v->value.outcome) {
    case obdax::Outcome::Yes: return OBDAX_YES;
    case obdax::Outcome::No: return OBDAX_NO;
    case obdax::Outcome::Unknown: break;
  }
  return OBDAX_UNKNOWN;
}

obdax_status obdax_verdict_render(const obdax_verdict* v, int json, char** out) {
  OBDAX_REQUIRE(v && out);
  return guarded([&] {
    *out = copy_string(json ? obdax::render_json(v->value) : obdax::render_text(v->value));
    return OBDAX_OK;
  });
}

void obdax_verdict_free(obdax_verdict* v) { delete v; }

obdax_status obdax_rewrite(const obdax_spec* spec, const obdax_query* q_t, int64_t bound, char** out) {
  OBDAX_REQUIRE(spec && q_t && out);
  return guarded([&] {
    const std::size_t b = bound >= 0 ? static_cast<std::size_t>(bound)
                                     : obdax::default_rewriting_bound(spec->value.ontology, q_t->value);
    const obdax::UCQ rw =
        obdax::canonical_rewriting_dllite(spec->value.ontology, rewrite_schema(spec->value), q_t->value, b);
    *out = copy_string(obdax::render(rw));
    return OBDAX_OK;
  });
}

int64_t obdax_rewrite_default_bound(const obdax_spec* spec, const obdax_query* q_t) {
  if (!spec || !q_t) return -1;
  return static_cast<int64_t>(obdax::default_rewriting_bound(spec->value.ontology, q_t->value));
}

obdax_status obdax_chase(const obdax_spec* spec, const obdax_database* abox, size_t depth, int* consistent,
                         char** out) {
  OBDAX_REQUIRE(spec && abox && consistent && out);
  return guarded([&] {
    const obdax::Reasoner r(spec->value.ontology, spec->value.target_schema());
    const obdax::SaturatedABox sat = r.saturate_abox(abox->value);
    std::string text;
    if (sat.inconsistent) {
      *consistent = 0;
      text = "# inconsistent\n";
    } else {
      *consistent = 1;
      text = "# saturated\n" + obdax::render(sat.facts) + "# universal model to depth " + std::to_string(depth) +
             "\n" + obdax::render(r.universal_model(abox->value, depth));
    }
    *out = copy_string(text);
    return OBDAX_OK;
  });
}

obdax_status obdax_containment(const obdax_query* q1, const obdax_query* q2, int* result) {
  OBDAX_REQUIRE(q1 && q2 && result);
  return guarded([&] {
    if (q1->value.arity != q2->value.arity)
      throw obdax::Error(obdax::Error::Kind::Argument, "queries differ in arity");
    *result = obdax::ucq_contained(q1->value, q2->value) ? 1 : 0;
    return OBDAX_OK;
  });
}

obdax_status obdax_gen_qbf(const char* qdimacs, char** spec_text, char** query_text, int* truth) {
  OBDAX_REQUIRE(qdimacs && spec_text && query_text);
  return guarded([&] {
    const obdax::QbfFormula phi = obdax::parse_qdimacs(qdimacs);
    const obdax::QbfInstance inst = obdax::qbf_to_instance(phi);
    if (truth) *truth = phi.universals + phi.existentials <= kMaxEvalVariables ? obdax::qbf_brute_eval(phi) : -1;
    *spec_text = copy_string(obdax::render(inst.spec));
    *query_text = copy_string(obdax::render(inst.q_s));
    return OBDAX_OK;
  });
}

obdax_status obdax_random_qbf(uint64_t seed, size_t universals, size_t existentials, size_t clauses, char** out) {
  OBDAX_REQUIRE(out);
  return guarded([&] {
    *out = copy_string(obdax::render_qdimacs(obdax::random_qbf(seed, universals, existentials, clauses)));
    return OBDAX_OK;
  });
}

obdax_status obdax_oracle(const obdax_spec* spec, const obdax_query* q_s, const obdax_query* q_t,
                          const obdax_oracle_options* options, int json, int* found, char** out) {
  OBDAX_REQUIRE(spec && q_s && found && out);
  return guarded([&] {
    obdax::OracleOptions o;
    if (options) {
      if (options->max_domain >= 0) o.max_domain = static_cast<std::size_t>(options->max_domain);
      if (options->max_facts >= 0) o.max_facts = static_cast<std::size_t>(options->max_facts);
      o.consistent_only = options->consistent_only != 0;
      o.jobs = options->jobs ? options->jobs : 1;
    }
    const obdax::UCQ target = q_t ? q_t->value : obdax::apply_forward_query(spec->value.mappings, q_s->value);
    const obdax::OracleResult r = obdax::brute_force_realization_check(spec->value, q_s->value, target, o);
    *found = r.counterexample ? 1 : 0;
    // Reuse the verdict renderers so the witness layout matches check/verify.
    obdax::Verdict v;
    v.outcome = r.counterexample ? obdax::Outcome::No : obdax::Outcome::Unknown;
    v.witness = r.counterexample;
    std::string text;
    if (json) {
      nlohmann::ordered_json j = nlohmann::ordered_json::parse(obdax::render_json(v));
      j["verdict"] = r.counterexample ? "counterexample" : "consistent";
      j["target"] = obdax::render(target);
      j["max_domain"] = r.max_domain;
      j["max_facts"] = r.max_facts;
      j["databases"] = r.databases;
      text = j.dump(2) + "\n";
    } else {
      std::ostringstream os;
      os << (r.counterexample ? "counterexample found" : "no counterexample") << " (max_domain=" << r.max_domain
         << " max_facts=" << r.max_facts << " databases=" << r.databases << ")\n";
      os << "target:\n" << obdax::render(target);
      if (r.counterexample) {
        const std::string body = obdax::render_text(v);
        os << body.substr(body.find('\n') + 1);
      }
      text = os.str();
    }
    *out = copy_string(text);
    return OBDAX_OK;
  });
}

}  // extern "C"
