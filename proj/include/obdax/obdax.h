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


// C interface to the obdax library. All entry points are thread-safe for
// distinct handles. Strings returned through `char**` are owned by the caller
// and released with obdax_string_free. On failure a status other than
// OBDAX_OK is returned and obdax_last_error() describes it (per thread).

#ifndef OBDAX_OBDAX_H_
#define OBDAX_OBDAX_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define OBDAX_API __declspec(dllexport)
#else
#define OBDAX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum obdax_status {
  OBDAX_OK = 0,
  OBDAX_ERR_PARSE = 1,
  OBDAX_ERR_VALIDATION = 2,
  OBDAX_ERR_ARGUMENT = 3,
  OBDAX_ERR_IO = 4,
  OBDAX_ERR_INTERNAL = 5
} obdax_status;

typedef enum obdax_outcome {
  OBDAX_YES = 0,
  OBDAX_NO = 1,
  OBDAX_UNKNOWN = 2
} obdax_outcome;

typedef enum obdax_strategy {
  OBDAX_STRATEGY_SUPPORTS = 0,
  OBDAX_STRATEGY_ENUMERATE = 1,
  OBDAX_STRATEGY_REWRITING = 2
} obdax_strategy;

// Which signature a query is checked against.
typedef enum obdax_query_side {
  OBDAX_SOURCE = 0,  // the source schema S
  OBDAX_TARGET = 1   // sch(M) plus the ontology's concept and role names
} obdax_query_side;

typedef struct obdax_spec obdax_spec;
typedef struct obdax_query obdax_query;
typedef struct obdax_database obdax_database;
typedef struct obdax_verdict obdax_verdict;

// Negative sizes select the built-in default.
typedef struct obdax_budget {
  obdax_strategy strategy;
  int64_t max_depth;
  int64_t max_abox;
  uint64_t max_candidates;
  uint64_t max_choices;
  int exhaustive;
  int consistent_only;
  unsigned jobs;
} obdax_budget;

typedef struct obdax_oracle_options {
  int64_t max_domain;  // negative: variables of q_s + 2
  int64_t max_facts;   // negative: max_domain
  int consistent_only;
  unsigned jobs;
} obdax_oracle_options;

OBDAX_API const char* obdax_version(void);
OBDAX_API const char* obdax_last_error(void);
OBDAX_API const char* obdax_status_name(obdax_status s);
OBDAX_API void obdax_string_free(char* s);

OBDAX_API void obdax_budget_init(obdax_budget* b);
OBDAX_API void obdax_oracle_options_init(obdax_oracle_options* o);

OBDAX_API obdax_status obdax_spec_parse(const char* text, obdax_spec** out);
OBDAX_API obdax_status obdax_spec_load(const char* path, obdax_spec** out);
OBDAX_API obdax_status obdax_spec_render(const obdax_spec* spec, char** out);
OBDAX_API void obdax_spec_free(obdax_spec* spec);

OBDAX_API obdax_status obdax_query_parse(const obdax_spec* spec, obdax_query_side side, const char* text,
                                         obdax_query** out);
OBDAX_API obdax_status obdax_query_load(const obdax_spec* spec, obdax_query_side side, const char* path,
                                        obdax_query** out);
OBDAX_API obdax_status obdax_query_render(const obdax_query* q, char** out);
OBDAX_API size_t obdax_query_arity(const obdax_query* q);
OBDAX_API void obdax_query_free(obdax_query* q);

// Facts must fit the given side's signature.
OBDAX_API obdax_status obdax_database_parse(const obdax_spec* spec, obdax_query_side side, const char* text,
                                            obdax_database** out);
OBDAX_API obdax_status obdax_database_load(const obdax_spec* spec, obdax_query_side side, const char* path,
                                           obdax_database** out);
OBDAX_API obdax_status obdax_database_render(const obdax_database* d, char** out);
OBDAX_API void obdax_database_free(obdax_database* d);

// Whether q_s has a realization. `budget` may be NULL.
OBDAX_API obdax_status obdax_check(const obdax_spec* spec, const obdax_query* q_s, const obdax_budget* budget,
                                   obdax_verdict** out);
// Whether q_t is a realization of q_s.
OBDAX_API obdax_status obdax_verify(const obdax_spec* spec, const obdax_query* q_s, const obdax_query* q_t,
                                    const obdax_budget* budget, obdax_verdict** out);

OBDAX_API obdax_outcome obdax_verdict_outcome(const obdax_verdict* v);
OBDAX_API obdax_status obdax_verdict_render(const obdax_verdict* v, int json, char** out);
OBDAX_API void obdax_verdict_free(obdax_verdict* v);

// Canonical DL-Lite rewriting of q_t over sch(M), or over the ontology's
// signature when the spec has no mappings. bound < 0 uses the default.
OBDAX_API obdax_status obdax_rewrite(const obdax_spec* spec, const obdax_query* q_t, int64_t bound, char** out);
OBDAX_API int64_t obdax_rewrite_default_bound(const obdax_spec* spec, const obdax_query* q_t);

// Saturated ABox and the universal model unraveled to `depth`, as two
// `facts` blocks. *consistent is set to 0 when the ABox is inconsistent, in
// which case only a comment line is written.
OBDAX_API obdax_status obdax_chase(const obdax_spec* spec, const obdax_database* abox, size_t depth,
                                   int* consistent, char** out);

// Sets *result to 1 iff q1 is contained in q2.
OBDAX_API obdax_status obdax_containment(const obdax_query* q1, const obdax_query* q2, int* result);

// QDIMACS text (one universal block, one existential block, 3-literal
// clauses) to an instance spec and Boolean source query. If `truth` is not
// NULL it receives the formula's value, or -1 above 24 variables.
OBDAX_API obdax_status obdax_gen_qbf(const char* qdimacs, char** spec_text, char** query_text, int* truth);

// A random formula in QDIMACS text, deterministic in the seed.
OBDAX_API obdax_status obdax_random_qbf(uint64_t seed, size_t universals, size_t existentials, size_t clauses,
                                        char** out);

// Brute-force comparison over small source databases. q_t may be NULL, in
// which case M(q_s) is used. *found is 1 when a counterexample was found.
OBDAX_API obdax_status obdax_oracle(const obdax_spec* spec, const obdax_query* q_s, const obdax_query* q_t,
                                    const obdax_oracle_options* options, int json, int* found, char** out);

#ifdef __cplusplus
}
#endif

#endif  // OBDAX_OBDAX_H_
