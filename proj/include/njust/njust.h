/* SPDX-License-Identifier: Apache-2.0 */
#ifndef NJUST_NJUST_H
#define NJUST_NJUST_H

#include <stddef.h>
#include <stdint.h>

#ifndef NJS_EXPORT
#define NJS_EXPORT __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct njs_system njs_system;
typedef struct njs_fixpoint njs_fixpoint;

typedef enum njs_status {
  NJS_OK = 0,
  NJS_COUNTEREXAMPLE = 1, /* check failed or no model where one was expected */
  NJS_INPUT_ERROR = 2,    /* syntax or validation error */
  NJS_RESOURCE_ERROR = 3, /* an enumeration cap was exceeded */
  NJS_CONTRACT_ERROR = 4, /* bad argument */
  NJS_INTERNAL_ERROR = 5
} njs_status;

typedef enum njs_semantics { NJS_COMPRESS = 0, NJS_MERGE = 1 } njs_semantics;

typedef enum njs_format { NJS_TEXT = 0, NJS_DOT = 1, NJS_JSON_LINES = 2 } njs_format;

typedef struct njs_limits {
  size_t max_justifications;
  size_t max_bodies;
  size_t max_interpretations;
} njs_limits;

NJS_EXPORT void njs_limits_default(njs_limits *limits);

/* Message of the last failed call on this thread; empty after success. */
NJS_EXPORT const char *njs_last_error(void);
NJS_EXPORT const char *njs_version(void);

/* Every char** result is allocated by the library. */
NJS_EXPORT void njs_string_free(char *s);

NJS_EXPORT njs_status njs_system_parse(const char *text, int validate,
                                       njs_system **out);
NJS_EXPORT void njs_system_free(njs_system *sys);
NJS_EXPORT njs_status njs_system_print(const njs_system *sys, char **out);
/* One line per violation; empty when valid. */
NJS_EXPORT njs_status njs_system_report(const njs_system *sys, char **out);

NJS_EXPORT njs_status njs_compress(const njs_system *sys, const njs_limits *limits,
                                   char **out);
NJS_EXPORT njs_status njs_merge(const njs_system *sys, char **out);
/* Flattening of the compressed system. */
NJS_EXPORT njs_status njs_flatten(const njs_system *sys, const njs_limits *limits,
                                  char **out);

/* One JSON object per model, keys sorted: {"p":"t","q":"f"}. Returns
   NJS_COUNTEREXAMPLE when there is none. */
NJS_EXPORT njs_status njs_models(const njs_system *sys, njs_semantics sem,
                                 int two_valued, const njs_limits *limits,
                                 char **out);

/* `interp` is "p=t,q=f,..."; every open atom needs a value. `value` gets
   't', 'f' or 'u'. */
NJS_EXPORT njs_status njs_supported_value(const njs_system *sys, njs_semantics sem,
                                          const char *fact, const char *interp,
                                          const njs_limits *limits, char *value);

NJS_EXPORT njs_status njs_explain(const njs_system *sys, njs_semantics sem,
                                  const char *fact, const char *interp,
                                  njs_format format, const njs_limits *limits,
                                  char **out);

/* JSON lines: one {"kind":"counterexample",...} per disagreement, then one
   {"kind":"verdict",...}. NJS_COUNTEREXAMPLE when not equivalent or outside
   the hypotheses of the check. */
NJS_EXPORT njs_status njs_check_equivalence(const njs_system *sys, int exhaustive,
                                            size_t samples, uint64_t seed,
                                            const njs_limits *limits, char **out);

NJS_EXPORT njs_status njs_fixpoint_parse(const char *text, njs_fixpoint **out);
NJS_EXPORT void njs_fixpoint_free(njs_fixpoint *fp);
NJS_EXPORT njs_status njs_fixpoint_print(const njs_fixpoint *fp, char **out);
/* {"p":"f",...} under the source names. With `via_translation` the values
   are the supported values of the merged translation. */
NJS_EXPORT njs_status njs_fixpoint_solve(const njs_fixpoint *fp, const char *opens,
                                         int via_translation,
                                         const njs_limits *limits, char **out);
/* {"u_":"u"}: symbols renamed because they clash with t, f or u. */
NJS_EXPORT njs_status njs_fixpoint_aliases(const njs_fixpoint *fp, char **out);
/* The translation uses the renamed symbols. */
NJS_EXPORT njs_status njs_fixpoint_translate(const njs_fixpoint *fp,
                                             njs_system **out);

/* One JSON object per suite. NJS_COUNTEREXAMPLE if any suite failed. */
NJS_EXPORT njs_status njs_selfcheck(size_t count, uint64_t seed,
                                    const njs_limits *limits, char **out);

#ifdef __cplusplus
}
#endif

#endif
