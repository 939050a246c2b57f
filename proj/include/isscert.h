/* C interface to the isscert library.
 *
 * All entry points are exported from the shared library with C linkage so
 * the CLI (and any foreign-language caller) needs no C++ ABI knowledge.
 * Objects are returned as opaque handles and must be released with the
 * matching *_free call. Functions that can fail take an error buffer; on a
 * nonzero return it holds a NUL-terminated message.
 */
#ifndef ISSCERT_H
#define ISSCERT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
#define ISSCERT_OK 0
#define ISSCERT_USAGE_ERROR 1   /* bad config / bad arguments */
#define ISSCERT_CHECKS_FAILED 2 /* ran fine, some check did not pass */
#define ISSCERT_BLOWUP 3        /* simulation left the finite range */
#define ISSCERT_INTERNAL_ERROR 4

typedef struct isscert_config isscert_config;
typedef struct isscert_report isscert_report;

const char *isscert_version(void);

/* Config handling. Both loaders return NULL on failure and describe the
 * problem in err (when err != NULL, at most err_len bytes). */
isscert_config *isscert_config_load(const char *path, char *err, size_t err_len);
isscert_config *isscert_config_parse(const char *text, char *err, size_t err_len);
/* Overrides or adds one `key = value` entry; returns ISSCERT_OK or
 * ISSCERT_USAGE_ERROR. */
int isscert_config_set(isscert_config *cfg, const char *key, const char *value);
void isscert_config_free(isscert_config *cfg);

/* Full experiment: build the configured systems and certificates, simulate,
 * run the requested checks, write CSV/JSON artifacts when output_dir is set.
 * On success (any status except usage/internal errors) *out receives a
 * report the caller owns. */
int isscert_run(const isscert_config *cfg, isscert_report **out, char *err,
                size_t err_len);

/* Cyclic gain condition only; no simulation. */
int isscert_check_smallgain(const isscert_config *cfg, isscert_report **out,
                            char *err, size_t err_len);

/* Inequality oracle suite with the default sample counts. */
int isscert_run_oracles(isscert_report **out, char *err, size_t err_len);

/* Report inspection. The JSON string stays owned by the report. */
const char *isscert_report_json(const isscert_report *rep);
int isscert_report_passed(const isscert_report *rep); /* 1 = all checks pass */
int isscert_report_blowup(const isscert_report *rep);
int isscert_report_num_checks(const isscert_report *rep);
const char *isscert_report_check_name(const isscert_report *rep, int i);
int isscert_report_check_passed(const isscert_report *rep, int i);
void isscert_report_free(isscert_report *rep);

#ifdef __cplusplus
}
#endif

#endif
