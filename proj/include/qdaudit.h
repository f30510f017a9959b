/* qdaudit: canonical-dual construction and theorem auditing for quadratically
 * constrained quadratic minimization. C interface to the shared library. */
#ifndef QDAUDIT_H
#define QDAUDIT_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct qda_instance qda_instance;
typedef struct qda_report qda_report;

typedef enum qda_status {
  QDA_OK = 0,
  QDA_ERR_PARSE = 1,
  QDA_ERR_INPUT = 2,
  QDA_ERR_M_NOT_ONE = 3,
  QDA_ERR_SINGULAR_G = 4,
  QDA_ERR_EMPTY_Y = 5,
  QDA_ERR_EMPTY_S_PLUS = 6,
  QDA_ERR_NO_COMPACT_CONSTRAINT = 7,
  QDA_ERR_DIMENSION_TOO_LARGE = 8,
  QDA_ERR_INFEASIBLE_EVERYWHERE = 9,
  QDA_ERR_NULL_ARGUMENT = 10,
  QDA_ERR_INTERNAL = 11
} qda_status;

const char* qda_version(void);

/* All returned char* are heap strings owned by the caller; release them with
 * qda_string_free. `err`/`err_len` receive a truncated message on failure and
 * may be NULL/0. */
void qda_string_free(char* s);

/* ---- instances ---------------------------------------------------- */

qda_status qda_instance_parse_json(const char* json_text, qda_instance** out,
                                   char* err, size_t err_len);
/* which = 1, 2, 3 */
qda_status qda_instance_builtin(int which, qda_instance** out, char* err,
                                size_t err_len);
void qda_instance_free(qda_instance* inst);

int qda_instance_n(const qda_instance* inst);
int qda_instance_m(const qda_instance* inst);

/* JSON text of the instance (with a descriptive comment for built-ins). */
char* qda_instance_emit_json(const qda_instance* inst);

/* One violation per line "field: message (measured ...)"; empty string when
 * the instance is clean. */
char* qda_instance_validate(const qda_instance* inst);

/* ---- audits -------------------------------------------------------- */

qda_status qda_audit_run(const qda_instance* inst, uint64_t seed, qda_report** out,
                         char* err, size_t err_len);
void qda_report_free(qda_report* rep);

char* qda_report_json(const qda_report* rep);
char* qda_report_summary(const qda_report* rep);
/* 0 all claims hold, 2 hypothesis failure/inconclusive, 3 falsified */
int qda_report_exit_code(const qda_report* rep);

/* ---- diagnostics ---------------------------------------------------- */

/* CSV "sigma,phi,psi" on an inclusive uniform grid; single-constraint
 * instances only. */
qda_status qda_dual_curve_csv(const qda_instance* inst, double lo, double hi,
                              int samples, char** out_csv, char* err, size_t err_len);

/* Brute-force minimization; JSON {best_value, minimizers, count, resolution,
 * box}. */
qda_status qda_oracle_run(const qda_instance* inst, int grid_points_per_axis,
                          char** out_json, char* err, size_t err_len);

#ifdef __cplusplus
}
#endif

#endif /* QDAUDIT_H */
