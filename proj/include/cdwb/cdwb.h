#ifndef CDWB_CDWB_H
#define CDWB_CDWB_H

/* C interface to the determinateness workbench. Strings returned through
 * out-parameters are owned by the caller and released with cdwb_free_string;
 * out-parameters are set to NULL on entry. */

#include <stdint.h>

#if defined(__GNUC__)
#define CDWB_API __attribute__((visibility("default")))
#else
#define CDWB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct cdwb_session cdwb_session;

typedef enum cdwb_status {
  CDWB_OK = 0,
  CDWB_ERROR = 1,         /* parse, bind, evaluation or cap error */
  CDWB_STAGE_CAP = 2,     /* no fixpoint within max_stages */
  CDWB_CHECK_FAILED = 3,  /* some check reported fail */
  CDWB_PRECONDITION = 4,  /* (D0, S0) not determinately compositional */
  CDWB_MALFORMED = 5,     /* input document is not a trace / class dump */
  CDWB_BAD_ARGUMENT = 6
} cdwb_status;

CDWB_API cdwb_session* cdwb_session_create(void);
CDWB_API void cdwb_session_destroy(cdwb_session* s);

/* Keys: "witness_max" (3), "max_stages" (100), "cap_sentences" (10000),
 * "cap_value" (1000000000), "diff_witness" (0). */
CDWB_API cdwb_status cdwb_set_option(cdwb_session* s, const char* key, uint64_t value);

/* Seed file text; every declaration becomes a seed. May be called once. */
CDWB_API cdwb_status cdwb_load_seeds(cdwb_session* s, const char* text);

/* Stage trace of the seed universe plus "universe", "T_final" and, with
 * diff_witness, "witness_diff". CDWB_STAGE_CAP still fills the report. */
CDWB_API cdwb_status cdwb_build(cdwb_session* s, char** report_json);

/* Runs every pipeline check on a trace of the seed universe. */
CDWB_API cdwb_status cdwb_check(cdwb_session* s, const char* trace_json, char** report_json);

/* Extends the pipeline pair (or the given D0/S0 dumps, either may be NULL) to
 * the formulas of gamma_text and verifies the result. Names declared in
 * gamma_text are local to the call. */
CDWB_API cdwb_status cdwb_ev(cdwb_session* s, const char* gamma_text, const char* d0_json, const char* s0_json,
                    char** class_json, char** report_json);

/* One verdict per "phi {v=1} ;; psi {w=2}" line. */
CDWB_API cdwb_status cdwb_sim(cdwb_session* s, const char* pairs_text, char** report_json);

/* Message of the last failing call, or "" */
CDWB_API const char* cdwb_last_error(const cdwb_session* s);

CDWB_API void cdwb_free_string(char* str);

#ifdef __cplusplus
}
#endif

#endif
