/*
 * lpopalg.h — C interface to the l^p operator algebra toolkit
 *
 * The library speaks JSON: build a request object with a "command" field
 * plus command-specific inputs, hand it to lpa_eval, and read the JSON
 * response. Responses for successful calls carry the echoed command, the
 * seed, an input digest and an "outputs" object; failed calls carry an
 * "error" object with a kind and a message, and the returned status
 * distinguishes validation problems from out-of-scope requests.
 */

#ifndef LPOPALG_H
#define LPOPALG_H

#ifdef __cplusplus
extern "C" {
#endif

/* Opaque evaluation context. Contexts are cheap; one per thread. */
typedef struct lpa_ctx lpa_ctx;

lpa_ctx* lpa_ctx_new(void);
void lpa_ctx_free(lpa_ctx* ctx);

/* Evaluates one JSON request. On return *response_json points to a
 * NUL-terminated JSON document (owned by the caller; release with
 * lpa_string_free) regardless of status.
 *
 * Status: 0 success, 2 validation error, 3 request outside supported
 * scope (certification above dimension 3, refusals at p = 2), 64
 * unknown command. */
int lpa_eval(lpa_ctx* ctx, const char* request_json, char** response_json);

void lpa_string_free(char* s);

/* Message of the most recent failed lpa_eval on this context, or "". */
const char* lpa_last_error(const lpa_ctx* ctx);

const char* lpa_version(void);

#ifdef __cplusplus
}
#endif

#endif /* LPOPALG_H */
