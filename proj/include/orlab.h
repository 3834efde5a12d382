/* C interface to the Orlicz greedy-approximation laboratory.
 *
 * All objects are opaque handles created and destroyed through this
 * API. Every function returns a status code; on failure the handle
 * outputs are untouched and orlab_last_error() describes the problem
 * for the calling thread.
 */
#ifndef ORLAB_H
#define ORLAB_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    ORLAB_OK = 0,
    ORLAB_ERR_DOMAIN = 1,      /* invalid parameter or argument out of range */
    ORLAB_ERR_RESOLUTION = 2,  /* grid too coarse for the request */
    ORLAB_ERR_PROJECTION = 3,  /* projection failed to certify optimality */
    ORLAB_ERR_IO = 4,          /* file read/write failure */
    ORLAB_ERR_BAD_HANDLE = 5,  /* null or mismatched handle */
    ORLAB_ERR_INTERNAL = 6
} orlab_status;

typedef struct orlab_space orlab_space;
typedef struct orlab_dictionary orlab_dictionary;
typedef struct orlab_trace orlab_trace;

const char* orlab_status_string(orlab_status status);

/* Message for the most recent failure on this thread. */
const char* orlab_last_error(void);

/* ---- Orlicz space L^p(log L)^alpha ---- */

orlab_status orlab_space_create(double p, double alpha, orlab_space** out);
void orlab_space_destroy(orlab_space* space);

orlab_status orlab_young_eval(const orlab_space* space, double t, double* out);
orlab_status orlab_young_inverse(const orlab_space* space, double y, double* out);
orlab_status orlab_fundamental(const orlab_space* space, double t, double* out);

/* Luxemburg norm of the complex samples (im may be NULL for real data)
 * on a uniform grid over [0, width) when torus == 0, or over the torus
 * when torus != 0. */
orlab_status orlab_luxemburg_norm(const orlab_space* space, const double* re,
                                  const double* im, size_t n, int torus, int width,
                                  double* out);

/* ---- Dictionaries ---- */

orlab_status orlab_dictionary_create_haar(const orlab_space* space, int width,
                                          int max_level, size_t grid_size,
                                          orlab_dictionary** out);
orlab_status orlab_dictionary_create_trig(const orlab_space* space, int max_freq,
                                          size_t grid_size, orlab_dictionary** out);
void orlab_dictionary_destroy(orlab_dictionary* dict);
orlab_status orlab_dictionary_size(const orlab_dictionary* dict, size_t* out);

/* ---- Greedy runs ---- */

/* Runs the weak Chebyshev greedy algorithm on the complex samples
 * (grid layout of the dictionary; im may be NULL). */
orlab_status orlab_run_wcga(const orlab_dictionary* dict, const double* re,
                            const double* im, size_t n, double tau, int max_iter,
                            orlab_trace** out);
void orlab_trace_destroy(orlab_trace* trace);

orlab_status orlab_trace_steps(const orlab_trace* trace, size_t* out);
orlab_status orlab_trace_initial_norm(const orlab_trace* trace, double* out);
orlab_status orlab_trace_residual_norm(const orlab_trace* trace, size_t step,
                                       double* out);
orlab_status orlab_trace_atom_id(const orlab_trace* trace, size_t step, int* out);

/* Atomic write of the trace document to path. */
orlab_status orlab_trace_write(const orlab_trace* trace, const char* path);

/* ---- Command-level entry point ----
 *
 * Executes one experiment described by a JSON configuration string and
 * writes its artifact atomically to the configured output path.
 * Progress lines go to stderr. This is the call the CLI wraps. */
orlab_status orlab_run_command(const char* config_json);

#ifdef __cplusplus
}
#endif

#endif /* ORLAB_H */
