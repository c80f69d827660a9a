#ifndef NQUIVER_H
#define NQUIVER_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NqStatus {
  NQ_STATUS_OK = 0,
  NQ_STATUS_NULL_POINTER = 1,
  NQ_STATUS_INVALID_UTF8 = 2,
  NQ_STATUS_PARSE = 3,
  NQ_STATUS_INVALID_ARGUMENT = 4,
  NQ_STATUS_COMPUTATION = 5,
  NQ_STATUS_PANIC = 6,
} NqStatus;

// Opaque bound quiver.
typedef struct NqQuiver NqQuiver;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread; valid until the next failing call.
const char *nq_last_error(void);

// Parses the text format. `field` is `rat` or `fp:<p>`.
//
// # Safety
// `src` and `field` must be NUL-terminated strings, `out` a valid pointer.
enum NqStatus nq_quiver_parse(const char *src, const char *field, struct NqQuiver **out);

// Reads the JSON interchange format.
//
// # Safety
// `src` must be a NUL-terminated string, `out` a valid pointer.
enum NqStatus nq_quiver_from_json(const char *src, struct NqQuiver **out);

// # Safety
// `q` must come from this library and not be used afterwards.
void nq_quiver_free(struct NqQuiver *q);

// # Safety
// `s` must come from this library and not be used afterwards.
void nq_string_free(char *s);

// # Safety
// `q` must be a live handle and `out` a valid pointer.
enum NqStatus nq_quiver_num_vertices(const struct NqQuiver *q, uintptr_t *out);

// # Safety
// `q` must be a live handle and `out` a valid pointer.
enum NqStatus nq_quiver_num_arrows(const struct NqQuiver *q, uintptr_t *out);

// Canonical text form.
//
// # Safety
// `q` must be a live handle and `out` a valid pointer.
enum NqStatus nq_quiver_serialize(const struct NqQuiver *q, char **out);

// # Safety
// `q` must be a live handle and `out` a valid pointer.
enum NqStatus nq_quiver_to_json(const struct NqQuiver *q, char **out);

// # Safety
// `q` must be a live handle and `out` a valid pointer.
enum NqStatus nq_quadratic_dual(const struct NqQuiver *q, struct NqQuiver **out);

// Dimension of the degree-`t` component of paths from vertex `i` to vertex `j`.
//
// # Safety
// `q` must be a live handle and `out` a valid pointer.
enum NqStatus nq_component_dim(const struct NqQuiver *q,
                               uintptr_t t,
                               uintptr_t i,
                               uintptr_t j,
                               uintptr_t *out);

// Common degree of all maximal bound paths.
//
// # Safety
// `q` must be a live handle and `out` a valid pointer.
enum NqStatus nq_properly_graded_degree(const struct NqQuiver *q, uintptr_t *out);

// Shorthand so C callers can test a status without the enum.
bool nq_status_ok(enum NqStatus s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* NQUIVER_H */
