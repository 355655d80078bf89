#ifndef ODDFLAG_H
#define ODDFLAG_H

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum OddflagStatus {
  ODDFLAG_STATUS_OK = 0,
  ODDFLAG_STATUS_NULL_POINTER = 1,
  // Bad rank, index or label outside the space.
  ODDFLAG_STATUS_INVALID_ARGUMENT = 2,
  ODDFLAG_STATUS_PARSE_ERROR = 3,
  ODDFLAG_STATUS_VERIFICATION_FAILED = 4,
  ODDFLAG_STATUS_INVALID_UTF8 = 5,
  ODDFLAG_STATUS_INTERNAL = 6,
  ODDFLAG_STATUS_PANIC = 7,
} OddflagStatus;

// Precomputed data for one rank. Create with [`oddflag_space_new`].
typedef struct OddflagSpace OddflagSpace;

// Build the space for rank `n >= 2`.
//
// # Safety
// `out` must be valid for writes.
enum OddflagStatus oddflag_space_new(uint32_t n, struct OddflagSpace **out);

// # Safety
// `space` must come from [`oddflag_space_new`] and not be used afterwards.
// Null is ignored.
void oddflag_space_free(struct OddflagSpace *space);

// # Safety
// `space` must be a live handle; `out` valid for writes.
enum OddflagStatus oddflag_space_rank(const struct OddflagSpace *space, uint32_t *out);

// Number of Schubert labels, `4n^2`.
//
// # Safety
// `space` must be a live handle; `out` valid for writes.
enum OddflagStatus oddflag_label_count(const struct OddflagSpace *space, size_t *out);

// Label at `index` in enumeration order, as `a|b` text.
//
// # Safety
// `space` must be a live handle; `out` valid for writes. Free the result
// with [`oddflag_string_free`].
enum OddflagStatus oddflag_label_text(const struct OddflagSpace *space, size_t index, char **out);

// # Safety
// `space` must be a live handle, `label` a nul-terminated string, `out`
// valid for writes.
enum OddflagStatus oddflag_label_length(const struct OddflagSpace *space,
                                        const char *label,
                                        uint32_t *out);

// Whether `X(u) <= X(v)` in Bruhat order.
//
// # Safety
// `space` must be a live handle, `u`/`v` nul-terminated strings, `out`
// valid for writes.
enum OddflagStatus oddflag_bruhat_leq(const struct OddflagSpace *space,
                                      const char *u,
                                      const char *v,
                                      bool *out);

// Curve neighborhood `Gamma_(d1,d2)(X(w))` as JSON
// `{"w":…,"d":[d1,d2],"components":[…]}`. `search` selects graph search
// over the closed form.
//
// # Safety
// `space` must be a live handle, `w` a nul-terminated string, `out` valid
// for writes. Free the result with [`oddflag_string_free`].
enum OddflagStatus oddflag_nbhd_json(const struct OddflagSpace *space,
                                     const char *w,
                                     uint32_t d1,
                                     uint32_t d2,
                                     bool search,
                                     char **out);

// Curve-neighborhood lattice of `X(w)` as JSON.
//
// # Safety
// As for [`oddflag_nbhd_json`].
enum OddflagStatus oddflag_lattice_json(const struct OddflagSpace *space,
                                        const char *w,
                                        bool search,
                                        char **out);

// Quantum Bruhat graph with its Property O verdict as JSON.
//
// # Safety
// `space` must be a live handle; `out` valid for writes. Free the result
// with [`oddflag_string_free`].
enum OddflagStatus oddflag_qbg_json(const struct OddflagSpace *space, bool strict, char **out);

// Property O: strong connectivity and cycle-length gcd of the quantum
// Bruhat graph. `gcd_out` receives 0 when the graph is not strongly
// connected. A missing witness-cycle edge returns
// `OddflagStatus::VerificationFailed`.
//
// # Safety
// `space` must be a live handle; `holds_out` and `gcd_out` valid for
// writes.
enum OddflagStatus oddflag_property_o(const struct OddflagSpace *space,
                                      bool strict,
                                      bool *holds_out,
                                      uint64_t *gcd_out);

// # Safety
// `s` must come from this library and not be used afterwards. Null is
// ignored.
void oddflag_string_free(char *s);

// Message for the last failed call on this thread, or null after a
// successful call. Valid until the next call on the same thread.
const char *oddflag_last_error_message(void);

#endif  /* ODDFLAG_H */
