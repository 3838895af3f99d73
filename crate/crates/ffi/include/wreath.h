#ifndef WREATH_H
#define WREATH_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result codes shared by all fallible functions.
 */
typedef enum WreathStatus {
  WREATH_STATUS_OK = 0,
  /*
   A required pointer argument was null.
   */
  WREATH_STATUS_NULL_ARGUMENT = 1,
  /*
   Input could not be parsed or a precondition failed.
   */
  WREATH_STATUS_INVALID_INPUT = 2,
  /*
   A coset enumeration hit its cap where closure was required.
   */
  WREATH_STATUS_CAP_EXCEEDED = 3,
  /*
   The requested verification ran and did not pass.
   */
  WREATH_STATUS_CHECK_FAILED = 4,
} WreathStatus;

/*
 An opaque presentation handle (presentation plus optional construction
 metadata).
 */
typedef struct WreathPresentation WreathPresentation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the most recent failure on this thread. Borrowed: valid until
 the next failing call on the same thread; never null.
 */
const char *wreath_last_error_message(void);

/*
 Parses a presentation file (JSON, optional `wreath_meta` key) into a
 handle.

 # Safety
 `json` must point to a NUL-terminated UTF-8 string; `out` must be a valid
 pointer to receive the handle.
 */
enum WreathStatus wreath_presentation_from_json(const char *json, struct WreathPresentation **out);

/*
 Builds the cyclic wreath product presentation `C_n wr C_m`.

 # Safety
 `out` must be a valid pointer to receive the handle.
 */
enum WreathStatus wreath_presentation_cyclic(size_t n, size_t m, struct WreathPresentation **out);

/*
 Builds the Sylow p-subgroup presentation for the symmetric group on `p^n`
 points.

 # Safety
 `out` must be a valid pointer to receive the handle.
 */
enum WreathStatus wreath_presentation_sylow(uint64_t p,
                                            uint32_t n,
                                            struct WreathPresentation **out);

/*
 Releases a presentation handle. A null handle is ignored.

 # Safety
 `p` must be a handle returned by this library, not yet freed.
 */
void wreath_presentation_free(struct WreathPresentation *p);

/*
 Releases a string returned through an out-parameter. Null is ignored.

 # Safety
 `s` must be a string returned by this library, not yet freed.
 */
void wreath_string_free(char *s);

size_t wreath_presentation_generator_count(const struct WreathPresentation *p);

size_t wreath_presentation_relator_count(const struct WreathPresentation *p);

/*
 Serializes the handle back to the canonical JSON file form.

 # Safety
 `p` must be a live handle; `out` receives a caller-owned string.
 */
enum WreathStatus wreath_presentation_to_json(const struct WreathPresentation *p, char **out);

/*
 Renders the presentation as GAP input.

 # Safety
 `p` must be a live handle; `out` receives a caller-owned string.
 */
enum WreathStatus wreath_presentation_to_gap(const struct WreathPresentation *p, char **out);

/*
 Enumerates the presented group's order with the given coset cap.
 `WREATH_STATUS_CAP_EXCEEDED` reports an enumeration that did not close.

 # Safety
 `p` must be a live handle; `out_order` must be a valid pointer.
 */
enum WreathStatus wreath_group_order(const struct WreathPresentation *p,
                                     size_t cap,
                                     uint64_t *out_order);

/*
 Runs the homomorphism certificate against the concrete wreath product.
 Requires construction metadata in the handle. `out_pass` reports the
 verdict; the status is `WREATH_STATUS_CHECK_FAILED` when the certificate
 ran and did not pass.

 # Safety
 `p` must be a live handle; `out_pass` must be a valid pointer.
 */
enum WreathStatus wreath_hom_certificate(const struct WreathPresentation *p,
                                         size_t cap,
                                         size_t oracle_limit,
                                         bool *out_pass);

/*
 Conormality report (JSON) for every generator.

 # Safety
 `p` must be a live handle; `out` receives a caller-owned string.
 */
enum WreathStatus wreath_conormality_json(const struct WreathPresentation *p, char **out);

/*
 Relator drop report (JSON): re-enumerates the presentation with each
 relator removed, against the expected order.

 # Safety
 `p` must be a live handle; `out` receives a caller-owned string.
 */
enum WreathStatus wreath_minimality_json(const struct WreathPresentation *p,
                                         uint64_t expected_order,
                                         size_t cap,
                                         char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WREATH_H */
