/*
 * torquo: C interface to the toric quotient engine.
 *
 * Objects are opaque handles owned by the caller and released with the matching
 * *_free function. Every call returns a torquo_status; on failure a description of
 * the error is available from torquo_last_error() on the calling thread. Strings
 * returned through char** parameters are NUL-terminated UTF-8 JSON and must be
 * released with torquo_string_free().
 */
#ifndef TORQUO_H
#define TORQUO_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(TORQUO_BUILDING_LIBRARY)
#    define TORQUO_API __declspec(dllexport)
#  else
#    define TORQUO_API __declspec(dllimport)
#  endif
#else
#  define TORQUO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct torquo_fan torquo_fan;

typedef enum torquo_status {
    TORQUO_OK = 0,
    TORQUO_ERR_PARSE = 1,
    TORQUO_ERR_INVALID_ARGUMENT = 2,
    TORQUO_ERR_INVALID_FAN = 3,
    TORQUO_ERR_NOT_A_RELATION = 4,
    TORQUO_ERR_NOT_POSITIVE = 5,
    TORQUO_ERR_NOT_A_CIRCUIT = 6,
    TORQUO_ERR_CLASS_NOT_IN_CONE = 7,
    TORQUO_ERR_CONDITION_B = 8,
    TORQUO_ERR_SURGERY = 9,
    TORQUO_ERR_NOT_FOUND = 10,
    TORQUO_ERR_INTERNAL = 11
} torquo_status;

TORQUO_API const char* torquo_version(void);
TORQUO_API const char* torquo_status_name(torquo_status status);

/* Message for the most recent failing call on this thread; "" if none. */
TORQUO_API const char* torquo_last_error(void);

TORQUO_API void torquo_string_free(char* s);

/* ---- fans ------------------------------------------------------------- */

/* Parses {"rank": n, "rays": [[...]], "max_cones": [[...]]}. Structural problems
 * that are not syntax (duplicate rays, overlapping cones) are left to
 * torquo_fan_check. */
TORQUO_API torquo_status torquo_fan_parse(const char* json, torquo_fan** out);
TORQUO_API torquo_status torquo_fan_to_json(const torquo_fan* fan, char** out);
TORQUO_API void torquo_fan_free(torquo_fan* fan);

TORQUO_API size_t torquo_fan_rank(const torquo_fan* fan);
TORQUO_API size_t torquo_fan_num_rays(const torquo_fan* fan);
TORQUO_API size_t torquo_fan_num_max_cones(const torquo_fan* fan);

/* Writes the validation report. Returns TORQUO_OK when the fan is simplicial,
 * complete, has proper intersections and is projective; TORQUO_ERR_INVALID_FAN
 * otherwise (the report is still written). */
TORQUO_API torquo_status torquo_fan_check(const torquo_fan* fan, char** report_json);

/* Picard number, relation-space basis, walls with their classes, Mori cone. */
TORQUO_API torquo_status torquo_fan_classes(const torquo_fan* fan, char** out_json);

/* ---- families --------------------------------------------------------- */

/* class_json is {"coeffs": [...]} over all rays or {"support": [...], "coeffs": [...]}.
 * The report is written whenever the analysis ran; the status reflects its verdict:
 * TORQUO_OK, TORQUO_ERR_NOT_POSITIVE, TORQUO_ERR_NOT_A_CIRCUIT,
 * TORQUO_ERR_CLASS_NOT_IN_CONE, TORQUO_ERR_CONDITION_B or TORQUO_ERR_NOT_A_RELATION.
 * A nonzero with_trace embeds the inductive verification trace. */
TORQUO_API torquo_status torquo_family_analyze(const torquo_fan* fan, const char* class_json, int with_trace,
                                               char** report_json);

/* The quotient fan of a family satisfying the cone criterion. */
TORQUO_API torquo_status torquo_quotient(const torquo_fan* fan, const char* class_json, torquo_fan** out);

/* ---- construction ----------------------------------------------------- */

TORQUO_API torquo_status torquo_construct_projective_space(size_t n, torquo_fan** out);
TORQUO_API torquo_status torquo_construct_product(const torquo_fan* a, const torquo_fan* b, torquo_fan** out);
TORQUO_API torquo_status torquo_construct_blowup(const torquo_fan* fan, const int* cone, size_t cone_len,
                                                 torquo_fan** out);
TORQUO_API torquo_status torquo_construct_flip(const torquo_fan* fan, const int* negative_side, size_t len,
                                               torquo_fan** out);

/* ---- gallery ---------------------------------------------------------- */

/* [{"name", "description", "dim", "rho", "rays", "smooth", "fano"}, ...] */
TORQUO_API torquo_status torquo_gallery_list(char** out_json);
TORQUO_API torquo_status torquo_gallery_emit(const char* name, torquo_fan** out);

/* P3 after `steps` star subdivisions of randomly chosen cones. */
TORQUO_API torquo_status torquo_gallery_random(size_t steps, unsigned long long seed, torquo_fan** out);

#ifdef __cplusplus
}
#endif

#endif /* TORQUO_H */
