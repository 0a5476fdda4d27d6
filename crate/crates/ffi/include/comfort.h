#ifndef COMFORT_H
#define COMFORT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum ComfortStatus {
  COMFORT_STATUS_OK = 0,
  COMFORT_STATUS_NULL_POINTER = 1,
  COMFORT_STATUS_INVALID_UTF8 = 2,
  COMFORT_STATUS_PARSE = 3,
  COMFORT_STATUS_INVALID_PARAMETER = 4,
  COMFORT_STATUS_DISCONNECTED = 5,
  /**
   * No team exists or the algorithm could not find one.
   */
  COMFORT_STATUS_INFEASIBLE = 6,
  COMFORT_STATUS_BUFFER_TOO_SMALL = 7,
  COMFORT_STATUS_INTERNAL = 8,
  COMFORT_STATUS_PANIC = 9,
} ComfortStatus;

typedef enum ComfortVerdict {
  COMFORT_VERDICT_NONE = 0,
  COMFORT_VERDICT_COMFORTABLE = 1,
  COMFORT_VERDICT_BETTER_COMFORTABLE = 2,
  COMFORT_VERDICT_HIGHLY_COMFORTABLE = 3,
} ComfortVerdict;

/**
 * Opaque graph handle.
 */
typedef struct ComfortGraph ComfortGraph;

/**
 * Opaque handle to a finished HICOM run.
 */
typedef struct ComfortTeam ComfortTeam;

/**
 * Flat copy of a team evaluation. `induced_diameter` is `UINT32_MAX` when
 * the team is disconnected.
 */
typedef struct ComfortReport {
  uint32_t d1;
  uint32_t domination_radius;
  uint32_t induced_diameter;
  bool is_connected;
  bool is_dominating_1;
  bool less_dispersive;
  bool bc_condition;
  bool hc_condition;
  enum ComfortVerdict verdict;
} ComfortReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *comfort_last_error(void);

/**
 * Parses edge-list text (`n m [base]` header, then one `u v` per line).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum ComfortStatus comfort_graph_parse(const char *text, struct ComfortGraph **out);

/**
 * Builds a graph on `n` vertices from `edge_count` pairs stored flat in
 * `edges` (`2 * edge_count` entries).
 *
 * # Safety
 * `edges` must point to `2 * edge_count` readable values (may be null when
 * `edge_count` is 0) and `out` must be valid.
 */
enum ComfortStatus comfort_graph_from_edges(size_t n,
                                            const size_t *edges,
                                            size_t edge_count,
                                            struct ComfortGraph **out);

/**
 * # Safety
 * `g` must come from a constructor above and not be freed twice.
 */
void comfort_graph_free(struct ComfortGraph *g);

/**
 * Vertex count; 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t comfort_graph_vertex_count(const struct ComfortGraph *g);

/**
 * Edge count; 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t comfort_graph_edge_count(const struct ComfortGraph *g);

/**
 * Writes the eccentricity of every vertex to `out` (`len ≥ n`), plus the
 * radius and diameter when those pointers are non-null.
 *
 * # Safety
 * `out` must hold `len` writable values; `radius` and `diameter` must be
 * null or valid.
 */
enum ComfortStatus comfort_graph_eccentricities(const struct ComfortGraph *g,
                                                uint32_t *out,
                                                size_t len,
                                                uint32_t *radius,
                                                uint32_t *diameter);

/**
 * Runs HICOM with `l = l_numer / l_denom`. Values of `l` above 2 are
 * accepted.
 *
 * # Safety
 * `g` must be live and `out` valid.
 */
enum ComfortStatus comfort_hicom(const struct ComfortGraph *g,
                                 uint64_t l_numer,
                                 uint64_t l_denom,
                                 struct ComfortTeam **out);

/**
 * # Safety
 * `t` must come from [`comfort_hicom`] and not be freed twice.
 */
void comfort_team_free(struct ComfortTeam *t);

/**
 * Team size; 0 for a null handle.
 *
 * # Safety
 * `t` must be null or live.
 */
size_t comfort_team_len(const struct ComfortTeam *t);

/**
 * Copies the 0-based member indices (ascending) into `out`.
 *
 * # Safety
 * `t` must be live and `out` must hold `len` writable values.
 */
enum ComfortStatus comfort_team_members(const struct ComfortTeam *t, size_t *out, size_t len);

/**
 * Evaluation of the HICOM team.
 *
 * # Safety
 * `t` must be live and `out` valid.
 */
enum ComfortStatus comfort_team_report(const struct ComfortTeam *t, struct ComfortReport *out);

/**
 * Full HICOM result as JSON: team, parameters, report and trace. Release
 * the string with [`comfort_string_free`].
 *
 * # Safety
 * `t` must be live and `out` valid.
 */
enum ComfortStatus comfort_team_json(const struct ComfortTeam *t, char **out);

/**
 * Evaluates an arbitrary team given as `len` 0-based vertex indices.
 *
 * # Safety
 * `g` must be live, `members` must hold `len` readable values and `out`
 * must be valid.
 */
enum ComfortStatus comfort_check_hc(const struct ComfortGraph *g,
                                    const size_t *members,
                                    size_t len,
                                    uint64_t l_numer,
                                    uint64_t l_denom,
                                    struct ComfortReport *out);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void comfort_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COMFORT_H */
