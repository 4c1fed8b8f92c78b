#ifndef PTOLEMY_H
#define PTOLEMY_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PtolemyStatus {
  PTOLEMY_STATUS_OK = 0,
  PTOLEMY_STATUS_NULL_POINTER = 1,
  PTOLEMY_STATUS_INVALID_UTF8 = 2,
  PTOLEMY_STATUS_PARSE = 3,
  PTOLEMY_STATUS_FAT_GRAPH = 4,
  PTOLEMY_STATUS_FREE_GROUP = 5,
  PTOLEMY_STATUS_MARKING = 6,
  PTOLEMY_STATUS_MAGNUS = 7,
  PTOLEMY_STATUS_CHORD = 8,
  PTOLEMY_STATUS_SYMPLECTIC = 9,
  PTOLEMY_STATUS_BUFFER_TOO_SMALL = 10,
  PTOLEMY_STATUS_PANIC = 11,
} PtolemyStatus;

/**
 * A trivalent bordered fatgraph.
 */
typedef struct PtolemyGraph PtolemyGraph;

/**
 * A composable sequence of Whitehead moves.
 */
typedef struct PtolemySequence PtolemySequence;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread into `buf` (truncated,
 * NUL-terminated) and returns the buffer size it needs, 0 if there is no
 * error. `buf` may be null to query the size.
 */
size_t ptolemy_last_error_message(char *buf, size_t len);

/**
 * Releases a string returned by this library.
 */
void ptolemy_string_free(char *s);

/**
 * Parses a graph in the `.fat` text format.
 */
enum PtolemyStatus ptolemy_graph_parse(const char *text, struct PtolemyGraph **out);

/**
 * The symplectic chord diagram of genus `genus`.
 */
enum PtolemyStatus ptolemy_graph_symplectic(size_t genus, struct PtolemyGraph **out);

enum PtolemyStatus ptolemy_graph_clone(const struct PtolemyGraph *g, struct PtolemyGraph **out);

void ptolemy_graph_free(struct PtolemyGraph *g);

/**
 * The graph in the `.fat` text format.
 */
enum PtolemyStatus ptolemy_graph_to_string(const struct PtolemyGraph *g, char **out);

enum PtolemyStatus ptolemy_graph_genus(const struct PtolemyGraph *g, size_t *out);

enum PtolemyStatus ptolemy_graph_num_darts(const struct PtolemyGraph *g, size_t *out);

/**
 * The Whitehead move on the edge of dart `dart` as a new graph.
 */
enum PtolemyStatus ptolemy_graph_whitehead_move(const struct PtolemyGraph *g,
                                                uint32_t dart,
                                                struct PtolemyGraph **out);

/**
 * The type of the move on dart `dart`, such as `3+`.
 */
enum PtolemyStatus ptolemy_graph_classify_move(const struct PtolemyGraph *g,
                                               uint32_t dart,
                                               char **out);

/**
 * Writes the canonical code into `buf`. `written` receives its length;
 * when `len` is smaller nothing is copied and the status is
 * `BUFFER_TOO_SMALL`.
 */
enum PtolemyStatus ptolemy_graph_canonical_code(const struct PtolemyGraph *g,
                                                uint32_t *buf,
                                                size_t len,
                                                size_t *written);

/**
 * Whether the two graphs are isomorphic as tailed fatgraphs.
 */
enum PtolemyStatus ptolemy_graph_isomorphic(const struct PtolemyGraph *a,
                                            const struct PtolemyGraph *b,
                                            bool *out);

/**
 * An empty sequence starting at a copy of `start`.
 */
enum PtolemyStatus ptolemy_sequence_new(const struct PtolemyGraph *start,
                                        struct PtolemySequence **out);

void ptolemy_sequence_free(struct PtolemySequence *s);

/**
 * Appends the move on dart `dart` of the current end.
 */
enum PtolemyStatus ptolemy_sequence_push(struct PtolemySequence *s, uint32_t dart);

enum PtolemyStatus ptolemy_sequence_len(const struct PtolemySequence *s, size_t *out);

/**
 * A copy of the last graph of the sequence.
 */
enum PtolemyStatus ptolemy_sequence_end(const struct PtolemySequence *s, struct PtolemyGraph **out);

/**
 * The Nielsen automorphism of the sequence, one line `x_i -> word` per
 * generator.
 */
enum PtolemyStatus ptolemy_sequence_nielsen(const struct PtolemySequence *s, char **out);

/**
 * The symplectic matrix of the sequence against the reference marking of
 * its start, row-major into `buf`. `dim` receives `2g`; `len` must be at
 * least `dim * dim` or the status is `BUFFER_TOO_SMALL`.
 */
enum PtolemyStatus ptolemy_sequence_sp(const struct PtolemySequence *s,
                                       int64_t *buf,
                                       size_t len,
                                       size_t *dim);

/**
 * Realizability of a surface word given as signed decimal letters. On
 * acceptance `diagram` receives the chord diagram in its text
 * format and `boundary_cycles` is 1; otherwise `diagram` is set to null.
 */
enum PtolemyStatus ptolemy_word_realize(const char *word,
                                        bool *accepted,
                                        size_t *boundary_cycles,
                                        char **diagram);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PTOLEMY_H */
