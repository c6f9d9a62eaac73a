/*
 * treedist — comparison distances between leaf-labeled weighted trees.
 *
 * C API over the C++ core: opaque handles, integer status codes, malloc'd
 * strings released through td_string_free. All functions are thread-safe;
 * trees are immutable after creation and may be shared across threads.
 * On failure, a human-readable message is kept per thread and can be read
 * with td_last_error.
 */
#ifndef TREEDIST_H
#define TREEDIST_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TREEDIST_API __declspec(dllexport)
#else
#define TREEDIST_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum td_status {
    TD_OK = 0,
    TD_ERR_SYNTAX = 1,
    TD_ERR_LABEL = 2,
    TD_ERR_SHAPE = 3,
    TD_ERR_SIZE = 4,
    TD_ERR_DOMAIN = 5,
    TD_ERR_LABELSET_MISMATCH = 6,
    TD_ERR_INCOMPATIBLE_SPLITS = 7,
    TD_ERR_DEGENERATE_COVER = 8,
    TD_ERR_ZERO_LENGTH_TREE = 9,
    TD_ERR_OVERFLOW = 10,
    TD_ERR_UNKNOWN_LABEL = 11,
    TD_ERR_LEAF_EDGE = 12,
    TD_ERR_UNKNOWN_METRIC = 13,
    TD_ERR_INVALID_ARGUMENT = 14,
    TD_ERR_ITERATION_CAP = 15,
    TD_ERR_INTERNAL = 16,
    TD_ERR_IO = 17
} td_status;

/* Stable name of a status code ("ok", "syntax", ...). Never NULL. */
TREEDIST_API const char* td_status_name(td_status s);

/* Copies the calling thread's last error message into buf (truncating);
 * returns the full message length. */
TREEDIST_API size_t td_last_error(char* buf, size_t cap);

TREEDIST_API void td_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Trees                                                               */
/* ------------------------------------------------------------------ */

typedef struct td_tree td_tree;

/* Parses rooted Newick with integer leaf labels 1..n; missing branch
 * lengths default to 1. */
TREEDIST_API td_status td_tree_parse(const char* newick, td_tree** out);
TREEDIST_API void td_tree_free(td_tree* t);

/* Canonical Newick: children ordered by minimum descendant label,
 * explicit branch lengths. */
TREEDIST_API td_status td_tree_to_newick(const td_tree* t, char** out);

TREEDIST_API int td_tree_leaf_count(const td_tree* t);
TREEDIST_API int td_tree_internal_edge_count(const td_tree* t);

/* ------------------------------------------------------------------ */
/* Distances                                                           */
/* ------------------------------------------------------------------ */

/* Metric names: rf, rfl, quartet, triplet, triplet-length, mast, align,
 * node, node2, cophenetic, simprob, geodesic, cone. */

typedef struct td_options {
    /* cophenetic class maps: text with one "index class" pair per line,
     * indexing internal vertices in canonical preorder; NULL selects the
     * depth+1 default. */
    const char* class_map_a;
    const char* class_map_b;
} td_options;

typedef struct td_report {
    double value; /* NaN when flagged degenerate with undefined value */
    int flag_ambiguous;
    int flag_not_symmetric_input;
    int flag_degenerate;
} td_report;

TREEDIST_API td_status td_distance(const td_tree* a, const td_tree* b,
                                   const char* metric, const td_options* opts,
                                   td_report* out);

/* DistanceReport as JSON: {"metric","value","flags","notes"}. */
TREEDIST_API td_status td_distance_json(const td_tree* a, const td_tree* b,
                                        const char* metric, const td_options* opts,
                                        char** json_out);

/* Geodesic decomposition as JSON:
 * {"distance", "components":[{"shared_split","support":[{"A","B"}],"term"}],
 *  "notes"}. */
TREEDIST_API td_status td_geodesic_json(const td_tree* a, const td_tree* b,
                                        char** json_out);

/* ------------------------------------------------------------------ */
/* Split-vector coordinates                                            */
/* ------------------------------------------------------------------ */

/* Text block: "n=<int>" header, then one entry per line, either
 * "<index> <weight>" (1-based canonical split index) or "{a,b,c} <weight>"
 * (explicit canonical side). '#' lines are comments. */
TREEDIST_API td_status td_tree_encode(const td_tree* t, char** vector_text);
TREEDIST_API td_status td_vector_decode(const char* vector_text, td_tree** out);

/* ------------------------------------------------------------------ */
/* Other operations                                                    */
/* ------------------------------------------------------------------ */

TREEDIST_API td_status td_strict_consensus(const td_tree* const* trees, size_t count,
                                           td_tree** out);

/* (2n-3)!!; overflow reported, never wrapped. */
TREEDIST_API td_status td_count_binary_topologies(int n, uint64_t* out);

#ifdef __cplusplus
}
#endif

#endif /* TREEDIST_H */
