#ifndef TREEDIST_CORE_METRICS_HPP
#define TREEDIST_CORE_METRICS_HPP

#include <map>
#include <string>
#include <vector>

#include "tree.hpp"

namespace treedist {

struct DistanceReport {
    std::string metric;
    double value = 0.0;
    bool ambiguous = false;
    bool not_symmetric_input = false;
    bool degenerate = false;
    std::vector<std::string> notes;

    bool any_flag() const { return ambiguous || not_symmetric_input || degenerate; }
    std::vector<std::string> flag_names() const;
};

/// Robinson-Foulds: symmetric difference of the two cluster representations.
DistanceReport rf(const Tree& a, const Tree& b);

/// Minimal tree whose cluster set is the intersection of the inputs'; edge
/// weights (internal and leaf) are copied from the first input.
Tree strict_consensus(const std::vector<Tree>& ts);

/// Robinson-Foulds Length: unmatched weight on both sides plus |dw| over
/// matched edges. Edges match on the leaf-label partition they induce; when
/// a partition has several carriers (mirrored clades beside a degree-2
/// root), carriers pair positionally in canonical order, the report is
/// flagged ambiguous, and asymmetric multiplicities also flag
/// not-symmetric-input.
DistanceReport rfl(const Tree& a, const Tree& b);

/// Number of 4-leaf subsets whose induced (unrooted) restrictions differ.
DistanceReport quartet(const Tree& a, const Tree& b);

/// Number of 3-leaf subsets whose induced rooted restrictions differ.
DistanceReport triplet(const Tree& a, const Tree& b);

/// Triplet-length: per agreeing triplet {i<j<k}, the weighted path
/// differences |d(i,j)_a - d(i,j)_b| + |d(i,k)_a - d(i,k)_b|.
DistanceReport triplet_length(const Tree& a, const Tree& b);

/// Maximum agreement subtree distance n - t, by exhaustive subset search
/// over leaf subsets of decreasing size. Capped at n <= 16.
DistanceReport mast(const Tree& a, const Tree& b);

/// Align similarity score: maximum-total-score bijection between internal
/// edges under the Jaccard-based score; unequal edge counts are padded with
/// zero-score virtual partners and flagged degenerate.
DistanceReport align(const Tree& a, const Tree& b);

/// Node distance with exponent k in {1,2}; unweighted path lengths.
DistanceReport node_dist(const Tree& a, const Tree& b, int k);

/// Cophenetic class values: internal vertices indexed by canonical preorder.
using ClassAssignment = std::map<int, int>;

/// Pearson correlation of the two cophenetic-relation matrices over leaf
/// pairs. Empty assignments mean the default depth+1 rule. A constant matrix
/// has no defined correlation: the report carries NaN and the degenerate
/// flag.
DistanceReport cophenetic(const Tree& a, const Tree& b,
                          const ClassAssignment& ca = {},
                          const ClassAssignment& cb = {});

/// Similarity based on probability: d = 1 - (S(a,b)+S(b,a))/2 with the
/// partition-match measure weighted by parent-edge weight products.
DistanceReport similarity_prob(const Tree& a, const Tree& b);

/// Cone path length through the origin: ||a|| + ||b|| over internal edges.
DistanceReport cone(const Tree& a, const Tree& b);

} // namespace treedist

#endif
