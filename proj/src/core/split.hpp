#ifndef TREEDIST_CORE_SPLIT_HPP
#define TREEDIST_CORE_SPLIT_HPP

#include <string>
#include <utility>
#include <vector>

#include "bitmask.hpp"
#include "tree.hpp"

namespace treedist {

/// Split indices count the two-block partitions of {0..n}; they outgrow
/// 64 bits near n = 64, so the calculus carries them in 128 bits.
using SplitIndex = unsigned __int128;

std::string to_string(SplitIndex v);
SplitIndex parse_split_index(const std::string& s);

/// A two-block partition X | {0..n} \ X induced by an internal edge, stored
/// in canonical form: `side` is the smaller block, ties broken by keeping
/// the block that contains 0.
class Split {
public:
    // `block` is either block of the partition; the canonical side is chosen
    // here. Throws DomainError when a block has fewer than 2 labels.
    Split(int n, std::vector<int> block);

    int n() const { return n_; }
    const std::vector<int>& side() const { return side_; }
    const LabelMask& mask() const { return mask_; }
    std::vector<int> complement() const;

    bool operator==(const Split& o) const { return n_ == o.n_ && side_ == o.side_; }
    bool operator!=(const Split& o) const { return !(*this == o); }

    std::string to_text() const; // "{a,b,c}"

private:
    int n_ = 0;
    std::vector<int> side_;
    LabelMask mask_;
};

/// Order of Split values in the canonical enumeration: shorter sides first,
/// equal lengths elementwise.
bool split_less(const Split& a, const Split& b);

/// Number of canonical splits of {0..n}.
SplitIndex split_domain_size(int n);

/// Full materialized canonical order, n in [3, 20].
std::vector<Split> canonical_order(int n);

/// 1-based position of s in the canonical order (combinatorial ranking,
/// no enumeration). n is capped at 120 by the 128-bit binomial table.
SplitIndex split_index(const Split& s);

/// Inverse of split_index.
Split split_at(int n, SplitIndex index);

/// True iff at least one of the four cross-block intersections is empty.
bool compatible(const Split& a, const Split& b);

bool is_compatible_set(const std::vector<Split>& ss);

/// Splits induced by the internal edges of t (unordered); one per edge.
std::vector<Split> splits_of(const Tree& t);

/// Same, with each split's edge weight attached.
std::vector<std::pair<Split, double>> weighted_splits_of(const Tree& t);

/// Sparse coordinate of a tree in the canonical split basis: index -> weight,
/// positive weights only, sorted by index.
struct SplitVector {
    int n = 0;
    std::vector<std::pair<SplitIndex, double>> entries;

    double norm() const;
    bool operator==(const SplitVector& o) const { return n == o.n && entries == o.entries; }
};

/// Encodes the internal edges of t; zero-weight edges are dropped.
SplitVector encode(const Tree& t);

/// Rebuilds the unique minimal tree with the given splits and weights.
/// Leaf edges get weight 1.0. Throws IncompatibleSplits naming an offending
/// pair when the entries do not define a tree.
Tree split_to_tree(const SplitVector& v);

/// Builds a tree from explicit (split, weight) pairs; used by decode and the
/// consensus construction. leaf_weights, when non-empty, is indexed by label.
Tree tree_from_splits(int n, const std::vector<std::pair<Split, double>>& splits,
                      const std::vector<double>& leaf_weights = {});

/// Text block format: optional '#' comment lines, a header "n=<int>", then
/// one entry per line as "<index> <weight>" or "{a,b,c} <weight>".
SplitVector parse_vector_text(const std::string& block);
std::string format_vector_text(const SplitVector& v);

} // namespace treedist

#endif
