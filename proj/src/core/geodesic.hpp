#ifndef TREEDIST_CORE_GEODESIC_HPP
#define TREEDIST_CORE_GEODESIC_HPP

#include <optional>
#include <string>
#include <vector>

#include "split.hpp"
#include "tree.hpp"

namespace treedist {

/// A split participating in a geodesic computation. `split` lives in the
/// current (possibly projected and relabeled) label set; `origin` is the
/// corresponding split of the original input trees, kept for reporting.
struct WeightedSplit {
    Split split;
    double weight = 0.0;
    Split origin;
};

/// One support pair (A_i, B_i); both sides stay sorted in canonical order.
struct SupportPair {
    std::vector<WeightedSplit> A;
    std::vector<WeightedSplit> B;

    double norm_a() const;
    double norm_b() const;
};

struct Support {
    std::vector<SupportPair> pairs;
};

/// sqrt( sum_i (||A_i|| + ||B_i||)^2 )
double support_length(const Support& s);

/// ||a|| + ||b||: length of the path through the origin of tree space.
double cone_path_length(const SplitVector& a, const SplitVector& b);

/// Solution blocks of the extension problem: the support pair partitions
/// (C1, C2) and (D1, D2) induced by a sub-1 minimum cover C1 u D2.
struct ExtensionBlocks {
    std::vector<WeightedSplit> c1, c2, d1, d2;
    double cover_weight = 0.0;
};

/// Solves the extension problem for one support pair via the min-weight
/// vertex cover of its incompatibility graph. Returns nothing when every
/// cover weighs >= 1 - 1e-12 (the pair satisfies P3). Throws DegenerateCover
/// when a sub-1 cover leaves a block empty, which signals a split compatible
/// with the entire opposite side (unresolved input).
std::optional<ExtensionBlocks> extension_problem(const SupportPair& p);

/// Replaces pairs[i] by (C1,D1),(C2,D2) and re-validates (P1) and (P2).
Support refine_support(Support s, std::size_t i, const ExtensionBlocks& blocks);

/// GTP core for trees with disjoint split sets; both sides non-empty.
struct GtpOutcome {
    double distance = 0.0;
    Support support;
};
GtpOutcome gtp_disjoint(std::vector<WeightedSplit> A, std::vector<WeightedSplit> B);

/// Projection of one side of a shared split C|D. The collapsed opposite
/// side keeps a stand-in label: the root label 0 when the original root was
/// collapsed, a fresh leaf label otherwise, so every projected edge stays an
/// internal edge and cross-compatibilities carry over exactly.
struct SideProjection {
    int sub_n = 0;
    std::vector<int> to_sub;    // original label -> sub label (-1 when absent)
    std::vector<int> from_sub;  // sub label -> original label (-1 for the stand-in)
    std::vector<WeightedSplit> first;   // projected splits of the first tree
    std::vector<WeightedSplit> second;  // projected splits of the second tree
};

struct CommonEdgeSplit {
    SideProjection zero_side;   // the block containing label 0
    SideProjection other_side;
};

/// Splits both trees' split lists at a shared split. Throws DomainError when
/// the split is missing from either list.
CommonEdgeSplit common_edge_split(const std::vector<WeightedSplit>& t1,
                                  const std::vector<WeightedSplit>& t2,
                                  const Split& shared);

struct GeodesicComponent {
    std::optional<Split> shared;  // original-label shared split, when any
    Support support;              // final support (disjoint components only)
    double term = 0.0;            // contribution to distance^2
};

struct GeodesicResult {
    double distance = 0.0;
    std::vector<GeodesicComponent> components;
    std::vector<std::string> notes;
};

/// Full geodesic distance: recursive shared-split decomposition on top of
/// the GTP core. Leaf edges do not participate; differing leaf weights are
/// surfaced in `notes`.
GeodesicResult geodesic_distance(const Tree& t1, const Tree& t2);

} // namespace treedist

#endif
