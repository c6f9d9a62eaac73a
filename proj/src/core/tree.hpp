#ifndef TREEDIST_CORE_TREE_HPP
#define TREEDIST_CORE_TREE_HPP

#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace treedist {

/// Rooted leaf-labeled weighted tree over the label set {0,1,...,n}.
///
/// Label 0 is reserved for the root; labels 1..n sit on the leaves. The
/// structure is immutable after construction and safe to share between
/// threads. Vertices are dense indices with the root at index 0; every
/// non-root vertex stores the weight of the edge to its parent.
///
/// Validity (checked on construction):
///   - the root has >= 2 children, every other internal vertex has >= 2
///     children (so no suppressible degree-2 vertices exist),
///   - leaves carry the labels 1..n exactly once each,
///   - all edge weights are >= 0.
class Tree {
public:
    // Builds a tree from parent/label/weight arrays. parent[0] must be -1;
    // label[v] == 0 for internal vertices (including the root), else the
    // leaf label. Throws LabelError/ShapeError on invalid structure.
    Tree(std::vector<int> parent, std::vector<int> label, std::vector<double> weight);

    int leaf_count() const { return n_; }
    int vertex_count() const { return static_cast<int>(parent_.size()); }
    int root() const { return 0; }

    int parent(int v) const { return parent_[v]; }
    const std::vector<int>& children(int v) const { return children_[v]; }
    bool is_leaf(int v) const { return children_[v].empty(); }
    int label(int v) const { return label_[v]; }          // 0 for internal/root
    double weight(int v) const { return weight_[v]; }      // parent-edge weight
    int depth(int v) const { return depth_[v]; }
    int min_leaf(int v) const { return min_leaf_[v]; }     // smallest leaf label below v
    int leaf_vertex(int lbl) const;                        // vertex carrying label lbl

    // Internal edges, identified by their deeper endpoint: non-root vertices
    // that are not leaves.
    const std::vector<int>& internal_edges() const { return internal_edges_; }

    int lca(int u, int v) const;
    bool is_binary() const;

    double total_weight() const;

    // Topology-only canonical form (children ordered by min descendant leaf,
    // weights omitted). Equal strings <=> identical trees.
    const std::string& topology_key() const { return topology_key_; }

private:
    int n_ = 0;
    std::vector<int> parent_;
    std::vector<std::vector<int>> children_;
    std::vector<int> label_;
    std::vector<double> weight_;
    std::vector<int> depth_;
    std::vector<int> min_leaf_;
    std::vector<int> leaf_vertex_;
    std::vector<int> internal_edges_;
    std::string topology_key_;
};

/// Parses a rooted Newick string with integer leaf labels 1..n.
/// Missing branch lengths default to 1.0. Single-child groups are rejected
/// (they would create a suppressible degree-2 vertex).
Tree parse_newick(const std::string& text);

/// Serializes a tree deterministically: children in ascending order of their
/// minimum descendant leaf label, every edge with an explicit ':w'.
std::string serialize_newick(const Tree& t);

/// True when the two trees are identical including edge weights
/// (weights compared exactly).
bool weight_identical(const Tree& a, const Tree& b);

/// Cluster (Day) representation: one leaf-label set per internal edge.
/// Singleton clusters are omitted; the sets form a laminar family.
std::set<std::vector<int>> clades(const Tree& t);

/// Path length between two leaves; edge count when weighted == false.
double leaf_path_length(const Tree& t, int a, int b, bool weighted);

/// Collapses the internal edge above `edge_vertex` into its parent.
/// Throws LeafEdgeError when the vertex is a leaf.
Tree contract(const Tree& t, int edge_vertex);

/// (2n-3)!! — the number of distinct binary topologies on n leaves.
/// Throws OverflowError instead of wrapping.
std::uint64_t count_binary_topologies(int n);

/// All binary topologies on n leaves (unit weights), n <= 8.
std::vector<Tree> enumerate_binary_topologies(int n);

} // namespace treedist

#endif
