#ifndef TREEDIST_CORE_MAXFLOW_HPP
#define TREEDIST_CORE_MAXFLOW_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "split.hpp"

namespace treedist {

/// Vertex-weighted bipartite incompatibility graph. The implicit flow
/// network attaches a source to every left vertex (capacity = vertex weight)
/// and every right vertex to a sink (capacity = vertex weight); the middle
/// arcs have infinite capacity, so they never bound a bottleneck.
struct IncompatGraph {
    std::vector<std::pair<Split, double>> left;   // weight = w^2 / ||A||^2
    std::vector<std::pair<Split, double>> right;  // weight = w^2 / ||B||^2
    std::vector<std::pair<int, int>> arcs;        // (left index, right index)
};

/// Builds the incompatibility graph for a support pair: vertices ordered by
/// canonical split order, weights squared-normalized per side, one arc per
/// incompatible cross pair. Throws DomainError when a side is empty or has
/// zero norm.
IncompatGraph build_incompat_graph(const std::vector<std::pair<Split, double>>& A,
                                   const std::vector<std::pair<Split, double>>& B);

struct FlowResult {
    double maxflow = 0.0;
    // Vertices reachable from the source in the final residual graph
    // (the U1 cut block, source excluded).
    std::vector<bool> left_reachable;
    std::vector<bool> right_reachable;
    // run counters, exposed for tests
    std::size_t phase1_arcs = 0;
    std::size_t augmenting_paths = 0;
};

/// Revised Edmonds-Karp. Phase 1 saturates each arc directly; phase 2 pushes
/// flow along shortest residual paths found by BFS (backward arcs carry the
/// middle-arc flow); phase 3 reports source-side reachability.
FlowResult edmonds_karp(const IncompatGraph& g);

struct CoverResult {
    std::vector<int> left;   // indices into g.left
    std::vector<int> right;  // indices into g.right
    double weight = 0.0;     // equals maxflow by the cut<->cover theorem
};

CoverResult min_weight_vertex_cover(const IncompatGraph& g);

} // namespace treedist

#endif
