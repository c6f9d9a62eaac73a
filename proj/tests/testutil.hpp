#ifndef TREEDIST_TESTS_TESTUTIL_HPP
#define TREEDIST_TESTS_TESTUTIL_HPP

#include <random>
#include <vector>

#include "core/geodesic.hpp"
#include "core/tree.hpp"
#include "oracle/oracle.hpp"

namespace testutil {

using Rng = std::mt19937_64;

// Random binary topology by random leaf insertion; weights uniform in (0,1]
// unless unit_weights is set.
inline treedist::Tree random_binary_tree(int n, Rng& rng, bool unit_weights = false) {
    std::vector<int> parent = {-1, 0, 0};
    std::vector<int> label = {0, 1, 2};
    for (int leaf = 3; leaf <= n; ++leaf) {
        int V = static_cast<int>(parent.size());
        // insertion points: every edge (V-1 of them) plus one above the root
        std::uniform_int_distribution<int> pick(0, V - 1);
        int choice = pick(rng);
        std::vector<int> edges;
        for (int v = 0; v < V; ++v)
            if (parent[v] != -1) edges.push_back(v);
        if (choice < static_cast<int>(edges.size())) {
            int v = edges[choice];
            int mid = V;
            parent.push_back(parent[v]);
            label.push_back(0);
            parent.push_back(mid);
            label.push_back(leaf);
            parent[v] = mid;
        } else {
            int old_root = 0;
            for (int v = 0; v < V; ++v)
                if (parent[v] == -1) old_root = v;
            int new_root = V;
            parent.push_back(-1);
            label.push_back(0);
            parent.push_back(new_root);
            label.push_back(leaf);
            parent[old_root] = new_root;
        }
    }
    std::uniform_real_distribution<double> uw(0.0, 1.0);
    std::vector<double> weight(parent.size(), 1.0);
    if (!unit_weights) {
        for (std::size_t v = 0; v < parent.size(); ++v) {
            if (parent[v] == -1) continue;
            double w = 0.0;
            while (w <= 0.0) w = uw(rng); // uniform in (0,1]
            weight[v] = w;
        }
    }
    // parent[0] may no longer be the root after above-root insertions
    int root = 0;
    for (std::size_t v = 0; v < parent.size(); ++v)
        if (parent[v] == -1) root = static_cast<int>(v);
    if (root != 0) {
        int V = static_cast<int>(parent.size());
        std::vector<int> remap(V);
        remap[root] = 0;
        int next = 1;
        for (int v = 0; v < V; ++v)
            if (v != root) remap[v] = next++;
        std::vector<int> p2(V), l2(V);
        std::vector<double> w2(V);
        for (int v = 0; v < V; ++v) {
            p2[remap[v]] = parent[v] == -1 ? -1 : remap[parent[v]];
            l2[remap[v]] = label[v];
            w2[remap[v]] = weight[v];
        }
        return treedist::Tree(std::move(p2), std::move(l2), std::move(w2));
    }
    return treedist::Tree(std::move(parent), std::move(label), std::move(weight));
}

// Re-randomize all edge weights, keeping the topology.
inline treedist::Tree reweight(const treedist::Tree& t, Rng& rng) {
    std::uniform_real_distribution<double> uw(0.0, 1.0);
    int V = t.vertex_count();
    std::vector<int> parent(V), label(V);
    std::vector<double> weight(V, 0.0);
    for (int v = 0; v < V; ++v) {
        parent[v] = t.parent(v);
        label[v] = t.label(v);
        if (v != 0) {
            double w = 0.0;
            while (w <= 0.0) w = uw(rng);
            weight[v] = w;
        }
    }
    return treedist::Tree(std::move(parent), std::move(label), std::move(weight));
}

// Apply a label permutation (perm[i] in 1..n for i in 1..n) to the leaves.
inline treedist::Tree relabel(const treedist::Tree& t, const std::vector<int>& perm) {
    int V = t.vertex_count();
    std::vector<int> parent(V), label(V);
    std::vector<double> weight(V);
    for (int v = 0; v < V; ++v) {
        parent[v] = t.parent(v);
        label[v] = t.label(v) == 0 ? 0 : perm[t.label(v)];
        weight[v] = t.weight(v);
    }
    return treedist::Tree(std::move(parent), std::move(label), std::move(weight));
}

inline std::vector<oracle::OSplit> to_osplits(const std::vector<treedist::WeightedSplit>& ws) {
    std::vector<oracle::OSplit> out;
    out.reserve(ws.size());
    for (const auto& w : ws) out.push_back({w.split.n(), w.split.side(), w.weight});
    return out;
}

inline std::vector<treedist::WeightedSplit> tree_wsplits(const treedist::Tree& t) {
    std::vector<treedist::WeightedSplit> out;
    for (auto& [s, w] : treedist::weighted_splits_of(t))
        if (w > 0.0) out.push_back({s, w, s});
    return out;
}

// Oracle-backed full geodesic: decompose at shared splits with the engine's
// projection, solve each disjoint leaf with the brute-force support search,
// recombine by the square-sum rule.
inline double oracle_full_geodesic(std::vector<treedist::WeightedSplit> a,
                                   std::vector<treedist::WeightedSplit> b) {
    const treedist::Split* shared = nullptr;
    double w1 = 0, w2 = 0;
    for (const auto& x : a)
        for (const auto& y : b)
            if (x.split == y.split)
                if (!shared || treedist::split_less(x.split, *shared)) {
                    shared = &x.split;
                    w1 = x.weight;
                    w2 = y.weight;
                }
    if (shared) {
        auto parts = treedist::common_edge_split(a, b, *shared);
        double dz = oracle_full_geodesic(parts.zero_side.first, parts.zero_side.second);
        double dy = oracle_full_geodesic(parts.other_side.first, parts.other_side.second);
        return std::sqrt(dz * dz + dy * dy + (w1 - w2) * (w1 - w2));
    }
    if (a.empty() && b.empty()) return 0.0;
    if (a.empty() || b.empty()) {
        double s = 0.0;
        for (const auto& x : (a.empty() ? b : a)) s += x.weight * x.weight;
        return std::sqrt(s);
    }
    return oracle::brute_geodesic(to_osplits(a), to_osplits(b));
}

} // namespace testutil

#endif
