#include "maxflow.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "error.hpp"

namespace treedist {

namespace {

// Bottlenecks at or below this are treated as exhausted capacity; augmenting
// over denormal-sized residuals can stall the loop on real weights.
constexpr double kEps = 1e-15;

}

IncompatGraph build_incompat_graph(const std::vector<std::pair<Split, double>>& A,
                                   const std::vector<std::pair<Split, double>>& B) {
    if (A.empty() || B.empty())
        throw DomainError("incompatibility graph needs splits on both sides");
    IncompatGraph g;
    g.left = A;
    g.right = B;
    auto by_split = [](const auto& x, const auto& y) { return split_less(x.first, y.first); };
    std::sort(g.left.begin(), g.left.end(), by_split);
    std::sort(g.right.begin(), g.right.end(), by_split);

    double na2 = 0.0, nb2 = 0.0;
    for (auto& [s, w] : g.left) na2 += w * w;
    for (auto& [s, w] : g.right) nb2 += w * w;
    if (na2 <= 0.0 || nb2 <= 0.0)
        throw DomainError("support pair with zero norm");
    for (auto& [s, w] : g.left) w = w * w / na2;
    for (auto& [s, w] : g.right) w = w * w / nb2;

    for (int i = 0; i < static_cast<int>(g.left.size()); ++i)
        for (int j = 0; j < static_cast<int>(g.right.size()); ++j)
            if (!compatible(g.left[i].first, g.right[j].first)) g.arcs.emplace_back(i, j);
    return g;
}

FlowResult edmonds_karp(const IncompatGraph& g) {
    const int L = static_cast<int>(g.left.size());
    const int R = static_cast<int>(g.right.size());
    FlowResult res;

    std::vector<double> fl(L, 0.0), fr(R, 0.0);         // source/sink arc saturation
    std::vector<double> arc_flow(g.arcs.size(), 0.0);   // flow on the infinite middle arcs
    std::vector<std::vector<int>> arcs_of_left(L), arcs_of_right(R);
    for (std::size_t a = 0; a < g.arcs.size(); ++a) {
        arcs_of_left[g.arcs[a].first].push_back(static_cast<int>(a));
        arcs_of_right[g.arcs[a].second].push_back(static_cast<int>(a));
    }

    // Phase 1: every source->left->right->sink path has length 3; saturate
    // each arc directly in canonical order.
    for (std::size_t a = 0; a < g.arcs.size(); ++a) {
        auto [i, j] = g.arcs[a];
        double delta = std::min(g.left[i].second - fl[i], g.right[j].second - fr[j]);
        if (delta > 0.0) {
            fl[i] += delta;
            fr[j] += delta;
            arc_flow[a] += delta;
        }
        ++res.phase1_arcs;
    }

    // Phase 2: shortest augmenting paths in the residual graph. Forward
    // middle arcs are always available; backward traversal needs positive
    // arc flow to cancel.
    // BFS vertices: 0..L-1 left, L..L+R-1 right.
    std::vector<int> pred_arc(L + R);
    std::vector<int> pred_vertex(L + R);
    for (;;) {
        std::fill(pred_arc.begin(), pred_arc.end(), -2);
        std::deque<int> queue;
        for (int i = 0; i < L; ++i) {
            if (g.left[i].second - fl[i] > kEps) {
                pred_arc[i] = -1; // reached from source
                queue.push_back(i);
            }
        }
        int sink_entry = -1;
        while (!queue.empty() && sink_entry < 0) {
            int u = queue.front();
            queue.pop_front();
            if (u < L) {
                for (int a : arcs_of_left[u]) {
                    int v = L + g.arcs[a].second;
                    if (pred_arc[v] != -2) continue;
                    pred_arc[v] = a;
                    pred_vertex[v] = u;
                    int j = g.arcs[a].second;
                    if (g.right[j].second - fr[j] > kEps) {
                        sink_entry = v;
                        break;
                    }
                    queue.push_back(v);
                }
            } else {
                int j = u - L;
                for (int a : arcs_of_right[j]) {
                    if (arc_flow[a] <= kEps) continue; // no flow to cancel
                    int v = g.arcs[a].first;
                    if (pred_arc[v] != -2) continue;
                    pred_arc[v] = a;
                    pred_vertex[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if (sink_entry < 0) break;

        // bottleneck along source cap, backward arc flows, sink cap
        double delta = g.right[sink_entry - L].second - fr[sink_entry - L];
        for (int v = sink_entry; pred_arc[v] != -1; v = pred_vertex[v]) {
            if (v < L) delta = std::min(delta, arc_flow[pred_arc[v]]); // backward hop
        }
        {
            int v = sink_entry;
            while (pred_arc[v] != -1) v = pred_vertex[v];
            delta = std::min(delta, g.left[v].second - fl[v]);
        }
        if (delta <= kEps) break;

        fr[sink_entry - L] += delta;
        for (int v = sink_entry; pred_arc[v] != -1; v = pred_vertex[v]) {
            int a = pred_arc[v];
            if (v >= L)
                arc_flow[a] += delta; // forward middle arc
            else
                arc_flow[a] -= delta; // backward: cancel flow
        }
        {
            int v = sink_entry;
            while (pred_arc[v] != -1) v = pred_vertex[v];
            fl[v] += delta;
        }
        ++res.augmenting_paths;
    }

    // Phase 3: reachability from the source in the final residual graph.
    res.left_reachable.assign(L, false);
    res.right_reachable.assign(R, false);
    std::deque<int> queue;
    for (int i = 0; i < L; ++i) {
        if (g.left[i].second - fl[i] > kEps) {
            res.left_reachable[i] = true;
            queue.push_back(i);
        }
    }
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        if (u < L) {
            for (int a : arcs_of_left[u]) {
                int j = g.arcs[a].second;
                if (!res.right_reachable[j]) {
                    res.right_reachable[j] = true;
                    queue.push_back(L + j);
                }
            }
        } else {
            int j = u - L;
            for (int a : arcs_of_right[j]) {
                if (arc_flow[a] <= kEps) continue;
                int i = g.arcs[a].first;
                if (!res.left_reachable[i]) {
                    res.left_reachable[i] = true;
                    queue.push_back(i);
                }
            }
        }
    }

    for (int i = 0; i < L; ++i) res.maxflow += fl[i];
    return res;
}

CoverResult min_weight_vertex_cover(const IncompatGraph& g) {
    FlowResult f = edmonds_karp(g);
    CoverResult c;
    c.weight = f.maxflow;
    for (int i = 0; i < static_cast<int>(g.left.size()); ++i)
        if (!f.left_reachable[i]) c.left.push_back(i);
    for (int j = 0; j < static_cast<int>(g.right.size()); ++j)
        if (f.right_reachable[j]) c.right.push_back(j);
    return c;
}

} // namespace treedist
