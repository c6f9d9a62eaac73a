#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <stdexcept>

namespace oracle {

namespace {

std::vector<int> complement_of(const OSplit& s) {
    std::vector<int> out;
    for (int x = 0; x <= s.n; ++x)
        if (!std::binary_search(s.block.begin(), s.block.end(), x)) out.push_back(x);
    return out;
}

bool disjoint(const std::vector<int>& a, const std::vector<int>& b) {
    for (int x : a)
        if (std::binary_search(b.begin(), b.end(), x)) return false;
    return true;
}

double norm(const std::vector<OSplit>& xs, const std::vector<int>& members) {
    double s = 0.0;
    for (int i : members) s += xs[i].weight * xs[i].weight;
    return std::sqrt(s);
}

// All surjections of m elements onto k blocks, as assignment vectors.
std::vector<std::vector<int>> surjections(int m, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> a(m, 0);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == m) {
            std::vector<bool> used(k, false);
            for (int x : a) used[x] = true;
            for (bool u : used)
                if (!u) return;
            out.push_back(a);
            return;
        }
        for (int b = 0; b < k; ++b) {
            a[pos] = b;
            rec(pos + 1);
        }
    };
    rec(0);
    return out;
}

struct SupportCandidate {
    std::vector<std::vector<int>> A, B; // member indices per block
};

template <typename Fn>
void for_each_p1_support(const std::vector<OSplit>& A, const std::vector<OSplit>& B,
                         std::vector<std::vector<bool>>& compat, Fn&& fn) {
    const int ma = static_cast<int>(A.size());
    const int mb = static_cast<int>(B.size());
    for (int k = 1; k <= std::min(ma, mb); ++k) {
        auto pas = surjections(ma, k);
        auto pbs = surjections(mb, k);
        for (const auto& pa : pas) {
            std::vector<std::vector<int>> blocksA(k);
            for (int e = 0; e < ma; ++e) blocksA[pa[e]].push_back(e);
            for (const auto& pb : pbs) {
                std::vector<std::vector<int>> blocksB(k);
                for (int e = 0; e < mb; ++e) blocksB[pb[e]].push_back(e);
                bool p1 = true;
                for (int i = 1; i < k && p1; ++i)
                    for (int j = 0; j < i && p1; ++j)
                        for (int x : blocksA[i])
                            for (int y : blocksB[j])
                                if (!compat[x][y]) {
                                    p1 = false;
                                    break;
                                }
                if (!p1) continue;
                fn(SupportCandidate{blocksA, blocksB});
            }
        }
    }
}

bool p2_holds(const std::vector<OSplit>& A, const std::vector<OSplit>& B,
              const SupportCandidate& c) {
    double prev = -1.0;
    for (std::size_t i = 0; i < c.A.size(); ++i) {
        double r = norm(A, c.A[i]) / norm(B, c.B[i]);
        if (prev >= 0.0 && r < prev - 1e-12 * std::max(1.0, prev)) return false;
        prev = std::max(prev, r);
    }
    return true;
}

double formula(const std::vector<OSplit>& A, const std::vector<OSplit>& B,
               const SupportCandidate& c) {
    double acc = 0.0;
    for (std::size_t i = 0; i < c.A.size(); ++i) {
        double t = norm(A, c.A[i]) + norm(B, c.B[i]);
        acc += t * t;
    }
    return std::sqrt(acc);
}

// P3 for one pair: no partitions (C1,C2)/(D1,D2) with C2 and D1 non-empty,
// C2 compatible with D1, and ||C1||/||D1|| < ||C2||/||D2||. C1 and D2 may
// be empty: that matches the cover reading (C1 u D2 is a sub-1 cover), and
// the empty-cover case is what rules out fully compatible pairs.
bool p3_pair(const std::vector<OSplit>& A, const std::vector<OSplit>& B,
             const std::vector<int>& ai, const std::vector<int>& bi,
             std::vector<std::vector<bool>>& compat) {
    const int ma = static_cast<int>(ai.size());
    const int mb = static_cast<int>(bi.size());
    for (unsigned ca = 0; ca + 1 < (1u << ma); ++ca) { // c2 stays non-empty
        std::vector<int> c1, c2;
        for (int e = 0; e < ma; ++e)
            ((ca >> e) & 1 ? c1 : c2).push_back(ai[e]);
        for (unsigned db = 1; db < (1u << mb); ++db) { // d1 stays non-empty
            std::vector<int> d1, d2;
            for (int e = 0; e < mb; ++e)
                ((db >> e) & 1 ? d1 : d2).push_back(bi[e]);
            bool cross_ok = true;
            for (int x : c2)
                for (int y : d1)
                    if (!compat[x][y]) {
                        cross_ok = false;
                        break;
                    }
            if (!cross_ok) continue;
            // compare as ||C1||*||D2|| < ||C2||*||D1|| so empty C1/D2 work
            if (norm(A, c1) * norm(B, d2) < norm(A, c2) * norm(B, d1) - 1e-15) return false;
        }
    }
    return true;
}

std::vector<std::vector<bool>> compat_table(const std::vector<OSplit>& A,
                                            const std::vector<OSplit>& B) {
    std::vector<std::vector<bool>> t(A.size(), std::vector<bool>(B.size()));
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < B.size(); ++j) t[i][j] = osplit_compatible(A[i], B[j]);
    return t;
}

void check_sizes(const std::vector<OSplit>& A, const std::vector<OSplit>& B) {
    if (A.size() > 5 || B.size() > 5)
        throw std::runtime_error("brute geodesic is capped at 5 splits per side");
    if (A.empty() || B.empty())
        throw std::runtime_error("brute geodesic needs non-empty sides");
}

} // namespace

bool osplit_compatible(const OSplit& a, const OSplit& b) {
    std::vector<int> ca = complement_of(a), cb = complement_of(b);
    return disjoint(a.block, b.block) || disjoint(a.block, cb) || disjoint(ca, b.block) ||
           disjoint(ca, cb);
}

double brute_geodesic(const std::vector<OSplit>& A, const std::vector<OSplit>& B) {
    check_sizes(A, B);
    auto compat = compat_table(A, B);
    double best = std::numeric_limits<double>::infinity();
    for_each_p1_support(A, B, compat, [&](const SupportCandidate& c) {
        if (!p2_holds(A, B, c)) return;
        best = std::min(best, formula(A, B, c));
    });
    return best;
}

double brute_geodesic_p3(const std::vector<OSplit>& A, const std::vector<OSplit>& B) {
    check_sizes(A, B);
    auto compat = compat_table(A, B);
    double value = std::numeric_limits<double>::quiet_NaN();
    for_each_p1_support(A, B, compat, [&](const SupportCandidate& c) {
        if (!p2_holds(A, B, c)) return;
        for (std::size_t i = 0; i < c.A.size(); ++i)
            if (!p3_pair(A, B, c.A[i], c.B[i], compat)) return;
        double f = formula(A, B, c);
        if (std::isnan(value)) {
            value = f;
        } else if (std::abs(value - f) > 1e-9 * std::max(1.0, value)) {
            throw std::runtime_error("distinct geodesic values among P1+P2+P3 supports");
        }
    });
    if (std::isnan(value)) throw std::runtime_error("no P1+P2+P3 support found");
    return value;
}

BruteCover brute_min_cover(const treedist::IncompatGraph& g) {
    const int L = static_cast<int>(g.left.size());
    const int R = static_cast<int>(g.right.size());
    const int V = L + R;
    if (V > 20) throw std::runtime_error("brute cover is capped at 20 vertices");
    BruteCover best;
    best.weight = std::numeric_limits<double>::infinity();
    std::vector<int> best_set;
    for (unsigned long long m = 0; m < (1ull << V); ++m) {
        bool covers = true;
        for (auto& [i, j] : g.arcs) {
            if (!((m >> i) & 1) && !((m >> (L + j)) & 1)) {
                covers = false;
                break;
            }
        }
        if (!covers) continue;
        double w = 0.0;
        std::vector<int> members;
        for (int v = 0; v < V; ++v) {
            if ((m >> v) & 1) {
                w += (v < L) ? g.left[v].second : g.right[v - L].second;
                members.push_back(v);
            }
        }
        if (w < best.weight - 1e-15 ||
            (std::abs(w - best.weight) <= 1e-15 && members < best_set)) {
            best.weight = w;
            best_set = members;
        }
    }
    best.left.clear();
    best.right.clear();
    for (int v : best_set)
        (v < L ? best.left : best.right).push_back(v < L ? v : v - L);
    return best;
}

double brute_min_cut(const treedist::IncompatGraph& g) {
    // U ranges over the non-source vertices kept on the source side; arcs
    // crossing left->right have infinite capacity, so any U separating an
    // arc's endpoints that way is infeasible.
    const int L = static_cast<int>(g.left.size());
    const int R = static_cast<int>(g.right.size());
    const int V = L + R;
    if (V > 20) throw std::runtime_error("brute cut is capped at 20 vertices");
    double best = std::numeric_limits<double>::infinity();
    for (unsigned long long m = 0; m < (1ull << V); ++m) {
        bool feasible = true;
        for (auto& [i, j] : g.arcs) {
            if (((m >> i) & 1) && !((m >> (L + j)) & 1)) {
                feasible = false;
                break;
            }
        }
        if (!feasible) continue;
        double w = 0.0;
        for (int i = 0; i < L; ++i)
            if (!((m >> i) & 1)) w += g.left[i].second; // source arc crosses
        for (int j = 0; j < R; ++j)
            if ((m >> (L + j)) & 1) w += g.right[j].second; // sink arc crosses
        best = std::min(best, w);
    }
    return best;
}

int brute_rf(const treedist::Tree& a, const treedist::Tree& b) {
    auto clade_sets = [](const treedist::Tree& t) {
        std::set<std::set<int>> out;
        std::function<std::set<int>(int)> walk = [&](int v) {
            std::set<int> leaves;
            if (t.is_leaf(v)) {
                leaves.insert(t.label(v));
                return leaves;
            }
            for (int c : t.children(v)) {
                auto sub = walk(c);
                leaves.insert(sub.begin(), sub.end());
            }
            if (v != t.root() && leaves.size() >= 2) out.insert(leaves);
            return leaves;
        };
        walk(t.root());
        return out;
    };
    auto ca = clade_sets(a);
    auto cb = clade_sets(b);
    int diff = 0;
    for (const auto& c : ca)
        if (!cb.count(c)) ++diff;
    for (const auto& c : cb)
        if (!ca.count(c)) ++diff;
    return diff;
}

} // namespace oracle
