#include "metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>

#include "bitmask.hpp"
#include "error.hpp"
#include "hungarian.hpp"
#include "split.hpp"

namespace treedist {

namespace {

void require_same_labels(const Tree& a, const Tree& b) {
    if (a.leaf_count() != b.leaf_count())
        throw LabelSetMismatch("trees have " + std::to_string(a.leaf_count()) + " and " +
                               std::to_string(b.leaf_count()) + " leaves");
}

// Leaf-label set below every vertex, as sorted vectors.
std::vector<std::vector<int>> labels_below(const Tree& t) {
    std::vector<std::vector<int>> below(t.vertex_count());
    std::vector<int> order(t.vertex_count());
    for (int v = 0; v < t.vertex_count(); ++v) order[v] = v;
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return t.depth(x) > t.depth(y); });
    for (int v : order) {
        if (t.is_leaf(v)) {
            below[v] = {t.label(v)};
        } else {
            for (int c : t.children(v))
                below[v].insert(below[v].end(), below[c].begin(), below[c].end());
            std::sort(below[v].begin(), below[v].end());
        }
    }
    return below;
}

// Partition of {1..n} induced by an edge, keyed by the block containing 1.
std::vector<int> partition_key(const std::vector<int>& clade, int n) {
    if (std::binary_search(clade.begin(), clade.end(), 1)) return clade;
    std::vector<int> other;
    other.reserve(n - clade.size());
    std::size_t j = 0;
    for (int x = 1; x <= n; ++x) {
        if (j < clade.size() && clade[j] == x) {
            ++j;
            continue;
        }
        other.push_back(x);
    }
    return other;
}

LabelMask clade_mask(const std::vector<int>& clade, int n) {
    LabelMask m(n + 1);
    for (int x : clade) m.set(x);
    return m;
}

} // namespace

std::vector<std::string> DistanceReport::flag_names() const {
    std::vector<std::string> out;
    if (ambiguous) out.push_back("ambiguous");
    if (not_symmetric_input) out.push_back("not-symmetric-input");
    if (degenerate) out.push_back("degenerate");
    return out;
}

DistanceReport rf(const Tree& a, const Tree& b) {
    require_same_labels(a, b);
    auto ca = clades(a);
    auto cb = clades(b);
    int shared = 0;
    for (const auto& c : ca) shared += cb.count(c);
    DistanceReport r;
    r.metric = "rf";
    r.value = static_cast<double>(ca.size() + cb.size() - 2 * shared);
    return r;
}

Tree strict_consensus(const std::vector<Tree>& ts) {
    if (ts.empty()) throw InvalidArgument("strict consensus needs at least one tree");
    const Tree& first = ts.front();
    const int n = first.leaf_count();
    for (const Tree& t : ts) require_same_labels(first, t);

    std::set<std::vector<int>> shared = clades(first);
    for (std::size_t i = 1; i < ts.size(); ++i) {
        auto ci = clades(ts[i]);
        for (auto it = shared.begin(); it != shared.end();) {
            if (!ci.count(*it))
                it = shared.erase(it);
            else
                ++it;
        }
    }

    // weights from the first input
    std::map<std::vector<int>, double> first_weight;
    auto below = labels_below(first);
    for (int v : first.internal_edges()) first_weight[below[v]] = first.weight(v);
    std::vector<double> leaf_weights(n + 1, 1.0);
    for (int lbl = 1; lbl <= n; ++lbl)
        leaf_weights[lbl] = first.weight(first.leaf_vertex(lbl));

    std::vector<std::pair<Split, double>> splits;
    for (const auto& c : shared) splits.emplace_back(Split(n, c), first_weight.at(c));
    return tree_from_splits(n, splits, leaf_weights);
}

DistanceReport rfl(const Tree& a, const Tree& b) {
    require_same_labels(a, b);
    const int n = a.leaf_count();
    DistanceReport r;
    r.metric = "rfl";

    // Edges keyed by the labels below them: in a minimal tree the rooted
    // split this induces is unique per edge, so matching is a bijection on
    // the shared keys.
    auto below_a = labels_below(a);
    auto below_b = labels_below(b);
    std::map<std::vector<int>, double> ea, eb;
    for (int v = 1; v < a.vertex_count(); ++v) ea[below_a[v]] = a.weight(v);
    for (int v = 1; v < b.vertex_count(); ++v) eb[below_b[v]] = b.weight(v);

    double unmatched_a = 0.0, unmatched_b = 0.0, matched = 0.0;
    for (auto& [k, w] : ea) {
        auto it = eb.find(k);
        if (it == eb.end())
            unmatched_a += w;
        else
            matched += std::abs(w - it->second);
    }
    for (auto& [k, w] : eb)
        if (!ea.count(k)) unmatched_b += w;
    r.value = unmatched_a + unmatched_b + matched;

    // The leaf-label partition (root label dropped) does not always identify
    // an edge: clades mirrored across a degree-2 root collide. When the two
    // trees carry different numbers of edges for a shared partition, the
    // partition-level matching function is not unique and the distance as
    // originally formulated is ill-defined.
    std::map<std::vector<int>, std::pair<int, int>> pcount;
    for (int v = 1; v < a.vertex_count(); ++v) pcount[partition_key(below_a[v], n)].first++;
    for (int v = 1; v < b.vertex_count(); ++v) pcount[partition_key(below_b[v], n)].second++;
    for (auto& [key, cnt] : pcount) {
        if (cnt.first > 0 && cnt.second > 0 && cnt.first != cnt.second) {
            r.ambiguous = true;
            r.not_symmetric_input = true;
            r.notes.push_back("partition has " + std::to_string(cnt.first) + " carrier edge(s) in the first tree and " +
                              std::to_string(cnt.second) + " in the second; the partition-level matching is not unique");
        }
    }
    return r;
}

namespace {

// Quartet restriction class: 0 = unresolved, else 1/2/3 identifying which of
// q[1..3] pairs with q[0]. At most one internal split induces a 2|2 pattern
// on a fixed quartet (two splits inducing different pairings would be
// incompatible).
int quartet_class(const std::vector<LabelMask>& splits, const int q[4]) {
    for (const LabelMask& m : splits) {
        int in = m.test(q[0]) + m.test(q[1]) + m.test(q[2]) + m.test(q[3]);
        if (in != 2) continue;
        bool p0 = m.test(q[0]);
        for (int i = 1; i < 4; ++i)
            if (m.test(q[i]) == p0) return i;
    }
    return 0;
}

// Rooted triplet class via pairwise LCA depths: 0 unresolved, else 1 = {i,j}
// closest, 2 = {i,k}, 3 = {j,k}.
int triplet_class(const Tree& t, int i, int j, int k) {
    int vi = t.leaf_vertex(i), vj = t.leaf_vertex(j), vk = t.leaf_vertex(k);
    int dij = t.depth(t.lca(vi, vj));
    int dik = t.depth(t.lca(vi, vk));
    int djk = t.depth(t.lca(vj, vk));
    if (dij == dik && dik == djk) return 0;
    if (dij > dik && dij > djk) return 1;
    if (dik > dij && dik > djk) return 2;
    return 3;
}

std::vector<LabelMask> internal_clade_masks(const Tree& t) {
    std::vector<LabelMask> ms;
    auto below = labels_below(t);
    for (int v : t.internal_edges()) ms.push_back(clade_mask(below[v], t.leaf_count()));
    return ms;
}

} // namespace

DistanceReport quartet(const Tree& a, const Tree& b) {
    require_same_labels(a, b);
    const int n = a.leaf_count();
    if (n < 4) throw SizeError("quartet distance needs n >= 4");
    auto ma = internal_clade_masks(a);
    auto mb = internal_clade_masks(b);
    std::int64_t diff = 0;
    int q[4];
    for (q[0] = 1; q[0] <= n; ++q[0])
        for (q[1] = q[0] + 1; q[1] <= n; ++q[1])
            for (q[2] = q[1] + 1; q[2] <= n; ++q[2])
                for (q[3] = q[2] + 1; q[3] <= n; ++q[3])
                    if (quartet_class(ma, q) != quartet_class(mb, q)) ++diff;
    DistanceReport r;
    r.metric = "quartet";
    r.value = static_cast<double>(diff);
    return r;
}

DistanceReport triplet(const Tree& a, const Tree& b) {
    require_same_labels(a, b);
    const int n = a.leaf_count();
    if (n < 3) throw SizeError("triplet distance needs n >= 3");
    std::int64_t diff = 0;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k)
                if (triplet_class(a, i, j, k) != triplet_class(b, i, j, k)) ++diff;
    DistanceReport r;
    r.metric = "triplet";
    r.value = static_cast<double>(diff);
    return r;
}

DistanceReport triplet_length(const Tree& a, const Tree& b) {
    require_same_labels(a, b);
    const int n = a.leaf_count();
    if (n < 3) throw SizeError("triplet length distance needs n >= 3");
    double total = 0.0;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            for (int k = j + 1; k <= n; ++k) {
                if (triplet_class(a, i, j, k) != triplet_class(b, i, j, k)) continue;
                total += std::abs(leaf_path_length(a, i, j, true) - leaf_path_length(b, i, j, true));
                total += std::abs(leaf_path_length(a, i, k, true) - leaf_path_length(b, i, k, true));
            }
        }
    }
    DistanceReport r;
    r.metric = "triplet-length";
    r.value = total;
    return r;
}

namespace {

// Canonical form of the tree restricted to the leaves in `mask`, built by
// suppressing pass-through vertices on the fly. Equal strings <=> identical
// rooted restrictions.
std::string restriction_key(const Tree& t, std::uint32_t mask) {
    std::function<std::string(int)> walk = [&](int v) -> std::string {
        if (t.is_leaf(v)) {
            if (mask & (std::uint32_t{1} << t.label(v))) return std::to_string(t.label(v));
            return {};
        }
        std::vector<std::string> parts;
        for (int c : t.children(v)) {
            std::string s = walk(c);
            if (!s.empty()) parts.push_back(std::move(s));
        }
        if (parts.empty()) return {};
        if (parts.size() == 1) return parts[0];
        std::sort(parts.begin(), parts.end());
        std::string out = "(";
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) out += ',';
            out += parts[i];
        }
        out += ')';
        return out;
    };
    return walk(t.root());
}

} // namespace

DistanceReport mast(const Tree& a, const Tree& b) {
    require_same_labels(a, b);
    const int n = a.leaf_count();
    if (n > 16) throw SizeError("mast is brute-force only and capped at n = 16");
    std::vector<std::vector<std::uint32_t>> by_size(n + 1);
    for (std::uint32_t m = 1; m < (std::uint32_t{1} << n); ++m)
        by_size[std::popcount(m)].push_back(m << 1); // labels start at bit 1
    for (int t = n; t >= 1; --t) {
        for (std::uint32_t m : by_size[t]) {
            if (restriction_key(a, m) == restriction_key(b, m)) {
                DistanceReport r;
                r.metric = "mast";
                r.value = static_cast<double>(n - t);
                return r;
            }
        }
    }
    throw InternalInvariantViolation("mast found no agreeing subset");
}

DistanceReport align(const Tree& a, const Tree& b) {
    require_same_labels(a, b);
    const int n = a.leaf_count();
    auto ca = internal_clade_masks(a);
    auto cb = internal_clade_masks(b);
    const int m = static_cast<int>(std::max(ca.size(), cb.size()));
    DistanceReport r;
    r.metric = "align-score";
    if (ca.size() != cb.size()) {
        r.degenerate = true;
        r.notes.push_back("internal edge counts differ (" + std::to_string(ca.size()) + " vs " +
                          std::to_string(cb.size()) + "); padded with zero-score virtual edges");
    }
    if (m == 0) return r;

    auto score = [&](const LabelMask& A0, const LabelMask& B0) {
        int sa = A0.count(), sb = B0.count();
        int i = A0.and_count(B0);
        double a00 = static_cast<double>(i) / (sa + sb - i);
        double a11 = static_cast<double>(n - sa - sb + i) / (n - i);
        double a01 = static_cast<double>(sa - i) / (n - sb + i);
        double a10 = static_cast<double>(sb - i) / (n - sa + i);
        return std::max(std::min(a00, a11), std::min(a01, a10));
    };

    std::vector<std::vector<double>> cost(m, std::vector<double>(m, 0.0));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i < static_cast<int>(ca.size()) && j < static_cast<int>(cb.size()))
                cost[i][j] = -score(ca[i], cb[j]);
    std::vector<int> assign;
    r.value = -hungarian_min_cost(cost, assign);
    return r;
}

DistanceReport node_dist(const Tree& a, const Tree& b, int k) {
    require_same_labels(a, b);
    if (k != 1 && k != 2) throw InvalidArgument("node distance exponent must be 1 or 2");
    const int n = a.leaf_count();
    double sum = 0.0;
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            double d = std::abs(leaf_path_length(a, i, j, false) - leaf_path_length(b, i, j, false));
            sum += (k == 1) ? d : d * d;
        }
    }
    DistanceReport r;
    r.metric = (k == 1) ? "node" : "node2";
    r.value = 2.0 * sum / (static_cast<double>(n) * (n - 1));
    return r;
}

namespace {

// Internal vertices in canonical preorder; the class-map addresses them by
// this index.
std::vector<int> internal_preorder(const Tree& t) {
    std::vector<int> order;
    std::function<void(int)> walk = [&](int v) {
        if (t.is_leaf(v)) return;
        order.push_back(v);
        for (int c : t.children(v)) walk(c);
    };
    walk(t.root());
    return order;
}

std::vector<int> class_values(const Tree& t, const ClassAssignment& given) {
    std::vector<int> order = internal_preorder(t);
    std::vector<int> cls(t.vertex_count(), 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
        int v = order[i];
        auto it = given.find(static_cast<int>(i));
        cls[v] = (it != given.end()) ? it->second : t.depth(v) + 1;
        if (cls[v] <= 0) throw InvalidArgument("class values must be positive");
    }
    // depth(u) <= depth(v) must imply class(u) <= class(v); in particular
    // vertices of equal depth share a class.
    std::map<int, std::pair<int, int>> range; // depth -> (min class, max class)
    for (int v : order) {
        auto [it, inserted] = range.try_emplace(t.depth(v), std::pair{cls[v], cls[v]});
        if (!inserted) {
            it->second.first = std::min(it->second.first, cls[v]);
            it->second.second = std::max(it->second.second, cls[v]);
        }
    }
    int prev_max = 0;
    for (auto& [d, mm] : range) {
        if (mm.first != mm.second)
            throw InvalidArgument("class values must agree across vertices of equal depth");
        if (mm.first < prev_max)
            throw InvalidArgument("class values must be monotone in depth");
        prev_max = mm.second;
    }
    return cls;
}

} // namespace

DistanceReport cophenetic(const Tree& a, const Tree& b,
                          const ClassAssignment& ca, const ClassAssignment& cb) {
    require_same_labels(a, b);
    const int n = a.leaf_count();
    std::vector<int> cls_a = class_values(a, ca);
    std::vector<int> cls_b = class_values(b, cb);

    std::vector<double> xs, ys;
    xs.reserve(n * (n - 1) / 2);
    ys.reserve(n * (n - 1) / 2);
    for (int i = 1; i <= n; ++i) {
        for (int j = i + 1; j <= n; ++j) {
            xs.push_back(cls_a[a.lca(a.leaf_vertex(i), a.leaf_vertex(j))]);
            ys.push_back(cls_b[b.lca(b.leaf_vertex(i), b.leaf_vertex(j))]);
        }
    }
    const double m = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (double x : xs) mx += x;
    for (double y : ys) my += y;
    mx /= m;
    my /= m;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    DistanceReport r;
    r.metric = "cophenetic";
    if (sxx == 0.0 || syy == 0.0) {
        r.value = std::numeric_limits<double>::quiet_NaN();
        r.degenerate = true;
        r.notes.push_back("a cophenetic relation matrix is constant; correlation undefined");
        return r;
    }
    r.value = sxy / std::sqrt(sxx * syy);
    return r;
}

DistanceReport similarity_prob(const Tree& a, const Tree& b) {
    require_same_labels(a, b);
    const int n = a.leaf_count();
    double la = a.total_weight(), lb = b.total_weight();
    if (la <= 0.0 || lb <= 0.0) throw ZeroLengthTree("similarity needs positive total edge weight");

    auto below_a = labels_below(a);
    auto below_b = labels_below(b);
    std::map<std::vector<int>, double> wa, wb;
    for (int v = 1; v < a.vertex_count(); ++v) wa[partition_key(below_a[v], n)] += a.weight(v);
    for (int v = 1; v < b.vertex_count(); ++v) wb[partition_key(below_b[v], n)] += b.weight(v);

    double m_ab = 0.0, m_aa = 0.0, m_bb = 0.0;
    for (auto& [k, w] : wa) {
        m_aa += w * w;
        auto it = wb.find(k);
        if (it != wb.end()) m_ab += w * it->second;
    }
    for (auto& [k, w] : wb) m_bb += w * w;
    m_ab /= la * lb;
    m_aa /= la * la;
    m_bb /= lb * lb;

    DistanceReport r;
    r.metric = "simprob";
    r.value = 1.0 - (m_ab / m_aa + m_ab / m_bb) / 2.0;
    return r;
}

DistanceReport cone(const Tree& a, const Tree& b) {
    require_same_labels(a, b);
    auto norm = [](const Tree& t) {
        double s = 0.0;
        for (int v : t.internal_edges()) s += t.weight(v) * t.weight(v);
        return std::sqrt(s);
    };
    DistanceReport r;
    r.metric = "cone";
    r.value = norm(a) + norm(b);
    return r;
}

} // namespace treedist
