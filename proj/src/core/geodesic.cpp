#include "geodesic.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "maxflow.hpp"

namespace treedist {

namespace {

// Exact-1 covers sit on the no-solution boundary (fully saturated unit
// crossings); float noise must not push them into a refinement.
constexpr double kCoverTol = 1e-12;
constexpr double kRatioTol = 1e-9;

double norm_of(const std::vector<WeightedSplit>& xs) {
    double s = 0.0;
    for (const auto& x : xs) s += x.weight * x.weight;
    return std::sqrt(s);
}

void sort_canonical(std::vector<WeightedSplit>& xs) {
    std::sort(xs.begin(), xs.end(),
              [](const WeightedSplit& a, const WeightedSplit& b) {
                  return split_less(a.split, b.split);
              });
}

void check_p1_p2(const Support& s) {
    for (std::size_t i = 0; i < s.pairs.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            for (const auto& a : s.pairs[i].A)
                for (const auto& b : s.pairs[j].B)
                    if (!compatible(a.split, b.split))
                        throw InternalInvariantViolation("(P1) violated after refinement");
    double prev = -1.0;
    for (const auto& p : s.pairs) {
        double r = p.norm_a() / p.norm_b();
        if (prev >= 0.0 && r < prev - kRatioTol * std::max(1.0, prev))
            throw InternalInvariantViolation("(P2) violated after refinement");
        prev = std::max(prev, r);
    }
}

} // namespace

double SupportPair::norm_a() const { return norm_of(A); }
double SupportPair::norm_b() const { return norm_of(B); }

double support_length(const Support& s) {
    double acc = 0.0;
    for (const auto& p : s.pairs) {
        double t = p.norm_a() + p.norm_b();
        acc += t * t;
    }
    return std::sqrt(acc);
}

double cone_path_length(const SplitVector& a, const SplitVector& b) {
    if (a.n != b.n) throw SizeError("split vectors over different label sets");
    return a.norm() + b.norm();
}

std::optional<ExtensionBlocks> extension_problem(const SupportPair& p) {
    std::vector<std::pair<Split, double>> A, B;
    A.reserve(p.A.size());
    B.reserve(p.B.size());
    for (const auto& x : p.A) A.emplace_back(x.split, x.weight);
    for (const auto& x : p.B) B.emplace_back(x.split, x.weight);
    IncompatGraph g = build_incompat_graph(A, B);
    // The pair's sides are kept canonically sorted, so the graph's vertex
    // order must coincide with them.
    for (std::size_t i = 0; i < p.A.size(); ++i)
        if (!(g.left[i].first == p.A[i].split))
            throw InternalInvariantViolation("support pair lost canonical order");
    CoverResult cover = min_weight_vertex_cover(g);
    if (cover.weight >= 1.0 - kCoverTol) return std::nullopt;

    ExtensionBlocks out;
    out.cover_weight = cover.weight;
    std::vector<bool> in_c1(p.A.size(), false), in_d2(p.B.size(), false);
    for (int i : cover.left) in_c1[i] = true;
    for (int j : cover.right) in_d2[j] = true;
    for (std::size_t i = 0; i < p.A.size(); ++i)
        (in_c1[i] ? out.c1 : out.c2).push_back(p.A[i]);
    for (std::size_t j = 0; j < p.B.size(); ++j)
        (in_d2[j] ? out.d2 : out.d1).push_back(p.B[j]);

    if (out.c1.empty() || out.c2.empty() || out.d1.empty() || out.d2.empty()) {
        // A sub-1 one-sided cover means some split has no incompatibility
        // within this pair; name it.
        std::string offender;
        for (std::size_t i = 0; i < p.A.size() && offender.empty(); ++i) {
            bool isolated = true;
            for (const auto& [ai, bj] : g.arcs)
                if (ai == static_cast<int>(i)) { isolated = false; break; }
            if (isolated) offender = p.A[i].origin.to_text();
        }
        for (std::size_t j = 0; j < p.B.size() && offender.empty(); ++j) {
            bool isolated = true;
            for (const auto& [ai, bj] : g.arcs)
                if (bj == static_cast<int>(j)) { isolated = false; break; }
            if (isolated) offender = p.B[j].origin.to_text();
        }
        throw DegenerateCover(
            "split " + (offender.empty() ? std::string("<unknown>") : offender) +
            " is compatible with the entire opposite support side; the input is not binary "
            "and the extension problem degenerates");
    }
    return out;
}

Support refine_support(Support s, std::size_t i, const ExtensionBlocks& blocks) {
    if (i >= s.pairs.size()) throw InvalidArgument("support pair index out of range");
    SupportPair first{blocks.c1, blocks.d1};
    SupportPair second{blocks.c2, blocks.d2};
    s.pairs[i] = std::move(first);
    s.pairs.insert(s.pairs.begin() + i + 1, std::move(second));
    check_p1_p2(s);
    return s;
}

GtpOutcome gtp_disjoint(std::vector<WeightedSplit> A, std::vector<WeightedSplit> B) {
    if (A.empty() || B.empty())
        throw InvalidArgument("gtp_disjoint needs non-empty split sets");
    sort_canonical(A);
    sort_canonical(B);
    const std::size_t cap = std::min(A.size(), B.size());

    GtpOutcome out;
    out.support.pairs.push_back(SupportPair{std::move(A), std::move(B)});

    // A pair's extension answer depends only on the pair, so pairs left of
    // the scan position never need re-checking.
    std::size_t i = 0;
    while (i < out.support.pairs.size()) {
        auto blocks = extension_problem(out.support.pairs[i]);
        if (!blocks) {
            ++i;
            continue;
        }
        if (out.support.pairs.size() + 1 > cap)
            throw IterationCap("support grew past the split count; engine bug");
        out.support = refine_support(std::move(out.support), i, *blocks);
    }
    out.distance = support_length(out.support);
    return out;
}

namespace {

SideProjection project_side(const std::vector<int>& block, int n,
                            const std::vector<WeightedSplit>& t1,
                            const std::vector<WeightedSplit>& t2) {
    SideProjection sp;
    const bool has_zero = !block.empty() && block[0] == 0;
    sp.sub_n = static_cast<int>(block.size()); // |X| labels + one stand-in - root
    sp.to_sub.assign(n + 1, -1);
    sp.from_sub.assign(sp.sub_n + 1, -1);
    int next = has_zero ? 0 : 1;
    for (int lbl : block) {
        sp.to_sub[lbl] = next;
        sp.from_sub[next] = lbl;
        ++next;
    }
    // has_zero: labels map to 0..|X|-1 and the stand-in leaf takes |X|;
    // otherwise labels map to 1..|X| and the stand-in is the root 0.

    LabelMask block_mask(n + 1);
    for (int lbl : block) block_mask.set(lbl);
    auto project = [&](const std::vector<WeightedSplit>& src,
                       std::vector<WeightedSplit>& dst) {
        for (const auto& ws : src) {
            // Pick the block strictly inside X, if any. Exactly one block of
            // |side ∩ X| and |comp ∩ X| can fill its block without covering
            // all of X.
            const int bs = static_cast<int>(block.size());
            const int side_size = static_cast<int>(ws.split.side().size());
            const int comp_size = n + 1 - side_size;
            const int side_inside = ws.split.mask().and_count(block_mask);
            const int comp_inside = bs - side_inside;
            const std::vector<int>* inner = nullptr;
            std::vector<int> comp;
            if (side_inside == side_size && side_size < bs) {
                inner = &ws.split.side();
            } else if (comp_inside == comp_size && comp_size < bs) {
                comp = ws.split.complement();
                inner = &comp;
            }
            if (!inner) continue;
            std::vector<int> sub_block;
            sub_block.reserve(inner->size());
            for (int lbl : *inner) sub_block.push_back(sp.to_sub[lbl]);
            dst.push_back(WeightedSplit{Split(sp.sub_n, std::move(sub_block)),
                                        ws.weight, ws.origin});
        }
        sort_canonical(dst);
    };
    project(t1, sp.first);
    project(t2, sp.second);
    return sp;
}

} // namespace

CommonEdgeSplit common_edge_split(const std::vector<WeightedSplit>& t1,
                                  const std::vector<WeightedSplit>& t2,
                                  const Split& shared) {
    auto find = [&](const std::vector<WeightedSplit>& xs) {
        for (const auto& x : xs)
            if (x.split == shared) return true;
        return false;
    };
    if (!find(t1) || !find(t2))
        throw DomainError("split " + shared.to_text() + " is not shared by both trees");

    const int n = shared.n();
    std::vector<int> zero_block = shared.side();
    std::vector<int> other_block = shared.complement();
    if (zero_block.empty() || zero_block[0] != 0) std::swap(zero_block, other_block);

    CommonEdgeSplit out;
    out.zero_side = project_side(zero_block, n, t1, t2);
    out.other_side = project_side(other_block, n, t1, t2);
    return out;
}

namespace {

void recurse(std::vector<WeightedSplit> a, std::vector<WeightedSplit> b,
             std::vector<GeodesicComponent>& components) {
    // Shared split with the lowest canonical order first; the decomposition
    // holds for any shared split, this only pins the recursion trace.
    const Split* shared = nullptr;
    double w1 = 0.0, w2 = 0.0;
    const Split* shared_origin = nullptr;
    for (const auto& x : a) {
        for (const auto& y : b) {
            if (x.split == y.split) {
                if (!shared || split_less(x.split, *shared)) {
                    shared = &x.split;
                    shared_origin = &x.origin;
                    w1 = x.weight;
                    w2 = y.weight;
                }
            }
        }
    }
    if (shared) {
        GeodesicComponent c;
        c.shared = *shared_origin;
        c.term = (w1 - w2) * (w1 - w2);
        components.push_back(std::move(c));
        CommonEdgeSplit parts = common_edge_split(a, b, *shared);
        recurse(std::move(parts.zero_side.first), std::move(parts.zero_side.second), components);
        recurse(std::move(parts.other_side.first), std::move(parts.other_side.second), components);
        return;
    }
    if (a.empty() && b.empty()) return;
    if (a.empty() || b.empty()) {
        // The cone path degenerates to a straight segment to the orthant wall.
        GeodesicComponent c;
        double n = norm_of(a.empty() ? b : a);
        c.term = n * n;
        c.support.pairs.push_back(SupportPair{std::move(a), std::move(b)});
        components.push_back(std::move(c));
        return;
    }
    GtpOutcome g = gtp_disjoint(std::move(a), std::move(b));
    GeodesicComponent c;
    c.term = g.distance * g.distance;
    c.support = std::move(g.support);
    components.push_back(std::move(c));
}

} // namespace

GeodesicResult geodesic_distance(const Tree& t1, const Tree& t2) {
    if (t1.leaf_count() != t2.leaf_count())
        throw LabelSetMismatch("trees have " + std::to_string(t1.leaf_count()) + " and " +
                               std::to_string(t2.leaf_count()) + " leaves");
    auto to_ws = [](const Tree& t) {
        std::vector<WeightedSplit> out;
        for (auto& [s, w] : weighted_splits_of(t))
            if (w > 0.0) out.push_back(WeightedSplit{s, w, s});
        sort_canonical(out);
        return out;
    };
    GeodesicResult r;
    recurse(to_ws(t1), to_ws(t2), r.components);
    double sq = 0.0;
    for (const auto& c : r.components) sq += c.term;
    r.distance = std::sqrt(sq);

    int leaf_diffs = 0;
    double max_diff = 0.0;
    for (int lbl = 1; lbl <= t1.leaf_count(); ++lbl) {
        double d = std::abs(t1.weight(t1.leaf_vertex(lbl)) - t2.weight(t2.leaf_vertex(lbl)));
        if (d > 0.0) {
            ++leaf_diffs;
            max_diff = std::max(max_diff, d);
        }
    }
    if (leaf_diffs > 0) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "leaf edge weights differ on %d label(s) (max |dw| = %g); "
                      "leaf edges are not part of the distance",
                      leaf_diffs, max_diff);
        r.notes.emplace_back(buf);
    }
    return r;
}

} // namespace treedist
