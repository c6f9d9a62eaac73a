#include <doctest.h>

#include "core/error.hpp"
#include "core/maxflow.hpp"
#include "oracle/oracle.hpp"
#include "testutil.hpp"

using namespace treedist;

namespace {

// Splits are irrelevant to the flow engine beyond ordering; build graphs
// over a stock of distinct splits and wire arcs explicitly.
IncompatGraph raw_graph(const std::vector<double>& left_w, const std::vector<double>& right_w,
                        const std::vector<std::pair<int, int>>& arcs) {
    auto order = canonical_order(7);
    IncompatGraph g;
    for (std::size_t i = 0; i < left_w.size(); ++i) g.left.emplace_back(order[i], left_w[i]);
    for (std::size_t j = 0; j < right_w.size(); ++j)
        g.right.emplace_back(order[100 + j], right_w[j]);
    g.arcs = arcs;
    return g;
}

} // namespace

TEST_CASE("build_incompat_graph: normalization and arcs") {
    // two incompatible unit splits -> two unit-weight vertices, one arc
    Split s1(3, {0, 1}), s2(3, {0, 2});
    IncompatGraph g = build_incompat_graph({{s1, 1.0}}, {{s2, 1.0}});
    REQUIRE(g.left.size() == 1);
    REQUIRE(g.right.size() == 1);
    CHECK(g.left[0].second == doctest::Approx(1.0));
    CHECK(g.right[0].second == doctest::Approx(1.0));
    CHECK(g.arcs.size() == 1);

    // fully compatible -> zero arcs
    Split a(4, {1, 2}), b(4, {1, 2, 3});
    CHECK(build_incompat_graph({{a, 1.0}}, {{b, 1.0}}).arcs.empty());

    // weights (3,4) -> normalized (9/25, 16/25)
    Split c(4, {1, 2}), d(4, {3, 4});
    IncompatGraph g2 = build_incompat_graph({{c, 3.0}, {d, 4.0}}, {{b, 1.0}});
    CHECK(g2.left[0].second == doctest::Approx(9.0 / 25.0));
    CHECK(g2.left[1].second == doctest::Approx(16.0 / 25.0));

    CHECK_THROWS_AS(build_incompat_graph({}, {{b, 1.0}}), DomainError);
}

TEST_CASE("edmonds_karp: single arc 0.3/0.7") {
    IncompatGraph g = raw_graph({0.3}, {0.7}, {{0, 0}});
    FlowResult f = edmonds_karp(g);
    CHECK(f.maxflow == doctest::Approx(0.3).epsilon(1e-12));
    CHECK_FALSE(f.left_reachable[0]); // saturated: U1 = {s}
    CHECK(f.phase1_arcs == 1);
    CoverResult c = min_weight_vertex_cover(g);
    CHECK(c.weight == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(c.left == std::vector<int>{0});
    CHECK(c.right.empty());
}

TEST_CASE("edmonds_karp: zero arcs") {
    IncompatGraph g = raw_graph({0.4, 0.6}, {1.0}, {});
    FlowResult f = edmonds_karp(g);
    CHECK(f.maxflow == 0.0);
    CHECK(f.left_reachable[0]);
    CHECK(f.left_reachable[1]);
    CoverResult c = min_weight_vertex_cover(g);
    CHECK(c.left.empty());
    CHECK(c.right.empty());
    CHECK(c.weight == 0.0);
}

TEST_CASE("edmonds_karp: phase-1 misroute needs a residual back edge") {
    // L1 only reaches R1; phase 1 sends L1's demand through R1 first when
    // the arc order starts elsewhere. Arcs (0,0),(0,1),(1,0) with unit
    // weights force one augmentation through a backward arc.
    IncompatGraph g = raw_graph({1.0, 1.0}, {1.0, 1.0}, {{0, 0}, {0, 1}, {1, 0}});
    FlowResult f = edmonds_karp(g);
    CHECK(f.maxflow == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(oracle::brute_min_cut(g) == doctest::Approx(2.0));
}

TEST_CASE("maxflow equals brute min cut; cover equals brute min cover") {
    testutil::Rng rng(60622);
    for (int it = 0; it < 100; ++it) {
        int L = 1 + static_cast<int>(rng() % 6);
        int R = 1 + static_cast<int>(rng() % 6);
        std::uniform_real_distribution<double> uw(0.01, 1.0);
        std::vector<double> lw(L), rw(R);
        for (auto& w : lw) w = uw(rng);
        for (auto& w : rw) w = uw(rng);
        std::vector<std::pair<int, int>> arcs;
        for (int i = 0; i < L; ++i)
            for (int j = 0; j < R; ++j)
                if (rng() % 100 < 45 && arcs.size() < 20) arcs.emplace_back(i, j);
        IncompatGraph g = raw_graph(lw, rw, arcs);

        FlowResult f = edmonds_karp(g);
        CHECK(f.maxflow == doctest::Approx(oracle::brute_min_cut(g)).epsilon(1e-12));

        CoverResult c = min_weight_vertex_cover(g);
        oracle::BruteCover bc = oracle::brute_min_cover(g);
        CHECK(c.weight == doctest::Approx(bc.weight).epsilon(1e-12));
        CHECK(std::abs(c.weight - f.maxflow) == 0.0); // same computation path

        // the returned set covers every arc
        std::vector<bool> inl(L, false), inr(R, false);
        for (int i : c.left) inl[i] = true;
        for (int j : c.right) inr[j] = true;
        for (auto& [i, j] : g.arcs) CHECK((inl[i] || inr[j]));

        // flow bounded by the lighter side
        double suml = 0, sumr = 0;
        for (auto& [s, w] : g.left) suml += w;
        for (auto& [s, w] : g.right) sumr += w;
        CHECK(f.maxflow <= std::min(suml, sumr) + 1e-12);
        CHECK(f.phase1_arcs == g.arcs.size());
    }
}
