#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "chred/tucker.hpp"

using namespace chred;

namespace {

LabelGrid grid2x2(LabelMask a11, LabelMask a12, LabelMask a21, LabelMask a22) {
    // Row-major over (x1, x2).
    return LabelGrid({2, 2}, {a11, a12, a21, a22});
}

LabelMask L(int a, int b) { return pack_label({a, b}); }

}  // namespace

TEST_CASE("antipodality check") {
    LabelGrid good = grid2x2(L(+1, +1), L(+1, -1), L(-1, +1), L(-1, -1));
    CHECK(check_antipodality(good).ok);
    LabelGrid bad = grid2x2(L(+1, +1), L(+1, -1), L(-1, +1), L(+1, +1));
    auto rep = check_antipodality(bad);
    CHECK(!rep.ok);
    CHECK(rep.witness == GridPoint{1, 1});
}

TEST_CASE("2D-Tucker label map") {
    Tucker2D t;
    t.m = 2;
    t.labels = {+2, +1, -1, -2};
    LabelGrid g = map_2dtucker_to_strong(t);
    CHECK(g.label({1, 1}) == L(+1, +1));
    CHECK(g.label({1, 2}) == L(+1, -1));
    CHECK(g.label({2, 1}) == L(-1, +1));
    CHECK(g.label({2, 2}) == L(-1, -1));
}

TEST_CASE("label map preserves antipodality on random instances") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        Tucker2D t = random_tucker2d(8 + 2 * (seed % 4), seed);
        CHECK(check_antipodality(t).ok);
        CHECK(check_antipodality(map_2dtucker_to_strong(t)).ok);
    }
}

TEST_CASE("verify strong solution") {
    LabelGrid g = grid2x2(L(+1, +1), L(+1, -1), L(-1, +1), L(-1, -1));
    CHECK(verify_strong_solution(g, {{GridPoint{1, 1}, GridPoint{2, 2}}}));
    CHECK(!verify_strong_solution(g, {{GridPoint{1, 1}, GridPoint{2, 1}}}));  // dim 2 misses -1
    LabelGrid wide = random_antipodal_instance({4, 4}, 9);
    // Distance 2 pair is never a solution regardless of labels.
    CHECK(!verify_strong_solution(wide, {{GridPoint{1, 1}, GridPoint{3, 3}}}));
    CHECK_THROWS_AS(verify_strong_solution(wide, {{GridPoint{0, 1}}}), std::out_of_range);
}

TEST_CASE("lemma r-to-N: greedy pick and reduction") {
    // Greedy picks the flip partner of the first point.
    std::vector<LabelMask> labels{L(+1, +1), L(-1, -1), L(+1, -1)};
    auto picked = lemma_r_to_n(labels, 2);
    CHECK(picked == std::vector<std::size_t>{0, 1});
    // r <= N inputs come back unchanged after the cover check.
    std::vector<LabelMask> two{L(+1, -1), L(-1, +1)};
    CHECK(lemma_r_to_n(two, 2) == std::vector<std::size_t>{0, 1});
    CHECK_THROWS_WITH(lemma_r_to_n({L(+1, +1), L(+1, -1)}, 2), "not a cover");
}

TEST_CASE("lemma r-to-N: randomized cover inputs") {
    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 2 + static_cast<int>(rng() % 5);  // N in [2,6]
        int r = n + 1 + static_cast<int>(rng() % (2 * n));
        LabelMask all = (LabelMask{1} << n) - 1;
        std::vector<LabelMask> labels;
        for (int i = 0; i < r; ++i) labels.push_back(static_cast<LabelMask>(rng() % (all + 1)));
        // Force coverage: ensure each dimension sees both signs.
        labels.push_back(all);
        labels.push_back(0);
        auto picked = lemma_r_to_n(labels, n);
        CHECK(picked.size() <= static_cast<std::size_t>(n));
        LabelMask pos = 0, neg = 0;
        for (auto idx : picked) {
            CHECK(idx < labels.size());  // output is a subset of the input
            pos |= labels[idx];
            neg |= negate_label(labels[idx], n);
        }
        CHECK(pos == all);
        CHECK(neg == all);
    }
}

TEST_CASE("enumeration finds adjacent antipodal pairs and nothing from constant regions") {
    // Constant labels cannot cover: no solutions at all.
    LabelGrid constant({4, 4}, std::vector<LabelMask>(16, L(+1, +1)));
    CHECK(enumerate_strong_solutions(constant).empty());

    // One adjacent antipodal pair planted in an otherwise constant grid.
    LabelGrid planted({4, 4}, std::vector<LabelMask>(16, L(+1, +1)));
    planted.set_label({2, 2}, L(-1, -1));
    auto sols = enumerate_strong_solutions(planted);
    REQUIRE(!sols.empty());
    for (const auto& sol : sols) CHECK(verify_strong_solution(planted, sol));
}

TEST_CASE("enumeration agrees with the naive pair scan at N=2") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        LabelGrid g = random_antipodal_instance({6, 8}, seed);
        // Naive: all L-infinity-adjacent pairs with antipodal labels.
        std::set<GridPoint> naive_anchor;  // componentwise min of each pair
        bool naive_any = false;
        for (int x1 = 1; x1 <= 6; ++x1)
            for (int y1 = 1; y1 <= 8; ++y1)
                for (int dx = -1; dx <= 1; ++dx)
                    for (int dy = -1; dy <= 1; ++dy) {
                        int x2 = x1 + dx, y2 = y1 + dy;
                        if (x2 < 1 || x2 > 6 || y2 < 1 || y2 > 8) continue;
                        if (g.label({x2, y2}) != negate_label(g.label({x1, y1}), 2)) continue;
                        naive_any = true;
                        naive_anchor.insert({std::min(x1, x2), std::min(y1, y2)});
                    }
        auto anchors = covering_anchors(g);
        std::set<GridPoint> anchor_set(anchors.begin(), anchors.end());
        // Every naive pair lives inside a covering anchor box; at N=2 a box
        // covers iff it contains an antipodal pair, up to boundary clamping.
        for (const auto& a : naive_anchor) CHECK(anchor_set.count(a) == 1);
        auto sols = enumerate_strong_solutions(g);
        CHECK(naive_any == !sols.empty());
        for (const auto& sol : sols) {
            CHECK(verify_strong_solution(g, sol));
            REQUIRE(sol.points.size() == 2);
            CHECK(g.label(sol.points[0]) == negate_label(g.label(sol.points[1]), 2));
        }
    }
}

TEST_CASE("strong solutions and Tucker2D solutions correspond under the label map") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        int m = 8 + 2 * static_cast<int>(seed % 3);
        Tucker2D t = random_tucker2d(m, seed);
        LabelGrid g = map_2dtucker_to_strong(t);
        for (int x1 = 1; x1 <= m; ++x1)
            for (int y1 = 1; y1 <= m; ++y1)
                for (int dx = 0; dx <= 1; ++dx)
                    for (int dy = -1; dy <= 1; ++dy) {
                        int x2 = x1 + dx, y2 = y1 + dy;
                        if (x2 < 1 || x2 > m || y2 < 1 || y2 > m) continue;
                        TuckerPair pair{{x1, y1}, {x2, y2}};
                        bool tucker = verify_tucker_pair(t, pair);
                        bool strong = verify_strong_solution(g, {{pair.a, pair.b}});
                        CHECK(tucker == strong);
                    }
    }
}

TEST_CASE("random antipodal instances: determinism and solvability at N=2") {
    LabelGrid a = random_antipodal_instance({10, 10}, 5);
    LabelGrid b = random_antipodal_instance({10, 10}, 5);
    CHECK(a.raw_labels() == b.raw_labels());
    CHECK(random_antipodal_instance({10, 10}, 6).raw_labels() != a.raw_labels());
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        LabelGrid g = random_antipodal_instance({10, 10}, seed);
        CHECK(check_antipodality(g).ok);
        // At N=2 the 4-label correspondence plus Tucker's theorem guarantees a solution.
        CHECK(!enumerate_strong_solutions(g).empty());
    }
}
