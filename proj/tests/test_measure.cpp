#include <doctest.h>

#include <random>

#include "chred/measure.hpp"

using namespace chred;

namespace {

CutSet cuts_of(std::initializer_list<Rational> xs) { return CutSet(std::vector<Rational>(xs)); }

PiecewiseDensity unit_block() { return PiecewiseDensity({Block(0, 1, 1)}); }

// Deterministic random density/cut generator for the property checks.
struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}
    long pick(long bound) { return static_cast<long>(rng() % static_cast<std::uint64_t>(bound)); }
    Rational pos(long denom, long span) { return Rational(pick(span * denom), denom); }
    PiecewiseDensity density() {
        std::vector<Block> blocks;
        long cursor = 0;
        int count = 1 + static_cast<int>(pick(4));
        for (int b = 0; b < count; ++b) {
            cursor += pick(3);
            long len = 1 + pick(3);
            blocks.emplace_back(Rational(cursor), Rational(cursor + len), Rational(1 + pick(5), 1 + pick(5)));
            cursor += len;
        }
        return PiecewiseDensity(std::move(blocks));
    }
    CutSet cutset(long span) {
        std::vector<Rational> cs;
        int count = static_cast<int>(pick(5));
        for (int c = 0; c < count; ++c) cs.push_back(pos(64, span));
        std::sort(cs.begin(), cs.end());
        cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
        return CutSet(std::move(cs));
    }
};

}  // namespace

TEST_CASE("total mass") {
    CHECK(total_mass(unit_block()) == Rational(1));
    // NAND-agent shape: three fifths plus a double fifth.
    PiecewiseDensity nand({Block(0, 1, Rational(1, 5)), Block(2, 3, Rational(1, 5)),
                           Block(4, 5, Rational(1, 5)), Block(6, 7, Rational(2, 5))});
    CHECK(total_mass(nand) == Rational(1));
    CHECK(total_mass(PiecewiseDensity{}) == Rational(0));
}

TEST_CASE("density canonicalization") {
    PiecewiseDensity d({Block(1, 2, Rational(1, 3)), Block(0, 1, Rational(1, 3)),
                        Block(3, 4, Rational(0))});
    REQUIRE(d.block_count() == 1);  // adjacent equal heights merge, zero blocks drop
    CHECK(d.blocks()[0].interval == Interval(Rational(0), Rational(2)));
    CHECK_THROWS(PiecewiseDensity({Block(0, 2, 1), Block(1, 3, 1)}));
}

TEST_CASE("signed value basics") {
    CHECK(signed_value(unit_block(), cuts_of({Rational(1, 2)})) == Rational(0));
    CHECK(signed_value(unit_block(), cuts_of({Rational(3, 5)})) == Rational(-1, 5));
    CHECK(signed_value(unit_block(), CutSet{}) == Rational(1));
    Interval ambient(Rational(0), Rational(1));
    CHECK_THROWS_AS(signed_value(unit_block(), cuts_of({Rational(2)}), ambient), std::out_of_range);
}

TEST_CASE("interval value") {
    Interval j(Rational(0), Rational(1));
    CHECK(interval_value(j, CutSet{}) == Rational(1));
    CHECK(interval_value(j, cuts_of({Rational(1, 2)})) == Rational(0));
    CHECK(interval_value(j, cuts_of({Rational(0)})) == Rational(1));  // endpoint cut keeps it pure
    CHECK_THROWS(interval_value(Interval(Rational(0), Rational(2)), CutSet{}));
}

TEST_CASE("cuts in interior") {
    Interval j(Rational(2), Rational(3));
    CHECK(cuts_in_interior(j, cuts_of({Rational(5, 2)})) == 1);
    CHECK(cuts_in_interior(j, cuts_of({Rational(2)})) == 0);
    CHECK(cuts_in_interior(j, cuts_of({Rational(2), Rational(9, 4), Rational(11, 4), Rational(3)})) == 2);
}

TEST_CASE("property: |signed_value| <= total_mass and flip symmetry") {
    Gen gen(20260808);
    for (int trial = 0; trial < 200; ++trial) {
        PiecewiseDensity d = gen.density();
        CutSet s = gen.cutset(24);
        Rational v = signed_value(d, s);
        CHECK(v.abs() <= total_mass(d));
        // Appending a cut right of every block flips the sign convention.
        std::vector<Rational> flipped = s.cuts();
        flipped.push_back(Rational(1000));
        CHECK(signed_value(d, CutSet(flipped)) == -v);
    }
}

TEST_CASE("property: signed_value is affine in a single cut between breakpoints") {
    Gen gen(77);
    for (int trial = 0; trial < 100; ++trial) {
        PiecewiseDensity d = gen.density();
        // Move one cut inside the cell (5, 6); collinearity at three samples.
        auto with_cut = [&](const Rational& q) {
            return signed_value(d, cuts_of({Rational(2), q, Rational(20)}));
        };
        Rational a = with_cut(Rational(41, 8));
        Rational b = with_cut(Rational(43, 8));
        Rational mid = with_cut(Rational(42, 8));
        CHECK(mid + mid == a + b);
    }
}

TEST_CASE("property: interval purity iff no interior cut") {
    Gen gen(31337);
    for (int trial = 0; trial < 200; ++trial) {
        CutSet s = gen.cutset(8);
        long lo = gen.pick(7);
        Interval j(Rational(lo), Rational(lo + 1));
        Rational v = interval_value(j, s);
        bool pure = (v == Rational(1)) || (v == Rational(-1));
        CHECK(pure == (cuts_in_interior(j, s) == 0));
    }
}
