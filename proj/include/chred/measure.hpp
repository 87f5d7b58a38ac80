#pragma once

#include <cstddef>
#include <vector>

#include "chred/rational.hpp"

namespace chred {

// Closed interval [lo, hi] on the line, lo <= hi.
struct Interval {
    Rational lo;
    Rational hi;

    Interval() = default;
    Interval(Rational l, Rational h);

    Rational length() const { return hi - lo; }
    bool contains(const Rational& p) const { return lo <= p && p <= hi; }
};

bool operator==(const Interval& a, const Interval& b);

// One constant-density block: mass = height * length.
struct Block {
    Interval interval;
    Rational height;  // mass per unit length, >= 0

    Block() = default;
    Block(Interval iv, Rational h);
    Block(Rational lo, Rational hi, Rational h) : Block(Interval(lo, hi), h) {}

    Rational mass() const { return height * interval.length(); }
};

// Piecewise-constant density, stored canonically: blocks sorted by position,
// pairwise disjoint interiors, adjacent blocks of equal height merged, zero
// blocks dropped. Canonical form makes the 3-block-uniform property a
// syntactic check.
class PiecewiseDensity {
public:
    PiecewiseDensity() = default;
    explicit PiecewiseDensity(std::vector<Block> blocks);

    const std::vector<Block>& blocks() const { return blocks_; }
    bool empty() const { return blocks_.empty(); }
    std::size_t block_count() const { return blocks_.size(); }

private:
    std::vector<Block> blocks_;
};

// Candidate consensus-halving partition: strictly increasing cut positions.
// Sign convention: the region right of the last cut is R+, and the sign of a
// point p is (+1) * (-1)^(number of cuts strictly greater than p). Regions are
// half-open, so cuts at interval endpoints never affect any measured value.
class CutSet {
public:
    CutSet() = default;
    explicit CutSet(std::vector<Rational> cuts);

    const std::vector<Rational>& cuts() const { return cuts_; }
    std::size_t size() const { return cuts_.size(); }

    // Sign (+1/-1) of the region containing point p (a point exactly at a cut
    // reports the region to its right; measure-zero, never material).
    int sign_at(const Rational& p) const;

    // Number of cuts q with lo < q < hi.
    std::size_t count_in_open(const Rational& lo, const Rational& hi) const;

private:
    std::vector<Rational> cuts_;
};

// --- Operations -------------------------------------------------------------

// Total mass of a density, exact.
Rational total_mass(const PiecewiseDensity& d);

// Integral of d(p) * sign(p) dp under the CutSet sign rule.
Rational signed_value(const PiecewiseDensity& d, const CutSet& s);

// signed_value with the precondition that every cut lies inside the ambient
// interval; throws "cut out of range" otherwise.
Rational signed_value(const PiecewiseDensity& d, const CutSet& s, const Interval& ambient);

// Value of a unit interval J: mu(J n R+) - mu(J n R-), in [-1, +1].
Rational interval_value(const Interval& j, const CutSet& s);

// Number of cuts strictly inside J (endpoints excluded).
std::size_t cuts_in_interior(const Interval& j, const CutSet& s);

}  // namespace chred
