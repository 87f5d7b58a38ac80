#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace chred {

// Grid point, 1-based coordinates.
using GridPoint = std::vector<int>;

// Vector label in {-1,+1}^N packed as a bitmask: bit d set <=> coordinate d
// is +1. Keeps explicit tables on large grids compact.
using LabelMask = std::uint32_t;

std::vector<int> unpack_label(LabelMask mask, int n);
LabelMask pack_label(const std::vector<int>& label);
LabelMask negate_label(LabelMask mask, int n);

// Explicit labelling of an N-dimensional grid with {-1,+1}^N labels. Serves
// both as a StrongTucker instance (when antipodal) and as the lookup table
// fed to the circuit compiler.
class LabelGrid {
public:
    LabelGrid() = default;
    LabelGrid(std::vector<int> dims, std::vector<LabelMask> labels);

    int n() const { return static_cast<int>(dims_.size()); }
    const std::vector<int>& dims() const { return dims_; }
    std::size_t cell_count() const { return labels_.size(); }

    std::size_t index_of(const GridPoint& p) const;
    GridPoint point_at(std::size_t index) const;
    bool in_grid(const GridPoint& p) const;
    bool on_boundary(const GridPoint& p) const;
    GridPoint antipode(const GridPoint& p) const;

    LabelMask label(const GridPoint& p) const { return labels_[index_of(p)]; }
    LabelMask label_at(std::size_t index) const { return labels_[index]; }
    std::vector<int> label_vec(const GridPoint& p) const { return unpack_label(label(p), n()); }
    void set_label(const GridPoint& p, LabelMask mask) { labels_[index_of(p)] = mask; }

    const std::vector<LabelMask>& raw_labels() const { return labels_; }

private:
    std::vector<int> dims_;
    std::vector<LabelMask> labels_;
};

// 2D-Tucker instance: m x m grid, labels in {-2,-1,+1,+2}, boundary
// antipodality lambda(x̄) = -lambda(x).
struct Tucker2D {
    int m = 0;
    std::vector<std::int8_t> labels;  // row-major (i-1)*m + (j-1)

    std::int8_t label(int i, int j) const { return labels[static_cast<std::size_t>(i - 1) * m + (j - 1)]; }
    void set_label(int i, int j, std::int8_t v) { labels[static_cast<std::size_t>(i - 1) * m + (j - 1)] = v; }
};

// N mutually close points covering all 2N (dimension, sign) label pairs.
struct StrongSolution {
    std::vector<GridPoint> points;
};

// Pair of L-infinity-adjacent points with opposite 2D-Tucker labels.
struct TuckerPair {
    GridPoint a;
    GridPoint b;
};

struct AntipodalityReport {
    bool ok = true;
    GridPoint witness;  // first violating boundary point when !ok
};

// --- Operations -------------------------------------------------------------

AntipodalityReport check_antipodality(const LabelGrid& inst);
AntipodalityReport check_antipodality(const Tucker2D& inst);

// Label translation +2 -> (+1,+1), -2 -> (-1,-1), +1 -> (+1,-1), -1 -> (-1,+1).
LabelGrid map_2dtucker_to_strong(const Tucker2D& t);

// True iff all points lie in the grid, pairwise L-infinity distance <= 1, and
// the labels cover both signs in every dimension. Accepts 1..N points
// (solutions extracted through the r-to-N reduction may repeat or drop points).
bool verify_strong_solution(const LabelGrid& inst, const StrongSolution& sol);
bool verify_tucker_pair(const Tucker2D& inst, const TuckerPair& pair);

// Brute-force enumeration: for each anchor cell, gathers the <= 2^N points of
// its side-1 box; covering boxes yield one solution via lemma_r_to_N.
// Emitted solutions are deduplicated by point set.
std::vector<StrongSolution> enumerate_strong_solutions(const LabelGrid& inst);

// Anchors (component-wise minima) whose side-1 box covers all labels; the
// box granularity at which enumeration is complete.
std::vector<GridPoint> covering_anchors(const LabelGrid& inst);

// Constructive cover reduction: from r points covering all labels, extracts a
// subset of size <= N that still covers. Points beyond the grid are fine; only
// labels matter. Throws "not a cover" if the input does not cover.
std::vector<std::size_t> lemma_r_to_n(const std::vector<LabelMask>& labels, int n);

// Deterministic antipodal instance generator: boundary pairs mirrored with
// negated labels, interior free-random.
LabelGrid random_antipodal_instance(const std::vector<int>& dims, std::uint64_t seed);
Tucker2D random_tucker2d(int m, std::uint64_t seed);

}  // namespace chred
