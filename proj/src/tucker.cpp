#include "chred/tucker.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>

namespace chred {

std::vector<int> unpack_label(LabelMask mask, int n) {
    std::vector<int> out(static_cast<std::size_t>(n));
    for (int d = 0; d < n; ++d) out[d] = (mask >> d) & 1u ? +1 : -1;
    return out;
}

LabelMask pack_label(const std::vector<int>& label) {
    LabelMask m = 0;
    for (std::size_t d = 0; d < label.size(); ++d)
        if (label[d] > 0) m |= (LabelMask{1} << d);
    return m;
}

LabelMask negate_label(LabelMask mask, int n) {
    LabelMask all = (n >= 32) ? ~LabelMask{0} : ((LabelMask{1} << n) - 1);
    return mask ^ all;
}

LabelGrid::LabelGrid(std::vector<int> dims, std::vector<LabelMask> labels)
    : dims_(std::move(dims)), labels_(std::move(labels)) {
    if (dims_.empty() || dims_.size() > 31) throw std::invalid_argument("label grid: bad dimension count");
    std::size_t cells = 1;
    for (int m : dims_) {
        if (m < 1) throw std::invalid_argument("label grid: width < 1");
        cells *= static_cast<std::size_t>(m);
    }
    if (labels_.size() != cells) throw std::invalid_argument("label grid: label count mismatch");
}

std::size_t LabelGrid::index_of(const GridPoint& p) const {
    std::size_t idx = 0;
    for (std::size_t d = 0; d < dims_.size(); ++d)
        idx = idx * static_cast<std::size_t>(dims_[d]) + static_cast<std::size_t>(p[d] - 1);
    return idx;
}

GridPoint LabelGrid::point_at(std::size_t index) const {
    GridPoint p(dims_.size());
    for (std::size_t d = dims_.size(); d-- > 0;) {
        p[d] = static_cast<int>(index % static_cast<std::size_t>(dims_[d])) + 1;
        index /= static_cast<std::size_t>(dims_[d]);
    }
    return p;
}

bool LabelGrid::in_grid(const GridPoint& p) const {
    if (p.size() != dims_.size()) return false;
    for (std::size_t d = 0; d < dims_.size(); ++d)
        if (p[d] < 1 || p[d] > dims_[d]) return false;
    return true;
}

bool LabelGrid::on_boundary(const GridPoint& p) const {
    for (std::size_t d = 0; d < dims_.size(); ++d)
        if (p[d] == 1 || p[d] == dims_[d]) return true;
    return false;
}

GridPoint LabelGrid::antipode(const GridPoint& p) const {
    GridPoint q(dims_.size());
    for (std::size_t d = 0; d < dims_.size(); ++d) q[d] = dims_[d] - p[d] + 1;
    return q;
}

AntipodalityReport check_antipodality(const LabelGrid& inst) {
    for (std::size_t idx = 0; idx < inst.cell_count(); ++idx) {
        GridPoint p = inst.point_at(idx);
        if (!inst.on_boundary(p)) continue;
        GridPoint q = inst.antipode(p);
        if (inst.label(q) != negate_label(inst.label(p), inst.n())) return {false, p};
    }
    return {};
}

AntipodalityReport check_antipodality(const Tucker2D& inst) {
    for (int i = 1; i <= inst.m; ++i) {
        for (int j = 1; j <= inst.m; ++j) {
            if (i != 1 && i != inst.m && j != 1 && j != inst.m) continue;
            if (inst.label(inst.m - i + 1, inst.m - j + 1) != -inst.label(i, j)) return {false, {i, j}};
        }
    }
    return {};
}

namespace {

LabelMask strong_label_of_tucker(std::int8_t v) {
    switch (v) {
        case +2: return pack_label({+1, +1});
        case -2: return pack_label({-1, -1});
        case +1: return pack_label({+1, -1});
        case -1: return pack_label({-1, +1});
        default: throw std::invalid_argument("tucker2d: label outside {-2,-1,1,2}");
    }
}

}  // namespace

LabelGrid map_2dtucker_to_strong(const Tucker2D& t) {
    std::vector<LabelMask> labels(static_cast<std::size_t>(t.m) * t.m);
    for (std::size_t idx = 0; idx < labels.size(); ++idx)
        labels[idx] = strong_label_of_tucker(t.labels[idx]);
    return LabelGrid({t.m, t.m}, std::move(labels));
}

namespace {

bool covers_all_labels(const std::vector<LabelMask>& labels, int n) {
    LabelMask seen_pos = 0, seen_neg = 0;
    for (LabelMask l : labels) {
        seen_pos |= l;
        seen_neg |= negate_label(l, n);
    }
    LabelMask all = (LabelMask{1} << n) - 1;
    return seen_pos == all && seen_neg == all;
}

bool linf_close(const GridPoint& a, const GridPoint& b) {
    for (std::size_t d = 0; d < a.size(); ++d)
        if (a[d] - b[d] > 1 || b[d] - a[d] > 1) return false;
    return true;
}

}  // namespace

bool verify_strong_solution(const LabelGrid& inst, const StrongSolution& sol) {
    if (sol.points.empty() || sol.points.size() > static_cast<std::size_t>(inst.n())) return false;
    std::vector<LabelMask> labels;
    for (const auto& p : sol.points) {
        if (!inst.in_grid(p)) throw std::out_of_range("solution point outside grid");
        labels.push_back(inst.label(p));
    }
    for (std::size_t i = 0; i < sol.points.size(); ++i)
        for (std::size_t j = i + 1; j < sol.points.size(); ++j)
            if (!linf_close(sol.points[i], sol.points[j])) return false;
    return covers_all_labels(labels, inst.n());
}

bool verify_tucker_pair(const Tucker2D& inst, const TuckerPair& pair) {
    auto in = [&](const GridPoint& p) {
        return p.size() == 2 && p[0] >= 1 && p[0] <= inst.m && p[1] >= 1 && p[1] <= inst.m;
    };
    if (!in(pair.a) || !in(pair.b)) throw std::out_of_range("pair point outside grid");
    if (!linf_close(pair.a, pair.b)) return false;
    return inst.label(pair.a[0], pair.a[1]) == -inst.label(pair.b[0], pair.b[1]);
}

std::vector<std::size_t> lemma_r_to_n(const std::vector<LabelMask>& labels, int n) {
    if (!covers_all_labels(labels, n)) throw std::invalid_argument("not a cover");
    if (labels.size() <= static_cast<std::size_t>(n)) {
        std::vector<std::size_t> all(labels.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        return all;
    }
    // Greedy N+1 subset: z*_1 is the first point; z*_{j+1} flips coordinate j
    // of label(z*_1). Earliest matching point wins, for determinism.
    std::vector<std::size_t> s;
    s.push_back(0);
    LabelMask base = labels[0];
    for (int d = 0; d < n; ++d) {
        int want = ((base >> d) & 1u) ? -1 : +1;
        for (std::size_t i = 0; i < labels.size(); ++i) {
            int got = ((labels[i] >> d) & 1u) ? +1 : -1;
            if (got == want) {
                if (std::find(s.begin(), s.end(), i) == s.end()) s.push_back(i);
                break;
            }
        }
    }
    auto cover_of = [&](const std::vector<std::size_t>& subset) {
        std::vector<LabelMask> ls;
        for (auto i : subset) ls.push_back(labels[i]);
        return covers_all_labels(ls, n);
    };
    if (s.size() <= static_cast<std::size_t>(n)) return s;
    // |S| = N+1: one of the N-subsets must cover.
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
        std::vector<std::size_t> candidate;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (i != drop) candidate.push_back(s[i]);
        if (cover_of(candidate)) return candidate;
    }
    throw std::logic_error("lemma r-to-N: no covering N-subset (unreachable)");
}

namespace {

// Points of the side-1 box anchored at a (coordinates in {a_d, a_d+1},
// clamped at the grid edge), deduplicated.
std::vector<GridPoint> box_points(const LabelGrid& inst, const GridPoint& anchor) {
    int n = inst.n();
    std::vector<GridPoint> pts;
    for (unsigned bits = 0; bits < (1u << n); ++bits) {
        GridPoint p = anchor;
        bool fresh = true;
        for (int d = 0; d < n; ++d) {
            if (bits & (1u << d)) {
                if (p[d] + 1 > inst.dims()[d]) {
                    fresh = false;  // clamped duplicate of the anchor-side point
                    break;
                }
                ++p[d];
            }
        }
        if (fresh) pts.push_back(std::move(p));
    }
    return pts;
}

}  // namespace

std::vector<GridPoint> covering_anchors(const LabelGrid& inst) {
    std::vector<GridPoint> anchors;
    for (std::size_t idx = 0; idx < inst.cell_count(); ++idx) {
        GridPoint a = inst.point_at(idx);
        auto pts = box_points(inst, a);
        std::vector<LabelMask> ls;
        for (const auto& p : pts) ls.push_back(inst.label(p));
        if (covers_all_labels(ls, inst.n())) anchors.push_back(std::move(a));
    }
    return anchors;
}

std::vector<StrongSolution> enumerate_strong_solutions(const LabelGrid& inst) {
    std::vector<StrongSolution> out;
    std::set<std::vector<GridPoint>> seen;
    for (const auto& a : covering_anchors(inst)) {
        auto pts = box_points(inst, a);
        std::vector<LabelMask> ls;
        for (const auto& p : pts) ls.push_back(inst.label(p));
        auto picked = lemma_r_to_n(ls, inst.n());
        StrongSolution sol;
        for (auto i : picked) sol.points.push_back(pts[i]);
        auto key = sol.points;
        std::sort(key.begin(), key.end());
        if (seen.insert(key).second) out.push_back(std::move(sol));
    }
    return out;
}

namespace {

// mt19937_64 with explicit modulo reduction keeps output identical across
// standard libraries.
std::uint64_t next_below(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

}  // namespace

LabelGrid random_antipodal_instance(const std::vector<int>& dims, std::uint64_t seed) {
    for (int m : dims)
        if (m < 2) throw std::invalid_argument("generator: widths must be >= 2");
    std::size_t cells = 1;
    for (int m : dims) cells *= static_cast<std::size_t>(m);
    LabelGrid grid(dims, std::vector<LabelMask>(cells, 0));
    std::mt19937_64 rng(seed);
    int n = grid.n();
    LabelMask all = (LabelMask{1} << n) - 1;
    for (std::size_t idx = 0; idx < cells; ++idx) {
        GridPoint p = grid.point_at(idx);
        if (!grid.on_boundary(p)) {
            grid.set_label(p, static_cast<LabelMask>(next_below(rng, all + 1)));
            continue;
        }
        GridPoint q = grid.antipode(p);
        std::size_t qidx = grid.index_of(q);
        if (qidx < idx) {
            grid.set_label(p, negate_label(grid.label_at(qidx), n));
        } else {
            // Lexicographic representative of the pair; draw fresh bits.
            grid.set_label(p, static_cast<LabelMask>(next_below(rng, all + 1)));
        }
    }
    return grid;
}

Tucker2D random_tucker2d(int m, std::uint64_t seed) {
    if (m < 2) throw std::invalid_argument("generator: m must be >= 2");
    Tucker2D t;
    t.m = m;
    t.labels.assign(static_cast<std::size_t>(m) * m, 0);
    std::mt19937_64 rng(seed);
    const std::int8_t values[4] = {-2, -1, +1, +2};
    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= m; ++j) {
            bool boundary = (i == 1 || i == m || j == 1 || j == m);
            int ai = m - i + 1, aj = m - j + 1;
            if (boundary && (std::pair(ai, aj) < std::pair(i, j))) {
                t.set_label(i, j, static_cast<std::int8_t>(-t.label(ai, aj)));
            } else {
                t.set_label(i, j, values[next_below(rng, 4)]);
            }
        }
    }
    return t;
}

}  // namespace chred
