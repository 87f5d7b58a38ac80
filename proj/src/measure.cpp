#include "chred/measure.hpp"

#include <algorithm>
#include <stdexcept>

namespace chred {

Interval::Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (hi < lo) throw std::invalid_argument("interval: hi < lo");
}

bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }

Block::Block(Interval iv, Rational h) : interval(std::move(iv)), height(std::move(h)) {
    if (height.sign() < 0) throw std::invalid_argument("block: negative height");
    if (height.sign() > 0 && !(interval.lo < interval.hi))
        throw std::invalid_argument("block: empty interval with positive height");
}

PiecewiseDensity::PiecewiseDensity(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
    auto degenerate = [](const Block& b) {
        return b.height.is_zero() || b.interval.lo == b.interval.hi;
    };
    blocks_.erase(std::remove_if(blocks_.begin(), blocks_.end(), degenerate), blocks_.end());
    std::sort(blocks_.begin(), blocks_.end(), [](const Block& a, const Block& b) {
        return a.interval.lo < b.interval.lo;
    });
    for (std::size_t i = 0; i + 1 < blocks_.size(); ++i) {
        if (blocks_[i + 1].interval.lo < blocks_[i].interval.hi)
            throw std::invalid_argument("density: overlapping blocks");
    }
    // Merge adjacent blocks of equal height.
    std::vector<Block> merged;
    for (auto& b : blocks_) {
        if (!merged.empty() && merged.back().interval.hi == b.interval.lo &&
            merged.back().height == b.height) {
            merged.back().interval.hi = b.interval.hi;
        } else {
            merged.push_back(b);
        }
    }
    blocks_ = std::move(merged);
}

CutSet::CutSet(std::vector<Rational> cuts) : cuts_(std::move(cuts)) {
    for (std::size_t i = 0; i + 1 < cuts_.size(); ++i) {
        if (!(cuts_[i] < cuts_[i + 1]))
            throw std::invalid_argument("cutset: cuts must be strictly increasing");
    }
}

int CutSet::sign_at(const Rational& p) const {
    auto it = std::upper_bound(cuts_.begin(), cuts_.end(), p);
    std::size_t greater = static_cast<std::size_t>(cuts_.end() - it);
    return (greater % 2 == 0) ? +1 : -1;
}

std::size_t CutSet::count_in_open(const Rational& lo, const Rational& hi) const {
    auto first = std::upper_bound(cuts_.begin(), cuts_.end(), lo);
    auto last = std::lower_bound(cuts_.begin(), cuts_.end(), hi);
    return first < last ? static_cast<std::size_t>(last - first) : 0;
}

Rational total_mass(const PiecewiseDensity& d) {
    Rational m = 0;
    for (const auto& b : d.blocks()) m += b.mass();
    return m;
}

namespace {

// Signed length of [lo, hi]: sum over pieces between cuts of sign * length.
Rational signed_length(const Interval& iv, const CutSet& s) {
    const auto& cuts = s.cuts();
    auto first = std::upper_bound(cuts.begin(), cuts.end(), iv.lo);
    auto last = std::lower_bound(cuts.begin(), cuts.end(), iv.hi);
    Rational acc = 0;
    Rational left = iv.lo;
    std::size_t idx = static_cast<std::size_t>(first - cuts.begin());
    // Piece ending at cut idx has (cuts.size() - idx) cuts strictly greater
    // than its interior, counting cut idx itself.
    for (auto it = first; it != last; ++it, ++idx) {
        int sign = ((cuts.size() - idx) % 2 == 0) ? +1 : -1;
        acc += Rational(sign) * (*it - left);
        left = *it;
    }
    int sign = ((cuts.size() - idx) % 2 == 0) ? +1 : -1;
    acc += Rational(sign) * (iv.hi - left);
    return acc;
}

}  // namespace

Rational signed_value(const PiecewiseDensity& d, const CutSet& s) {
    Rational acc = 0;
    for (const auto& b : d.blocks()) acc += b.height * signed_length(b.interval, s);
    return acc;
}

Rational signed_value(const PiecewiseDensity& d, const CutSet& s, const Interval& ambient) {
    for (const auto& c : s.cuts())
        if (!ambient.contains(c)) throw std::out_of_range("cut out of range");
    return signed_value(d, s);
}

Rational interval_value(const Interval& j, const CutSet& s) {
    if (j.length() != Rational(1)) throw std::invalid_argument("interval_value: non-unit interval");
    return signed_length(j, s);
}

std::size_t cuts_in_interior(const Interval& j, const CutSet& s) {
    return s.count_in_open(j.lo, j.hi);
}

}  // namespace chred
