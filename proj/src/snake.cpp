#include "chred/snake.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace chred {

namespace {

LabelGrid pad_symmetric(const LabelGrid& inst, int dim, int copies) {
    if (copies == 0) return inst;
    const int w = inst.dims()[static_cast<std::size_t>(dim)];
    std::vector<int> dims = inst.dims();
    dims[static_cast<std::size_t>(dim)] = w + 2 * copies;
    std::size_t cells = 1;
    for (int m : dims) cells *= static_cast<std::size_t>(m);
    std::vector<LabelMask> labels(cells);
    LabelGrid out(dims, std::move(labels));
    for (std::size_t idx = 0; idx < out.cell_count(); ++idx) {
        GridPoint p = out.point_at(idx);
        GridPoint q = p;
        q[static_cast<std::size_t>(dim)] =
            std::clamp(p[static_cast<std::size_t>(dim)] - copies, 1, w);
        out.set_label(p, inst.label(q));
    }
    return out;
}

}  // namespace

LabelGrid pad_width(const LabelGrid& inst, int dim, PipelineRecord& record) {
    const int w = inst.dims()[static_cast<std::size_t>(dim)];
    int copies = 0;
    switch (w % 3) {
        case 1: copies = 0; break;
        case 2: copies = 1; break;
        case 0: copies = 2; break;
    }
    record = {PipelineRecord::Kind::Pad, dim, 0, copies, copies};
    return pad_symmetric(inst, dim, copies);
}

LabelGrid pad_to_16(const LabelGrid& inst, int dim, PipelineRecord& record) {
    const int w = inst.dims()[static_cast<std::size_t>(dim)];
    if (w >= 16 || w % 2 != 0) throw std::logic_error("parity violation");
    int copies = (16 - w) / 2;
    record = {PipelineRecord::Kind::Pad16, dim, 0, copies, copies};
    return pad_symmetric(inst, dim, copies);
}

bool fold_is_bottom_cap(int j, int m, int s) {
    return (m == 1 && j <= s + 2) || (j == s + 3 && m <= 5);
}

bool fold_is_top_cap(int j, int m, int /*s*/) {
    return (m == 8 && j >= 2) || (j == 1 && m >= 4);
}

int fold_ray_map(int j, int m, int s) {
    if (fold_is_bottom_cap(j, m, s) || fold_is_top_cap(j, m, s)) return 0;
    if (m == 2 || m == 3) return j <= s + 1 ? j : s + 1;
    if (m == 4 || m == 5) {
        if (j == 2) return 2 * s;
        if (j == s + 2) return s + 2;
        return 2 * s + 3 - j;
    }
    if (m == 6 || m == 7) return j == 2 ? 2 * s + 1 : 2 * s - 2 + j;
    return 0;
}

int fold_lane_sign(int j, int m, int s) {
    switch (m) {
        case 2: return +1;
        case 3: return j == s + 2 ? +1 : -1;
        case 4: return j == s + 2 ? +1 : -1;
        case 5: return j >= 3 ? +1 : -1;
        case 6: return j >= 3 ? +1 : -1;
        case 7: return -1;
        default: return 0;
    }
}

LabelGrid fold(const LabelGrid& inst, int dim, PipelineRecord& record) {
    const int w = inst.dims()[static_cast<std::size_t>(dim)];
    if (w < 4 || w % 3 != 1) throw std::invalid_argument("pad first");
    const int s = (w - 1) / 3;
    const int k = inst.n();
    record = {PipelineRecord::Kind::Fold, dim, s, 0, 0};

    std::vector<int> dims = inst.dims();
    dims[static_cast<std::size_t>(dim)] = s + 3;
    dims.push_back(8);
    std::size_t cells = 1;
    for (int m : dims) cells *= static_cast<std::size_t>(m);
    LabelGrid out(dims, std::vector<LabelMask>(cells));

    const LabelMask all_kp1 = (LabelMask{1} << (k + 1)) - 1;
    for (std::size_t idx = 0; idx < out.cell_count(); ++idx) {
        GridPoint p = out.point_at(idx);
        const int j = p[static_cast<std::size_t>(dim)];
        const int m = p.back();
        LabelMask mask;
        if (fold_is_bottom_cap(j, m, s)) {
            mask = all_kp1;
        } else if (fold_is_top_cap(j, m, s)) {
            mask = 0;
        } else {
            GridPoint q(p.begin(), p.end() - 1);
            q[static_cast<std::size_t>(dim)] = fold_ray_map(j, m, s);
            mask = inst.label(q);
            if (fold_lane_sign(j, m, s) > 0) mask |= (LabelMask{1} << k);
        }
        out.set_label(p, mask);
    }
    return out;
}

StrongSolution map_solution_back(const LabelGrid& pre_fold, const PipelineRecord& record,
                                 const StrongSolution& sol) {
    if (record.kind != PipelineRecord::Kind::Fold)
        throw std::invalid_argument("map_solution_back: record is not a fold");
    const int dim = record.dim;
    const int s = record.s;
    std::vector<GridPoint> mapped;
    for (const auto& p : sol.points) {
        const int j = p[static_cast<std::size_t>(dim)];
        const int m = p.back();
        if (fold_is_bottom_cap(j, m, s) || fold_is_top_cap(j, m, s))
            throw std::logic_error("solution touches a cap");
        GridPoint q(p.begin(), p.end() - 1);
        q[static_cast<std::size_t>(dim)] = fold_ray_map(j, m, s);
        mapped.push_back(std::move(q));
    }
    std::sort(mapped.begin(), mapped.end());
    mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());
    std::vector<LabelMask> labels;
    for (const auto& q : mapped) labels.push_back(pre_fold.label(q));
    auto picked = lemma_r_to_n(labels, pre_fold.n());
    StrongSolution out;
    for (auto i : picked) out.points.push_back(mapped[i]);
    return out;
}

StrongSolution map_solution_back_pad(const LabelGrid& pre_pad, const PipelineRecord& record,
                                     const StrongSolution& sol) {
    if (record.kind == PipelineRecord::Kind::Fold)
        throw std::invalid_argument("map_solution_back_pad: record is a fold");
    const int dim = record.dim;
    const int w = pre_pad.dims()[static_cast<std::size_t>(dim)];
    std::vector<GridPoint> mapped;
    for (const auto& p : sol.points) {
        GridPoint q = p;
        q[static_cast<std::size_t>(dim)] =
            std::clamp(p[static_cast<std::size_t>(dim)] - record.pad_left, 1, w);
        mapped.push_back(std::move(q));
    }
    std::sort(mapped.begin(), mapped.end());
    mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());
    StrongSolution out;
    out.points = std::move(mapped);
    return out;
}

namespace {

int widest_dim_above_8(const LabelGrid& inst) {
    int best = -1, w_best = 8;
    for (int d = 0; d < inst.n(); ++d) {
        int w = inst.dims()[static_cast<std::size_t>(d)];
        if (w > w_best) {
            w_best = w;
            best = d;
        }
    }
    return best;
}

}  // namespace

LabelGrid pipeline_to_width8(const Tucker2D& t, Pipeline& pipeline) {
    if (t.m < 2 || t.m > 64) throw std::invalid_argument("tucker2d: m out of explicit-mode range [2,64]");
    if (auto rep = check_antipodality(t); !rep.ok)
        throw std::invalid_argument("tucker2d: input not antipodal");
    pipeline.records.clear();
    LabelGrid inst = map_2dtucker_to_strong(t);
    for (int d = widest_dim_above_8(inst); d >= 0; d = widest_dim_above_8(inst)) {
        PipelineRecord rec;
        LabelGrid padded = pad_width(inst, d, rec);
        if (rec.pad_left > 0) pipeline.records.push_back(rec);
        inst = fold(padded, d, rec);
        pipeline.records.push_back(rec);
    }
    for (int d = 0; d < inst.n(); ++d) {
        int w = inst.dims()[static_cast<std::size_t>(d)];
        if (w == 8) continue;
        if (w % 2 != 0) throw std::logic_error("parity violation");
        PipelineRecord rec;
        LabelGrid padded = pad_to_16(inst, d, rec);
        pipeline.records.push_back(rec);
        inst = fold(padded, d, rec);
        pipeline.records.push_back(rec);
    }
    return inst;
}

LabelGrid replay_pipeline(const Tucker2D& t, const Pipeline& pipeline) {
    LabelGrid inst = map_2dtucker_to_strong(t);
    for (const auto& rec : pipeline.records) {
        PipelineRecord check;
        switch (rec.kind) {
            case PipelineRecord::Kind::Pad:
                inst = pad_width(inst, rec.dim, check);
                break;
            case PipelineRecord::Kind::Pad16:
                inst = pad_to_16(inst, rec.dim, check);
                break;
            case PipelineRecord::Kind::Fold:
                inst = fold(inst, rec.dim, check);
                break;
        }
        if (check.kind != rec.kind || check.dim != rec.dim || check.s != rec.s ||
            check.pad_left != rec.pad_left || check.pad_right != rec.pad_right)
            throw std::logic_error("pipeline replay mismatch");
    }
    return inst;
}

TuckerPair map_solution_to_tucker2d(const Tucker2D& t, const Pipeline& pipeline,
                                    const StrongSolution& sol) {
    // Rebuild the instance entering each stage, then walk the records backward.
    std::vector<LabelGrid> stages;
    LabelGrid inst = map_2dtucker_to_strong(t);
    for (const auto& rec : pipeline.records) {
        stages.push_back(inst);
        PipelineRecord check;
        switch (rec.kind) {
            case PipelineRecord::Kind::Pad: inst = pad_width(inst, rec.dim, check); break;
            case PipelineRecord::Kind::Pad16: inst = pad_to_16(inst, rec.dim, check); break;
            case PipelineRecord::Kind::Fold: inst = fold(inst, rec.dim, check); break;
        }
    }
    StrongSolution cur = sol;
    for (std::size_t r = pipeline.records.size(); r-- > 0;) {
        const auto& rec = pipeline.records[r];
        if (rec.kind == PipelineRecord::Kind::Fold)
            cur = map_solution_back(stages[r], rec, cur);
        else
            cur = map_solution_back_pad(stages[r], rec, cur);
    }
    if (cur.points.size() == 1) cur.points.push_back(cur.points[0]);
    if (cur.points.size() != 2) throw std::logic_error("back-mapped solution is not a pair");
    return {cur.points[0], cur.points[1]};
}

}  // namespace chred
