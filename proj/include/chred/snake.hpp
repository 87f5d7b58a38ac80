#pragma once

#include <vector>

#include "chred/tucker.hpp"

namespace chred {

// One stage of the width-reduction pipeline.
struct PipelineRecord {
    enum class Kind { Pad, Fold, Pad16 };
    Kind kind = Kind::Pad;
    int dim = 0;         // 0-based folded/padded dimension
    int s = 0;           // fold: pre-fold width is 3s+1
    int pad_left = 0;    // pad/pad16: copies of the first ray added on the left
    int pad_right = 0;   // copies of the last ray added on the right
};

using FoldRecord = PipelineRecord;  // kind == Fold

struct Pipeline {
    std::vector<PipelineRecord> records;
};

// Ray padding: brings width(dim) to 3s+1 by copying boundary rays
// symmetrically (+1 each side if width = 2 mod 3, +2 each side if = 0 mod 3).
// Antipodality is preserved.
LabelGrid pad_width(const LabelGrid& inst, int dim, PipelineRecord& record);

// Symmetric padding of an even width w < 16 up to exactly 16.
LabelGrid pad_to_16(const LabelGrid& inst, int dim, PipelineRecord& record);

// Snake fold: requires width(dim) = 3s+1; the folded dimension shrinks to
// s+3 and a new last dimension of width 8 appears. Bottom/top caps carry the
// constant +1/-1 labels; snake cells inherit the mapped ray's label plus the
// new lane coordinate. Throws "pad first" when the width is not 3s+1.
LabelGrid fold(const LabelGrid& inst, int dim, PipelineRecord& record);

// Ray surjection of one fold: (j, m) in the folded instance -> source ray t.
// Returns 0 for cap cells.
int fold_ray_map(int j, int m, int s);
// New-coordinate label of a snake cell: +1 bottom lane, -1 top lane.
int fold_lane_sign(int j, int m, int s);
bool fold_is_bottom_cap(int j, int m, int s);
bool fold_is_top_cap(int j, int m, int s);

// Maps a solution of the folded instance back to the pre-fold instance:
// drops the new coordinate through the ray map and reduces to <= k points
// (the pre-fold labelling drives the reduction). A solution point inside a
// cap is a correctness violation and throws.
StrongSolution map_solution_back(const LabelGrid& pre_fold, const PipelineRecord& record,
                                 const StrongSolution& sol);

// Back-maps through a pad record (copied boundary rays clamp to the source ray).
StrongSolution map_solution_back_pad(const LabelGrid& pre_pad, const PipelineRecord& record,
                                     const StrongSolution& sol);

// Full pipeline: 2D-Tucker -> 2D-StrongTucker -> fold widest-first until all
// widths are <= 8, then pad-to-16 + fold any even width < 8. The result has
// every width exactly 8. Throws "parity violation" if an odd width < 8 appears.
LabelGrid pipeline_to_width8(const Tucker2D& t, Pipeline& pipeline);

// Replays a pipeline on the mapped 2D instance; reproduces the final instance
// bit for bit.
LabelGrid replay_pipeline(const Tucker2D& t, const Pipeline& pipeline);

// Back-maps a solution of the final instance through the whole pipeline to a
// 2D-Tucker pair (point pair; labels correspond under the 4-label map).
TuckerPair map_solution_to_tucker2d(const Tucker2D& t, const Pipeline& pipeline, const StrongSolution& sol);

}  // namespace chred
