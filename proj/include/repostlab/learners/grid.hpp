#pragma once

#include <cstdint>
#include <vector>

#include "repostlab/datasets/build.hpp"
#include "repostlab/learners/gbdt.hpp"

namespace repostlab::learners {

struct GridEntry {
    GBDTParams params;
    double val_f1 = 0.0;
};

struct GridResult {
    GBDTParams best;
    double best_f1 = -1.0;
    std::vector<GridEntry> table;
};

// Canonical hyperparameter sweep, nested depth -> learning rate -> rounds ->
// min child weight -> subsample -> positive weight.  The positive-weight axis
// depends on the sampling ratio; each configuration gets its own derived seed.
std::vector<GBDTParams> appendix_grid(datasets::RatioTag ratio, std::uint64_t seed);

// Exhaustive search scored by threshold-0.5 F1 on the validation fold; the
// earliest configuration wins ties.
GridResult grid_search(const DMatrix& train, const DMatrix& val,
                       const std::vector<GBDTParams>& grid);

}  // namespace repostlab::learners
