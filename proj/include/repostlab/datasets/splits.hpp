#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "repostlab/datasets/build.hpp"

namespace repostlab::datasets {

inline constexpr int kMcRepeats = 10;
inline constexpr double kTrainFraction = 0.63;
inline constexpr double kValFraction = 0.07;
inline constexpr int kLohoSubsets = 10;
inline constexpr int kTemporalWindows = 13;
inline constexpr int kTemporalTrainWindows = 3;

struct Fold {
    std::vector<std::string> train;  // instance ids
    std::vector<std::string> val;
    std::vector<std::string> test;
    std::string group;  // hashtag (or "mixed") the fold reports under
};

struct SplitPlan {
    std::string protocol;  // mixed-mc | perhash-mc | loho-ood | temporal
    std::uint64_t seed = 0;
    std::vector<Fold> folds;
    std::vector<std::string> notes;  // diagnostics; not serialized
};

// Seeded 63/7/30-style shuffles of the whole dataset; train is leakage-
// filtered against test in every fold.
SplitPlan split_monte_carlo(const LabeledDataset& ds, int repeats, double train_fraction,
                            double val_fraction, std::uint64_t seed);

// The same Monte Carlo scheme run inside each hashtag, all folds in one plan
// grouped by hashtag.
SplitPlan split_per_hashtag(const LabeledDataset& ds, int repeats, double train_fraction,
                            double val_fraction, std::uint64_t seed);

// Test = the target hashtag; the rest (after removing sender-recipient pairs
// that span several hashtags) is cut into `subsets` parts, one held out for
// validation per fold.
SplitPlan split_leave_one_hashtag_out(const LabeledDataset& ds, const std::string& target,
                                      int subsets, std::uint64_t seed);

// Every hashtag takes a turn as the held-out target.
SplitPlan split_loho_all(const LabeledDataset& ds, int subsets, std::uint64_t seed);

// Rolling-window forecasting inside one hashtag: windows hold equal positive
// counts, each fold trains on `train_windows` consecutive windows and tests
// on the next; the latest tenth of the training rows is validation.
SplitPlan split_temporal(const LabeledDataset& ds, const std::string& hashtag, int windows,
                         int train_windows, std::uint64_t seed);

// Temporal plans for every hashtag with enough positives; hashtags that fall
// short are recorded in notes and skipped. Throws if none qualify.
SplitPlan split_temporal_all(const LabeledDataset& ds, int windows, int train_windows,
                             std::uint64_t seed);

void write_split_plan(const SplitPlan& plan, const std::string& path);
SplitPlan read_split_plan(const std::string& path);

}  // namespace repostlab::datasets
