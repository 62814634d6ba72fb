#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "repostlab/core/types.hpp"
#include "repostlab/userfeat/features.hpp"

namespace repostlab::datasets {

enum class RatioTag { one_one, one_five, one_ten, general_one_five };

const char* ratio_name(RatioTag tag);
RatioTag parse_ratio(const std::string& name);  // throws std::invalid_argument
// Nearest negatives per positive under the similarity schemes (0 for general).
std::size_t ratio_nearest(RatioTag tag);
// Total negatives per positive.
std::size_t ratio_negatives(RatioTag tag);

struct PositiveStats {
    std::size_t parented = 0;        // posts with a parent link seen
    std::size_t missing_parent = 0;  // parent not in the corpus
    std::size_t outside_window = 0;  // latency not in (0, 24h]
};

// Every repost/quote/reply whose parent is present and whose latency is in
// (0, 24h] becomes one positive, in corpus post order.
std::vector<core::RepostEvent> enumerate_positives(const core::Corpus& corpus,
                                                   PositiveStats* stats = nullptr);

// Original posts sharing the positive's hashtag, created inside the 24 hours
// up to the repost, minus anything the recipient reposted and the positive's
// own original. Corpus post order.
std::vector<const core::RawPost*> negative_pool(const core::RepostEvent& positive,
                                                const core::Corpus& corpus);

using SimilarityFn = std::function<std::vector<double>(const std::string& post_id,
                                                       const std::string& sender_id)>;

struct Selection {
    std::vector<core::Instance> negatives;
    std::size_t deficit = 0;  // how many short of n the pool came up
};

// Ranks the pool by ascending cosine distance to the positive's similarity
// vector (ties by post_id) and keeps the closest n.
Selection select_negatives(const core::RepostEvent& positive,
                           const std::vector<const core::RawPost*>& pool, std::size_t n,
                           const SimilarityFn& features);

// Random (post, user) pairs with the user active after the post and the pair
// absent from the observed repost relation; k per positive, grouped in
// positive enumeration order. Throws when rejection sampling exhausts
// 10000 * k draws for one positive.
std::vector<core::Instance> general_negatives(const core::Corpus& corpus,
                                              std::size_t k_per_positive,
                                              std::uint64_t seed);

struct LabeledDataset {
    RatioTag ratio_tag = RatioTag::one_five;
    std::uint64_t seed = 0;
    std::vector<core::Instance> instances;  // each positive followed by its negatives
    std::size_t positives = 0;
    std::size_t dropped_short_pool = 0;    // pool smaller than the scheme needs
    std::size_t dropped_random_space = 0;  // not enough corpus-wide candidates
    PositiveStats positive_stats;
};

// Distinct instance hashtags, sorted.
std::vector<std::string> dataset_hashtags(const LabeledDataset& ds);

// Positives that cannot be paired with the full negative complement are
// dropped (counted), keeping the ratio exact for every kept positive.
LabeledDataset build_dataset(const userfeat::FeatureContext& ctx, RatioTag tag,
                             std::uint64_t seed);

struct LeakageResult {
    std::vector<core::Instance> train;
    std::size_t removed = 0;
};

// Drops train instances whose (sender, recipient) pair occurs in test.
LeakageResult leakage_filter(const std::vector<core::Instance>& train,
                             const std::vector<core::Instance>& test);

void write_dataset(const LabeledDataset& ds, const std::string& path);
LabeledDataset read_dataset(const std::string& path);

}  // namespace repostlab::datasets
