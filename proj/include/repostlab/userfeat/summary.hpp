#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "repostlab/core/types.hpp"
#include "repostlab/textfeat/post_features.hpp"

namespace repostlab::userfeat {

// Cached aggregates over one user's history (optionally truncated at a
// causality cutoff). Immutable once built.
struct HistorySummary {
    std::size_t n_posts = 0;
    double pct_original = 0.0;  // percentages in [0,100]; NaN when empty
    double pct_repost = 0.0;
    double pct_quote = 0.0;
    double pct_reply = 0.0;
    double pct_interactive = 0.0;
    double avg_interval_days = 0.0;  // NaN with fewer than 2 posts
    double avg_reposts = 0.0;        // mean received counts; NaN when empty
    double avg_quotes = 0.0;
    double avg_replies = 0.0;
    double avg_likes = 0.0;
    std::map<std::string, std::int64_t> mention_counts;  // user id -> times mentioned
    std::map<std::string, std::int64_t> mention_posts;   // user id -> posts mentioning
    std::set<std::string> post_ids;
    std::set<std::string> reposted_parent_ids;  // parents of repost-like entries
    std::vector<const core::RawPost*> posts;    // surviving history entries
    std::vector<std::vector<double>> post_m;    // per-post M vectors
    std::vector<std::vector<double>> post_topics;  // per-post topic mixtures
    std::vector<double> mean_m;                 // 78 values, NaN-skipping mean
    std::vector<double> mean_topics;            // plain mean of mixtures
};

// cutoff < 0 keeps the whole history; otherwise posts created after the
// cutoff are dropped before aggregation. The optional caches map post ids
// to precomputed M vectors / topic mixtures and skip re-extraction.
HistorySummary build_summary(const core::UserRecord& user,
                             const textfeat::PostFeatureExtractor& extractor,
                             std::int64_t cutoff = -1,
                             const std::map<std::string, std::vector<double>>* m_cache = nullptr,
                             const std::map<std::string, std::vector<double>>* topic_cache = nullptr);

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace repostlab::userfeat
