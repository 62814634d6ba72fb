#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "repostlab/core/types.hpp"
#include "repostlab/textfeat/lda.hpp"
#include "repostlab/textfeat/post_features.hpp"
#include "repostlab/userfeat/graph.hpp"
#include "repostlab/userfeat/summary.hpp"

namespace repostlab::userfeat {

struct ContextOptions {
    std::uint64_t seed = 0;
    // Reference date for account age; <= 0 means the corpus max timestamp.
    std::int64_t reference_date = 0;
    // Truncate histories at each instance's event time before summarizing.
    bool strict_causality = false;
    int jobs = 1;
    // Directory for the per-post feature cache; empty disables caching.
    std::string cache_dir;
};

// Everything needed to turn an instance into a 303-value row: the trained
// topic model, scorers, follow graph, LeaderRank scores, and per-user
// history summaries. Immutable after build; instance extraction is
// read-only and parallel-safe (strict-causality mode recomputes truncated
// summaries per call instead of using the shared cache).
class FeatureContext {
public:
    // The atomic warning counter makes the class immovable, so build returns
    // a prvalue (guaranteed elision) and build_unique covers heap placement.
    static FeatureContext build(const core::Corpus& corpus, const ContextOptions& opts) {
        return FeatureContext(corpus, opts);
    }
    static std::unique_ptr<FeatureContext> build_unique(const core::Corpus& corpus,
                                                        const ContextOptions& opts) {
        return std::unique_ptr<FeatureContext>(new FeatureContext(corpus, opts));
    }

    const core::Corpus& corpus() const { return *corpus_; }
    const FollowGraph& graph() const { return graph_; }
    const textfeat::TopicModel& topic_model() const { return lda_; }
    const textfeat::PostFeatureExtractor& extractor() const { return *extractor_; }
    const std::map<std::string, int>& hashtag_codes() const { return hashtag_codes_; }
    std::int64_t reference_date() const { return reference_date_; }
    bool strict_causality() const { return opts_.strict_causality; }
    std::size_t age_clamp_warnings() const { return age_clamps_.load(); }

    const HistorySummary& summary_of(const std::string& user_id) const;

    // Post M features and topic mixture, cached per post id.
    const std::vector<double>& post_m(const std::string& post_id) const;
    const std::vector<double>& post_topics(const std::string& post_id) const;

    // Feature blocks, in dictionary order within each block.
    std::vector<double> profile_features(const core::UserRecord& user,
                                         const std::string& counterpart_id) const;
    std::vector<double> activity_features(const HistorySummary& s) const;
    std::vector<double> popularity_features(const HistorySummary& s) const;
    std::vector<double> interaction_features(const HistorySummary& sender,
                                             const HistorySummary& recipient,
                                             const std::string& sender_id,
                                             const std::string& recipient_id,
                                             const core::Instance& instance) const;
    std::vector<double> historical_post_features(const HistorySummary& sender,
                                                 const HistorySummary& recipient) const;

    // The full 303-value row for an instance.
    std::vector<double> instance_features(const core::Instance& instance) const;
    // The 182-value vector used for nearest-negative ranking:
    // post M, then the sender's profile, activity+popularity, and mean-M
    // blocks. The recipient only supplies the sender's follows-counterpart
    // bit, so candidates ranked for one positive share it.
    std::vector<double> similarity_vector(const std::string& post_id,
                                          const std::string& sender_id,
                                          const std::string& recipient_id) const;

    int indegree_of(const std::string& user_id) const;

private:
    FeatureContext(const core::Corpus& corpus, const ContextOptions& opts);

    const core::Corpus* corpus_;
    ContextOptions opts_;
    FollowGraph graph_;
    textfeat::ScorerRegistry registry_;
    textfeat::TopicModel lda_;
    std::map<std::string, int> hashtag_codes_;
    std::unique_ptr<textfeat::PostFeatureExtractor> extractor_;
    std::map<std::string, double> leaderrank_;
    std::map<std::string, int> indegree_;
    std::map<std::string, HistorySummary> summaries_;
    std::map<std::string, std::vector<double>> post_m_;
    std::map<std::string, std::vector<double>> post_topics_;
    std::int64_t reference_date_ = 0;
    double max_post_count_ = 0.0;
    mutable std::atomic<std::size_t> age_clamps_{0};
};

}  // namespace repostlab::userfeat
