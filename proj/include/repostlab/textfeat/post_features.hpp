#pragma once

#include <map>
#include <string>
#include <vector>

#include "repostlab/core/types.hpp"
#include "repostlab/textfeat/lda.hpp"
#include "repostlab/textfeat/scorers.hpp"

namespace repostlab::textfeat {

// Categorical codes for corpus hashtags: sorted distinct tags get codes
// 1..H; code 0 is reserved for tags outside the vocabulary.
std::map<std::string, int> build_hashtag_codes(const core::Corpus& corpus);

inline constexpr double kTopicNumThreshold = 0.5;
inline constexpr double kHateNumThreshold = 0.5;

class PostFeatureExtractor {
public:
    PostFeatureExtractor(const TopicModel* lda, const ScorerRegistry* registry,
                         const std::map<std::string, int>* hashtag_codes)
        : lda_(lda), registry_(registry), hashtag_codes_(hashtag_codes) {}

    // The 78 M features in dictionary order. Pure in the post content: the
    // topic-mixture sampler is seeded from the text hash.
    std::vector<double> extract(const core::RawPost& post) const;

    // The 10-component topic mixture alone (shared with the user features).
    std::vector<double> topic_mixture(const std::string& text) const;

private:
    const TopicModel* lda_;
    const ScorerRegistry* registry_;
    const std::map<std::string, int>* hashtag_codes_;
};

}  // namespace repostlab::textfeat
