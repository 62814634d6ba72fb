#include "repostlab/textfeat/post_features.hpp"

#include <algorithm>

#include "repostlab/core/schema.hpp"
#include "repostlab/textfeat/readability.hpp"
#include "repostlab/textfeat/tokenize.hpp"
#include "repostlab/util/hashing.hpp"

namespace repostlab::textfeat {

std::map<std::string, int> build_hashtag_codes(const core::Corpus& corpus) {
    std::map<std::string, int> codes;
    for (const auto& p : corpus.posts)
        for (const auto& h : p.hashtags) codes.emplace(h, 0);
    for (const auto& u : corpus.users)
        for (const auto& p : u.history)
            for (const auto& h : p.hashtags) codes.emplace(h, 0);
    int next = 1;
    for (auto& kv : codes) kv.second = next++;  // std::map iterates sorted
    return codes;
}

std::vector<double> PostFeatureExtractor::topic_mixture(const std::string& text) const {
    return lda_infer(*lda_, text, fnv1a64(text) ^ lda_->seed);
}

std::vector<double> PostFeatureExtractor::extract(const core::RawPost& post) const {
    std::vector<double> out;
    out.reserve(core::kSizeM);
    const auto tokens = word_tokens(post.text);

    const auto t19 = registry_->topic19_scores(tokens);
    out.insert(out.end(), t19.begin(), t19.end());
    out.push_back(static_cast<double>(argmax_lowest(t19)));
    out.push_back(static_cast<double>(
        std::count_if(t19.begin(), t19.end(),
                      [](double v) { return v > kTopicNumThreshold; })));

    const auto t6 = registry_->topic6_scores(tokens);
    out.insert(out.end(), t6.begin(), t6.end());
    out.push_back(static_cast<double>(argmax_lowest(t6)));
    out.push_back(static_cast<double>(
        std::count_if(t6.begin(), t6.end(),
                      [](double v) { return v > kTopicNumThreshold; })));

    const auto theta = topic_mixture(post.text);
    out.insert(out.end(), theta.begin(), theta.end());

    const auto [chars, words] = lexical_stats(post.text);
    out.push_back(static_cast<double>(chars));
    out.push_back(static_cast<double>(words));
    out.push_back(registry_->grammar_word_score(post.text));
    out.push_back(registry_->grammar_post_score(post.text));
    out.push_back(registry_->polarity_score(tokens));
    out.push_back(registry_->subjectivity_score(tokens));
    out.push_back(registry_->irony_score(tokens));
    out.push_back(registry_->offensive_score(tokens));
    out.push_back(registry_->emoji_code(tokens));
    out.push_back(registry_->masculinity_score(tokens));

    const auto read = readability_scores(post.text);
    out.insert(out.end(), read.begin(), read.end());

    const auto s = registry_->sentiment(tokens);
    out.push_back(s.neg);
    out.push_back(s.neu);
    out.push_back(s.pos);
    out.push_back(s.compound);
    out.push_back(static_cast<double>(s.main_label));

    const auto emo = registry_->emotion_scores(tokens);
    out.insert(out.end(), emo.begin(), emo.end());
    out.push_back(static_cast<double>(argmax_lowest(emo)));

    const auto hate = registry_->hate_scores(tokens);
    out.insert(out.end(), hate.begin(), hate.end());
    out.push_back(static_cast<double>(
        std::count_if(hate.begin(), hate.end(),
                      [](double v) { return v > kHateNumThreshold; })));

    int tag_code = 0;
    std::vector<std::string> tags = post.hashtags;
    std::sort(tags.begin(), tags.end());
    for (const auto& h : tags) {
        auto it = hashtag_codes_->find(h);
        if (it != hashtag_codes_->end()) {
            tag_code = it->second;
            break;
        }
    }
    out.push_back(static_cast<double>(tag_code));
    return out;
}

}  // namespace repostlab::textfeat
