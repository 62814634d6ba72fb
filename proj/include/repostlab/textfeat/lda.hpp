#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace repostlab::textfeat {

struct TopicModel {
    int K = 10;
    double alpha = 5.0;  // 50 / K
    double beta = 0.01;
    std::uint64_t seed = 0;
    std::map<std::string, int> vocab;                 // token -> word index
    std::vector<std::string> vocab_words;             // word index -> token
    std::vector<std::vector<double>> topic_word;      // K x V, rows sum to 1
    std::vector<std::vector<std::int32_t>> word_topic_count;  // K x V Gibbs counts
    std::vector<std::int64_t> topic_count;            // K totals

    std::size_t vocab_size() const { return vocab_words.size(); }
};

inline constexpr int kLdaTrainSweeps = 200;
inline constexpr int kLdaInferSweeps = 50;

// Collapsed Gibbs sampling over stop-word-filtered tokens. Deterministic for
// a fixed seed. Throws if no document leaves any token after filtering.
TopicModel lda_train(const std::vector<std::string>& texts, int K,
                     double alpha, double beta, int iters, std::uint64_t seed);

inline TopicModel lda_train(const std::vector<std::string>& texts, int K,
                            std::uint64_t seed) {
    return lda_train(texts, K, 50.0 / K, 0.01, kLdaTrainSweeps, seed);
}

// Folds a document into the trained model with fixed training counts and
// returns the topic mixture, averaged over the second half of the sweeps.
// No in-vocabulary token -> uniform 1/K.
std::vector<double> lda_infer(const TopicModel& model, const std::string& text,
                              int iters, std::uint64_t seed);

inline std::vector<double> lda_infer(const TopicModel& model, const std::string& text,
                                     std::uint64_t seed) {
    return lda_infer(model, text, kLdaInferSweeps, seed);
}

}  // namespace repostlab::textfeat
