#include "repostlab/learners/bow.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "repostlab/textfeat/tokenize.hpp"

namespace repostlab::learners {

BowVocabulary bow_fit(const std::vector<std::string>& texts, std::size_t vocab_size) {
    std::map<std::string, std::size_t> freq;
    std::map<std::string, std::size_t> df;
    for (const auto& text : texts) {
        std::set<std::string> seen;
        for (const auto& tok : textfeat::word_tokens(text)) {
            ++freq[tok];
            seen.insert(tok);
        }
        for (const auto& tok : seen) ++df[tok];
    }
    if (freq.empty()) throw std::runtime_error("bow_fit: no tokens in any text");

    std::vector<std::pair<std::string, std::size_t>> ranked(freq.begin(), freq.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (ranked.size() > vocab_size) ranked.resize(vocab_size);

    BowVocabulary vocab;
    const double n_docs = static_cast<double>(texts.size());
    for (const auto& [tok, cnt] : ranked) {
        (void)cnt;
        vocab.index[tok] = static_cast<int>(vocab.tokens.size());
        vocab.tokens.push_back(tok);
        vocab.idf.push_back(std::log((1.0 + n_docs) / (1.0 + static_cast<double>(df[tok]))) + 1.0);
    }
    return vocab;
}

std::vector<double> bow_encode_one(const BowVocabulary& vocab, const std::string& text) {
    std::vector<double> row(vocab.tokens.size(), 0.0);
    for (const auto& tok : textfeat::word_tokens(text)) {
        auto it = vocab.index.find(tok);
        if (it != vocab.index.end()) row[static_cast<std::size_t>(it->second)] += 1.0;
    }
    double norm = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) {
        row[j] *= vocab.idf[j];
        norm += row[j] * row[j];
    }
    if (norm > 0.0) {
        norm = std::sqrt(norm);
        for (double& v : row) v /= norm;
    }
    return row;
}

DMatrix bow_matrix(const BowVocabulary& vocab, const std::vector<std::string>& texts,
                   const std::vector<int>& labels) {
    if (texts.size() != labels.size()) {
        throw std::invalid_argument("bow_matrix: text/label count mismatch");
    }
    DMatrix m;
    m.feature_names.reserve(vocab.tokens.size());
    for (const auto& tok : vocab.tokens) m.feature_names.push_back("tok_" + tok);
    m.dictionary_hash = names_hash(m.feature_names);
    m.rows.reserve(texts.size());
    for (const auto& text : texts) m.rows.push_back(bow_encode_one(vocab, text));
    m.labels = labels;
    return m;
}

}  // namespace repostlab::learners
