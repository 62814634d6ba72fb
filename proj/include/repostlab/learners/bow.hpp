#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "repostlab/learners/dmatrix.hpp"

namespace repostlab::learners {

struct BowVocabulary {
    std::vector<std::string> tokens;
    std::map<std::string, int> index;
    std::vector<double> idf;
};

// Most frequent tokens across the corpus (count descending, token ascending on
// ties), with smoothed idf = ln((1 + N) / (1 + df)) + 1.  Throws when the
// corpus yields no tokens at all.
BowVocabulary bow_fit(const std::vector<std::string>& texts, std::size_t vocab_size = 2000);

// tf-idf row, L2-normalized when nonzero.
std::vector<double> bow_encode_one(const BowVocabulary& vocab, const std::string& text);

// Encoded matrix with one "tok_<token>" column per vocabulary entry.
DMatrix bow_matrix(const BowVocabulary& vocab, const std::vector<std::string>& texts,
                   const std::vector<int>& labels);

}  // namespace repostlab::learners
