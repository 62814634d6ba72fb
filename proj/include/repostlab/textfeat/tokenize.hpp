#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace repostlab::textfeat {

// Unicode scalar count of the whole string (UTF-8 lead bytes).
std::size_t char_count(const std::string& text);

// Whitespace-delimited tokens after trimming; the word unit for counts and
// readability.
std::vector<std::string> whitespace_tokens(const std::string& text);

// Lowercased alphanumeric runs (apostrophes kept inside a run); the token
// unit for lexicon lookups and LDA.
std::vector<std::string> word_tokens(const std::string& text);

// (char_count, word_count) as published in M_CharNum / M_WordNum.
std::pair<std::size_t, std::size_t> lexical_stats(const std::string& text);

// Number of sentences: runs of .!? followed by whitespace or end of text;
// at least 1 when the text contains any non-whitespace character.
std::size_t sentence_count(const std::string& text);

// Fixed syllable counter: vowel groups (aeiouy) on the lowercased alphabetic
// core, minus a silent final e (unless the word ends in "le"), minimum 1.
// Returns 0 for words with no letters.
std::size_t syllable_count(const std::string& word);

// Alphabetic characters of a token, lowercased.
std::string alpha_core(const std::string& token);

// Alphanumeric character count of a token.
std::size_t alnum_count(const std::string& token);

}  // namespace repostlab::textfeat
