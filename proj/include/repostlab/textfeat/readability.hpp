#pragma once

#include <array>
#include <cstddef>
#include <string>

namespace repostlab::textfeat {

struct TextCounts {
    std::size_t words = 0;
    std::size_t sentences = 0;
    std::size_t characters = 0;     // alphanumeric characters inside words
    std::size_t syllables = 0;
    std::size_t polysyllables = 0;  // words with >= 3 syllables
    std::size_t long_words = 0;     // words with > 6 alphanumeric characters
    std::size_t unfamiliar = 0;     // alphabetic words off the easy-word list
};

TextCounts text_counts(const std::string& text);

// Output order matches M_Readability1..11.
enum ReadabilityIndex {
    kKincaid = 0,
    kARI = 1,
    kColemanLiau = 2,
    kFleschReadingEase = 3,
    kGunningFog = 4,
    kSMOG = 5,
    kLIX = 6,
    kRIX = 7,
    kDaleChall = 8,
    kPolysyllableCount = 9,
    kUnfamiliarCount = 10,
};

// The nine classic formulas on this artifact's fixed counters, plus the
// polysyllable and unfamiliar-word counts. Zero words or sentences makes the
// nine formula values NaN and the two counts 0.
std::array<double, 11> readability_scores(const std::string& text);

}  // namespace repostlab::textfeat
