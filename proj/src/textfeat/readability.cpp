#include "repostlab/textfeat/readability.hpp"

#include <cmath>

#include "repostlab/textfeat/lexicons.hpp"
#include "repostlab/textfeat/tokenize.hpp"

namespace repostlab::textfeat {

TextCounts text_counts(const std::string& text) {
    TextCounts c;
    const auto tokens = whitespace_tokens(text);
    c.words = tokens.size();
    c.sentences = sentence_count(text);
    const auto& easy = dale_chall_words();
    for (const auto& tok : tokens) {
        c.characters += alnum_count(tok);
        const std::size_t syl = syllable_count(tok);
        c.syllables += syl;
        if (syl >= 3) ++c.polysyllables;
        if (alnum_count(tok) > 6) ++c.long_words;
        const std::string core = alpha_core(tok);
        if (!core.empty() && easy.find(core) == easy.end()) ++c.unfamiliar;
    }
    return c;
}

std::array<double, 11> readability_scores(const std::string& text) {
    const TextCounts c = text_counts(text);
    std::array<double, 11> out{};
    if (c.words == 0 || c.sentences == 0) {
        const double nan = std::nan("");
        for (int i = 0; i < 9; ++i) out[i] = nan;
        out[kPolysyllableCount] = 0.0;
        out[kUnfamiliarCount] = 0.0;
        return out;
    }
    const double W = static_cast<double>(c.words);
    const double S = static_cast<double>(c.sentences);
    const double C = static_cast<double>(c.characters);
    const double Y = static_cast<double>(c.syllables);
    const double PS = static_cast<double>(c.polysyllables);
    const double LW = static_cast<double>(c.long_words);
    const double DW = static_cast<double>(c.unfamiliar);

    out[kKincaid] = 0.39 * (W / S) + 11.8 * (Y / W) - 15.59;
    out[kARI] = 4.71 * (C / W) + 0.5 * (W / S) - 21.43;
    out[kColemanLiau] = 0.0588 * (100.0 * C / W) - 0.296 * (100.0 * S / W) - 15.8;
    out[kFleschReadingEase] = 206.835 - 1.015 * (W / S) - 84.6 * (Y / W);
    out[kGunningFog] = 0.4 * ((W / S) + 100.0 * PS / W);
    out[kSMOG] = 1.0430 * std::sqrt(PS * 30.0 / S) + 3.1291;
    out[kLIX] = W / S + 100.0 * LW / W;
    out[kRIX] = LW / S;
    double dc = 0.1579 * (100.0 * DW / W) + 0.0496 * (W / S);
    if (DW / W > 0.05) dc += 3.6365;
    out[kDaleChall] = dc;
    out[kPolysyllableCount] = PS;
    out[kUnfamiliarCount] = DW;
    return out;
}

}  // namespace repostlab::textfeat
