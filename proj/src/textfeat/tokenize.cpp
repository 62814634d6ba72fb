#include "repostlab/textfeat/tokenize.hpp"

#include <cctype>

namespace repostlab::textfeat {

namespace {

bool is_space(unsigned char c) { return std::isspace(c) != 0; }
bool is_alnum(unsigned char c) { return std::isalnum(c) != 0; }
bool is_alpha(unsigned char c) { return std::isalpha(c) != 0; }
bool is_vowel(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

}  // namespace

std::size_t char_count(const std::string& text) {
    std::size_t n = 0;
    for (unsigned char c : text)
        if ((c & 0xC0) != 0x80) ++n;  // skip UTF-8 continuation bytes
    return n;
}

std::vector<std::string> whitespace_tokens(const std::string& text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i])) ++i;
        std::size_t start = i;
        while (i < text.size() && !is_space(text[i])) ++i;
        if (i > start) out.push_back(text.substr(start, i - start));
    }
    return out;
}

std::vector<std::string> word_tokens(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        // trim apostrophes that ended up at the edges
        std::size_t b = 0, e = cur.size();
        while (b < e && cur[b] == '\'') ++b;
        while (e > b && cur[e - 1] == '\'') --e;
        if (e > b) out.push_back(cur.substr(b, e - b));
        cur.clear();
    };
    for (unsigned char c : text) {
        if (is_alnum(c) || c == '\'') {
            cur += static_cast<char>(std::tolower(c));
        } else if (!cur.empty()) {
            flush();
        }
    }
    if (!cur.empty()) flush();
    return out;
}

std::pair<std::size_t, std::size_t> lexical_stats(const std::string& text) {
    return {char_count(text), whitespace_tokens(text).size()};
}

std::size_t sentence_count(const std::string& text) {
    std::size_t n = 0;
    bool any_content = false;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (!is_space(static_cast<unsigned char>(c))) any_content = true;
        if (c == '.' || c == '!' || c == '?') {
            while (i < text.size() &&
                   (text[i] == '.' || text[i] == '!' || text[i] == '?'))
                ++i;
            if (i == text.size() || is_space(static_cast<unsigned char>(text[i]))) ++n;
        } else {
            ++i;
        }
    }
    if (n == 0 && any_content) n = 1;
    return n;
}

std::string alpha_core(const std::string& token) {
    std::string out;
    for (unsigned char c : token)
        if (is_alpha(c)) out += static_cast<char>(std::tolower(c));
    return out;
}

std::size_t alnum_count(const std::string& token) {
    std::size_t n = 0;
    for (unsigned char c : token)
        if (is_alnum(c)) ++n;
    return n;
}

std::size_t syllable_count(const std::string& word) {
    const std::string w = alpha_core(word);
    if (w.empty()) return 0;
    std::size_t groups = 0;
    bool in_group = false;
    for (char c : w) {
        if (is_vowel(c)) {
            if (!in_group) ++groups;
            in_group = true;
        } else {
            in_group = false;
        }
    }
    const std::size_t n = w.size();
    if (groups > 1 && w[n - 1] == 'e' && !is_vowel(w[n - 2]) && w[n - 2] != 'l')
        --groups;
    return groups == 0 ? 1 : groups;
}

}  // namespace repostlab::textfeat
