#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace repostlab::textfeat {

struct SentimentScores {
    double neg = 0.0;
    double neu = 1.0;
    double pos = 0.0;
    double compound = 0.0;
    int main_label = 1;  // 0 negative, 1 neutral, 2 positive
};

// Deterministic keyword and lexicon scorers standing in for the pretrained
// classifiers used on the original data. Output shapes and ranges match the
// feature dictionary, so a heavier scorer can replace any entry without
// touching downstream code. All scorers are pure functions of the text.
class ScorerRegistry {
public:
    static ScorerRegistry builtin();

    // Adds or overrides sentiment valences from a `term<TAB>value` file.
    void load_valence_file(const std::string& path);

    // One likelihood per topic of the 19-topic scheme, each in [0,1).
    std::vector<double> topic19_scores(const std::vector<std::string>& tokens) const;
    // Same for the 6-topic scheme.
    std::vector<double> topic6_scores(const std::vector<std::string>& tokens) const;
    // 7-simplex over anger, joy, fear, disgust, surprise, sad, others.
    std::vector<double> emotion_scores(const std::vector<std::string>& tokens) const;
    // Aggressive, hateful, targeted scores, each in [0,1).
    std::vector<double> hate_scores(const std::vector<std::string>& tokens) const;

    double irony_score(const std::vector<std::string>& tokens) const;
    double offensive_score(const std::vector<std::string>& tokens) const;
    double masculinity_score(const std::vector<std::string>& tokens) const;
    double subjectivity_score(const std::vector<std::string>& tokens) const;
    double polarity_score(const std::vector<std::string>& tokens) const;

    // Word-level correctness: fraction of alphabetic tokens found in the
    // spelling dictionary. Post-level correctness: share of passed surface
    // checks (leading capital, terminal punctuation, balanced quotes and
    // parentheses, no doubled space). Both in [0,1].
    double grammar_word_score(const std::string& text) const;
    double grammar_post_score(const std::string& text) const;

    // Categorical emoji code: 0 none, otherwise 1 + index of the best
    // matching category (ties to the lowest index).
    double emoji_code(const std::vector<std::string>& tokens) const;

    // Valence-rule sentiment with negation flips and compound
    // normalization s / sqrt(s^2 + 15).
    SentimentScores sentiment(const std::vector<std::string>& tokens) const;

    const std::vector<std::string>& emoji_labels() const { return emoji_labels_; }

private:
    std::map<std::string, double> valence_;
    std::set<std::string> negations_;
    std::vector<std::set<std::string>> topic19_;
    std::vector<std::set<std::string>> topic6_;
    std::vector<std::set<std::string>> emotion6_;  // anger..sad; others is implicit
    std::vector<std::set<std::string>> hate3_;
    std::set<std::string> irony_;
    std::set<std::string> offensive_;
    std::set<std::string> masculine_;
    std::set<std::string> subjective_;
    std::vector<std::string> emoji_labels_;
    std::vector<std::set<std::string>> emoji_words_;
};

// Index of the largest value; ties resolve to the lowest index.
std::size_t argmax_lowest(const std::vector<double>& v);

}  // namespace repostlab::textfeat
