#include "repostlab/textfeat/scorers.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "repostlab/textfeat/lexicons.hpp"
#include "repostlab/textfeat/tokenize.hpp"
#include "repostlab/util/strings.hpp"

namespace repostlab::textfeat {

namespace {

// Saturating hit score: 0 hits -> 0, 1 -> 1/2, 2 -> 2/3, never reaches 1.
double saturate(std::size_t hits) {
    return static_cast<double>(hits) / (static_cast<double>(hits) + 1.0);
}

std::size_t count_hits(const std::vector<std::string>& tokens,
                       const std::set<std::string>& words) {
    std::size_t n = 0;
    for (const auto& t : tokens)
        if (words.count(t)) ++n;
    return n;
}

}  // namespace

std::size_t argmax_lowest(const std::vector<double>& v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[best]) best = i;
    return best;
}

ScorerRegistry ScorerRegistry::builtin() {
    ScorerRegistry r;
    r.valence_ = valence_lexicon();
    r.negations_ = negation_words();

    // Keyword seeds per topic of the 19-topic scheme, in scheme order.
    r.topic19_ = {
        /* arts&culture */ {"art", "museum", "culture", "gallery", "painting", "poetry", "theatre", "exhibition"},
        /* business&entrepreneurs */ {"business", "startup", "market", "economy", "entrepreneur", "invest", "profit", "company"},
        /* celebrity&pop_culture */ {"celebrity", "famous", "star", "gossip", "hollywood", "awards", "redcarpet", "idol"},
        /* diaries&daily_life */ {"today", "morning", "coffee", "weekend", "daily", "routine", "diary", "tonight"},
        /* family */ {"family", "mother", "father", "kids", "parents", "brother", "sister", "grandma"},
        /* fashion&style */ {"fashion", "style", "outfit", "dress", "wear", "designer", "trend", "clothes"},
        /* film_tv&video */ {"movie", "film", "series", "episode", "trailer", "cinema", "netflix", "video"},
        /* fitness&health */ {"health", "fitness", "workout", "gym", "doctor", "covid", "vaccine", "diet"},
        /* food&dining */ {"food", "recipe", "dinner", "restaurant", "lunch", "delicious", "cooking", "taste"},
        /* gaming */ {"game", "gaming", "player", "xbox", "playstation", "nintendo", "stream", "console"},
        /* learning&educational */ {"learn", "education", "school", "teacher", "course", "study", "lesson", "knowledge"},
        /* music */ {"music", "song", "album", "concert", "band", "singer", "playlist", "tour"},
        /* news&social_concern */ {"news", "government", "election", "protest", "policy", "climate", "rights", "crisis"},
        /* other_hobbies */ {"hobby", "craft", "garden", "collect", "knitting", "puzzle", "diy", "lego"},
        /* relationships */ {"relationship", "boyfriend", "girlfriend", "date", "marriage", "breakup", "crush", "wedding"},
        /* science&technology */ {"science", "technology", "research", "space", "software", "data", "robot", "physics"},
        /* sports */ {"sports", "football", "match", "team", "league", "goal", "player", "tournament"},
        /* travel&adventure */ {"travel", "trip", "flight", "hotel", "beach", "adventure", "vacation", "explore"},
        /* youth&student_life */ {"student", "university", "campus", "exam", "semester", "college", "homework", "graduation"}};

    // The 6-topic scheme groups the 19 into coarser classes.
    r.topic6_ = {
        /* arts&culture */ r.topic19_[0],
        /* business&entrepreneurs */ r.topic19_[1],
        /* pop_culture */ {"celebrity", "famous", "star", "movie", "film", "music", "song", "series", "awards"},
        /* daily_life */ {"today", "morning", "coffee", "weekend", "family", "food", "dinner", "routine"},
        /* sports&gaming */ {"sports", "football", "match", "team", "game", "gaming", "player", "league"},
        /* science&technology */ r.topic19_[15]};

    r.emotion6_ = {
        /* anger */ {"angry", "furious", "rage", "outraged", "annoyed", "mad", "hate"},
        /* joy */ {"happy", "joy", "delighted", "glad", "wonderful", "laugh", "smile", "celebrate"},
        /* fear */ {"afraid", "scared", "fear", "terrified", "panic", "worry", "anxious"},
        /* disgust */ {"disgusting", "gross", "nasty", "revolting", "sickening", "vile"},
        /* surprise */ {"surprised", "shocked", "unexpected", "sudden", "unbelievable", "wow"},
        /* sad */ {"sad", "crying", "tears", "grief", "heartbroken", "miserable", "lonely"}};

    r.hate3_ = {
        /* aggressive */ {"destroy", "smash", "attack", "fight", "crush", "punch"},
        /* hateful */ {"hate", "despise", "loathe", "disgusting", "scum", "trash"},
        /* targeted */ {"you", "loser", "idiot", "clown", "him", "her", "they"}};

    r.irony_ = {"sure", "obviously", "totally", "whatever", "yeah", "riiight", "classic", "shocker"};
    r.offensive_ = {"idiot", "stupid", "moron", "shut", "dumb", "loser", "pathetic", "trash"};
    r.masculine_ = {"bro", "man", "dude", "beast", "grind", "alpha", "boss", "lads"};
    r.subjective_ = {"i", "think", "feel", "believe", "opinion", "seems", "maybe",
                     "probably", "love", "hate", "best", "worst", "should", "my"};

    r.emoji_labels_ = {"joy", "heart", "fire", "sad", "anger", "surprise", "clap", "think"};
    r.emoji_words_ = {
        /* joy */ {"laugh", "funny", "happy", "lol", "haha"},
        /* heart */ {"love", "adore", "sweet", "beautiful", "lovely"},
        /* fire */ {"fire", "lit", "amazing", "awesome", "hot"},
        /* sad */ {"sad", "crying", "tears", "miss", "lonely"},
        /* anger */ {"angry", "furious", "outraged", "mad", "rage"},
        /* surprise */ {"wow", "shocked", "unbelievable", "surprised", "omg"},
        /* clap */ {"congrats", "congratulations", "proud", "bravo", "welldone"},
        /* think */ {"hmm", "wonder", "curious", "thinking", "why"}};
    return r;
}

void ScorerRegistry::load_valence_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open lexicon file " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected term<TAB>value");
        const std::string term = to_lower(trim(line.substr(0, tab)));
        valence_[term] = std::stod(line.substr(tab + 1));
    }
}

std::vector<double> ScorerRegistry::topic19_scores(
    const std::vector<std::string>& tokens) const {
    std::vector<double> out(topic19_.size());
    for (std::size_t k = 0; k < topic19_.size(); ++k)
        out[k] = saturate(count_hits(tokens, topic19_[k]));
    return out;
}

std::vector<double> ScorerRegistry::topic6_scores(
    const std::vector<std::string>& tokens) const {
    std::vector<double> out(topic6_.size());
    for (std::size_t k = 0; k < topic6_.size(); ++k)
        out[k] = saturate(count_hits(tokens, topic6_[k]));
    return out;
}

std::vector<double> ScorerRegistry::emotion_scores(
    const std::vector<std::string>& tokens) const {
    std::vector<double> weights(7, 0.0);
    for (std::size_t k = 0; k < emotion6_.size(); ++k)
        weights[k] = static_cast<double>(count_hits(tokens, emotion6_[k]));
    weights[6] = 1.0;  // "others" base mass keeps the simplex well defined
    double total = 0.0;
    for (double w : weights) total += w;
    for (double& w : weights) w /= total;
    return weights;
}

std::vector<double> ScorerRegistry::hate_scores(
    const std::vector<std::string>& tokens) const {
    std::vector<double> out(3);
    for (std::size_t k = 0; k < 3; ++k)
        out[k] = saturate(count_hits(tokens, hate3_[k]));
    return out;
}

double ScorerRegistry::irony_score(const std::vector<std::string>& tokens) const {
    return saturate(count_hits(tokens, irony_));
}

double ScorerRegistry::offensive_score(const std::vector<std::string>& tokens) const {
    return saturate(count_hits(tokens, offensive_));
}

double ScorerRegistry::masculinity_score(const std::vector<std::string>& tokens) const {
    return saturate(count_hits(tokens, masculine_));
}

double ScorerRegistry::subjectivity_score(const std::vector<std::string>& tokens) const {
    if (tokens.empty()) return 0.0;
    return static_cast<double>(count_hits(tokens, subjective_)) /
           static_cast<double>(tokens.size());
}

double ScorerRegistry::polarity_score(const std::vector<std::string>& tokens) const {
    double sum = 0.0;
    std::size_t hits = 0;
    for (const auto& t : tokens) {
        auto it = valence_.find(t);
        if (it != valence_.end()) {
            sum += it->second;
            ++hits;
        }
    }
    if (hits == 0) return 0.0;
    return std::clamp(sum / static_cast<double>(hits) / 4.0, -1.0, 1.0);
}

double ScorerRegistry::grammar_word_score(const std::string& text) const {
    const auto tokens = word_tokens(text);
    std::size_t alpha = 0, known = 0;
    const auto& dict = spelling_words();
    for (const auto& t : tokens) {
        if (alpha_core(t) != t) continue;  // skip tokens with digits
        ++alpha;
        if (dict.count(t)) ++known;
    }
    if (alpha == 0) return 1.0;
    return static_cast<double>(known) / static_cast<double>(alpha);
}

double ScorerRegistry::grammar_post_score(const std::string& text) const {
    const std::string t = trim(text);
    if (t.empty()) return 0.0;
    int passed = 0;
    if (std::isupper(static_cast<unsigned char>(t.front()))) ++passed;
    const char last = t.back();
    if (last == '.' || last == '!' || last == '?') ++passed;
    long quotes = std::count(t.begin(), t.end(), '"');
    long open = std::count(t.begin(), t.end(), '(');
    long close = std::count(t.begin(), t.end(), ')');
    if (quotes % 2 == 0 && open == close) ++passed;
    if (t.find("  ") == std::string::npos) ++passed;
    return passed / 4.0;
}

double ScorerRegistry::emoji_code(const std::vector<std::string>& tokens) const {
    std::vector<double> hits(emoji_words_.size());
    for (std::size_t k = 0; k < emoji_words_.size(); ++k)
        hits[k] = static_cast<double>(count_hits(tokens, emoji_words_[k]));
    const std::size_t best = argmax_lowest(hits);
    if (hits[best] == 0.0) return 0.0;
    return static_cast<double>(best + 1);
}

SentimentScores ScorerRegistry::sentiment(const std::vector<std::string>& tokens) const {
    double total_valence = 0.0;
    double pos_sum = 0.0, neg_sum = 0.0;
    std::size_t neu_count = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        auto it = valence_.find(tokens[i]);
        if (it == valence_.end()) {
            if (!negations_.count(tokens[i])) ++neu_count;
            continue;
        }
        double v = it->second;
        for (std::size_t back = 1; back <= 3 && back <= i; ++back) {
            if (negations_.count(tokens[i - back])) {
                v *= -0.74;
                break;
            }
        }
        total_valence += v;
        if (v > 0)
            pos_sum += v + 1.0;
        else if (v < 0)
            neg_sum += std::fabs(v) + 1.0;
        else
            ++neu_count;
    }
    SentimentScores s;
    const double denom = pos_sum + neg_sum + static_cast<double>(neu_count);
    if (denom > 0.0) {
        s.pos = pos_sum / denom;
        s.neg = neg_sum / denom;
        s.neu = static_cast<double>(neu_count) / denom;
    } else {
        s.pos = 0.0;
        s.neg = 0.0;
        s.neu = 1.0;
    }
    s.compound = total_valence / std::sqrt(total_valence * total_valence + 15.0);
    if (s.compound >= 0.05)
        s.main_label = 2;
    else if (s.compound <= -0.05)
        s.main_label = 0;
    else
        s.main_label = 1;
    return s;
}

}  // namespace repostlab::textfeat
