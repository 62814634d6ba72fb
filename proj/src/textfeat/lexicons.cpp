#include "repostlab/textfeat/lexicons.hpp"

namespace repostlab::textfeat {

const std::set<std::string>& dale_chall_words() {
    static const std::set<std::string> words = {
        "a",      "about",  "after",  "again",  "all",    "also",   "always",
        "am",     "an",     "and",    "animal", "any",    "are",    "around",
        "as",     "ask",    "at",     "away",   "baby",   "back",   "bad",
        "ball",   "be",     "because", "bed",   "been",   "before", "begin",
        "best",   "better", "big",    "bird",   "black",  "blue",   "boat",
        "book",   "both",   "box",    "boy",    "bring",  "brother", "brown",
        "but",    "buy",    "by",     "call",   "came",   "can",    "car",
        "carry",  "cat",    "change", "child",  "city",   "clean",  "close",
        "cold",   "come",   "could",  "country", "cut",   "dark",   "day",
        "did",    "do",     "does",   "dog",    "done",   "door",   "down",
        "draw",   "dream",  "drink",  "each",   "eat",    "eight",  "end",
        "even",   "ever",   "every",  "eye",    "face",   "fall",   "family",
        "far",    "fast",   "father", "feel",   "feet",   "few",    "find",
        "fire",   "first",  "fish",   "five",   "fly",    "food",   "for",
        "found",  "four",   "friend", "from",   "full",   "fun",    "funny",
        "game",   "gave",   "get",    "girl",   "give",   "go",     "goes",
        "going",  "gone",   "good",   "got",    "great",  "green",  "grow",
        "had",    "hand",   "happy",  "hard",   "has",    "have",   "he",
        "head",   "hear",   "heard",  "help",   "her",    "here",   "high",
        "him",    "his",    "hold",   "home",   "hot",    "house",  "how",
        "hurt",   "i",      "if",     "in",     "into",   "is",     "it",
        "its",    "jump",   "just",   "keep",   "kind",   "knew",   "know",
        "land",   "large",  "last",   "late",   "laugh",  "learn",  "leave",
        "left",   "let",    "light",  "like",   "line",   "little", "live",
        "long",   "look",   "love",   "made",   "make",   "man",    "many",
        "may",    "me",     "mean",   "men",    "might",  "money",  "more",
        "morning", "most",  "mother", "move",   "much",   "must",   "my",
        "name",   "near",   "never",  "new",    "next",   "nice",   "night",
        "nine",   "no",     "not",    "now",    "of",     "off",    "old",
        "on",     "once",   "one",    "only",   "open",   "or",     "other",
        "our",    "out",    "over",   "own",    "part",   "people", "pick",
        "place",  "play",   "put",    "rain",   "ran",    "read",   "red",
        "ride",   "right",  "road",   "room",   "round",  "run",    "sad",
        "said",   "same",   "sat",    "saw",    "say",    "school", "sea",
        "see",    "seen",   "seven",  "she",    "short",  "show",   "sing",
        "sit",    "six",    "sleep",  "small",  "so",     "some",   "soon",
        "start",  "stay",   "still",  "stop",   "story",  "sun",    "take",
        "talk",   "tell",   "ten",    "than",   "that",   "the",    "their",
        "them",   "then",   "there",  "these",  "they",   "thing",  "think",
        "this",   "those",  "three",  "time",   "to",     "today",  "together",
        "told",   "too",    "took",   "tree",   "try",    "turn",   "two",
        "under",  "up",     "upon",   "us",     "use",    "very",   "walk",
        "want",   "warm",   "was",    "watch",  "water",  "way",    "we",
        "well",   "went",   "were",   "what",   "when",   "where",  "which",
        "while",  "white",  "who",    "why",    "will",   "wind",   "wish",
        "with",   "word",   "work",   "world",  "would",  "write",  "year",
        "yes",    "you",    "young",  "your"};
    return words;
}

const std::set<std::string>& stop_words() {
    static const std::set<std::string> words = {
        "a",       "about",  "above",  "after",  "again",  "against", "all",
        "am",      "an",     "and",    "any",    "are",    "as",      "at",
        "be",      "because", "been",  "before", "being",  "below",   "between",
        "both",    "but",    "by",     "can",    "could",  "did",     "do",
        "does",    "doing",  "down",   "during", "each",   "few",     "for",
        "from",    "further", "had",   "has",    "have",   "having",  "he",
        "her",     "here",   "hers",   "him",    "his",    "how",     "i",
        "if",      "in",     "into",   "is",     "it",     "its",     "itself",
        "just",    "me",     "more",   "most",   "my",     "myself",  "no",
        "nor",     "not",    "now",    "of",     "off",    "on",      "once",
        "only",    "or",     "other",  "our",    "ours",   "out",     "over",
        "own",     "same",   "she",    "should", "so",     "some",    "such",
        "than",    "that",   "the",    "their",  "theirs", "them",    "then",
        "there",   "these",  "they",   "this",   "those",  "through", "to",
        "too",     "under",  "until",  "up",     "very",   "was",     "we",
        "were",    "what",   "when",   "where",  "which",  "while",   "who",
        "whom",    "why",    "will",   "with",   "would",  "you",     "your",
        "yours",   "yourself"};
    return words;
}

const std::map<std::string, double>& valence_lexicon() {
    static const std::map<std::string, double> lex = {
        {"abandoned", -1.4}, {"admire", 1.6},    {"adore", 2.4},
        {"afraid", -1.9},    {"amazing", 2.8},   {"angry", -2.3},
        {"awesome", 3.1},    {"awful", -2.0},    {"bad", -1.9},
        {"beautiful", 2.1},  {"best", 3.2},      {"better", 1.9},
        {"bless", 1.8},      {"bored", -1.1},    {"brilliant", 2.8},
        {"broken", -1.6},    {"calm", 1.3},      {"celebrate", 2.2},
        {"crisis", -1.8},    {"cruel", -2.4},    {"cry", -1.7},
        {"danger", -1.9},    {"dead", -2.9},     {"delight", 2.3},
        {"disaster", -2.5},  {"enjoy", 1.9},     {"evil", -2.9},
        {"excellent", 2.7},  {"excited", 2.0},   {"fail", -2.0},
        {"fantastic", 2.6},  {"fear", -1.8},     {"fight", -1.4},
        {"fine", 0.8},       {"fraud", -2.5},    {"free", 1.4},
        {"fun", 2.3},        {"glad", 1.7},      {"good", 1.9},
        {"great", 3.1},      {"happy", 2.7},     {"hate", -2.7},
        {"hell", -2.5},      {"hope", 1.9},      {"horrible", -2.5},
        {"hurt", -1.8},      {"ill", -1.6},      {"joy", 2.8},
        {"kill", -3.0},      {"kind", 1.9},      {"laugh", 2.2},
        {"lie", -1.8},       {"lonely", -1.6},   {"lose", -1.6},
        {"lost", -1.3},      {"love", 3.2},      {"lovely", 2.8},
        {"lucky", 1.8},      {"mad", -2.2},      {"miss", -0.8},
        {"nice", 1.8},       {"pain", -2.1},     {"peace", 2.5},
        {"perfect", 2.7},    {"pleasure", 2.5},  {"poor", -1.5},
        {"pretty", 1.6},     {"proud", 2.1},     {"rude", -2.0},
        {"sad", -2.1},       {"safe", 1.8},      {"scared", -1.9},
        {"sick", -1.7},      {"smile", 2.0},     {"sorry", -0.3},
        {"strong", 1.5},     {"stupid", -2.4},   {"success", 2.7},
        {"sweet", 2.0},      {"terrible", -2.4}, {"thank", 1.7},
        {"thanks", 1.9},     {"threat", -1.9},   {"tired", -1.2},
        {"tragedy", -2.6},   {"trust", 2.0},     {"ugly", -2.2},
        {"war", -2.9},       {"weak", -1.4},     {"welcome", 2.0},
        {"win", 2.8},        {"wonderful", 2.7}, {"worry", -1.6},
        {"worse", -2.1},     {"worst", -3.1},    {"wow", 2.8},
        {"wrong", -1.7}};
    return lex;
}

const std::set<std::string>& negation_words() {
    static const std::set<std::string> words = {
        "not",    "no",      "never", "none",   "nobody", "nothing", "neither",
        "nor",    "cannot",  "cant",  "can't",  "dont",   "don't",   "doesnt",
        "doesn't", "didnt",  "didn't", "isnt",  "isn't",  "wasnt",   "wasn't",
        "arent",  "aren't",  "wont",  "won't",  "without", "hardly", "barely"};
    return words;
}

const std::set<std::string>& spelling_words() {
    static std::set<std::string> words = [] {
        std::set<std::string> w = dale_chall_words();
        w.insert(stop_words().begin(), stop_words().end());
        for (const auto& kv : valence_lexicon()) w.insert(kv.first);
        for (const auto& n : negation_words()) w.insert(n);
        return w;
    }();
    return words;
}

}  // namespace repostlab::textfeat
