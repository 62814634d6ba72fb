#include "repostlab/core/schema.hpp"

#include <map>
#include <stdexcept>

#include "repostlab/util/hashing.hpp"

namespace repostlab::core {

namespace {

std::vector<std::string> build_m_names() {
    std::vector<std::string> n;
    n.reserve(kSizeM);
    for (int i = 1; i <= 19; ++i) n.push_back("M_TopicM" + std::to_string(i));
    n.push_back("M_TopicMMain");
    n.push_back("M_TopicMNum");
    for (int i = 1; i <= 6; ++i) n.push_back("M_TopicG" + std::to_string(i));
    n.push_back("M_TopicGMain");
    n.push_back("M_TopicGNum");
    for (int i = 1; i <= 10; ++i) n.push_back("M_TopicLDA" + std::to_string(i));
    n.push_back("M_CharNum");
    n.push_back("M_WordNum");
    n.push_back("M_Grammar1");
    n.push_back("M_Grammar2");
    n.push_back("M_Polarity");
    n.push_back("M_Subjectivity");
    n.push_back("M_Irony");
    n.push_back("M_Offensive");
    n.push_back("M_Emoji");
    n.push_back("M_Masculinity");
    for (int i = 1; i <= 11; ++i) n.push_back("M_Readability" + std::to_string(i));
    for (int i = 1; i <= 4; ++i) n.push_back("M_Sentiment" + std::to_string(i));
    n.push_back("M_SentimentMain");
    for (int i = 1; i <= 7; ++i) n.push_back("M_Emotion" + std::to_string(i));
    n.push_back("M_EmotionMain");
    for (int i = 1; i <= 3; ++i) n.push_back("M_Hate" + std::to_string(i));
    n.push_back("M_HsNum");
    n.push_back("M_hashtag");
    return n;
}

// One 15-feature profile block; role is "R" or "S".
void append_up_block(std::vector<std::string>& n, const std::string& role) {
    const char* names[] = {
        "AccountAge",     "FollowerNum",    "FolloweeNum",  "TweetNum",
        "ListedNum",      "SpreadActivity", "FollowerNumDay", "FolloweeNumDay",
        "TweetNumDay",    "ListedNumDay",   "ProfileVerified", "ProfileUrl",
        "LeaderRank",     "Indegree",       "FollowS"};
    for (const char* f : names) n.push_back("U-P_" + role + "_" + f);
}

// One 11-feature activity/popularity block; role is "R" or "S".
void append_uha_block(std::vector<std::string>& n, const std::string& role) {
    const char* names[] = {
        "TweetNum",      "TweetPercent", "RetweetPercent", "QuotePercent",
        "ReplyPercent",  "InteractivePer", "AverageInterval",
        "RetweetedRate", "QuotedRate",   "RepliedRate",    "LikedRate"};
    for (const char* f : names) n.push_back("U-HA_" + role + "_" + f);
}

std::vector<std::string> build_up_names() {
    std::vector<std::string> n;
    n.reserve(kSizeUP);
    append_up_block(n, "R");
    append_up_block(n, "S");
    return n;
}

std::vector<std::string> build_uha_names() {
    std::vector<std::string> n;
    n.reserve(kSizeUHA);
    append_uha_block(n, "R");
    append_uha_block(n, "S");
    n.push_back("U-HA_RS_Mention");
    n.push_back("U-HA_RS_MentionPer");
    n.push_back("U-HA_SR_Mention");
    n.push_back("U-HA_SR_MentionPer");
    n.push_back("U-HA_RS_RepostLatency");
    for (int i = 1; i <= 10; ++i) n.push_back("U-HA_SR_TORS" + std::to_string(i));
    n.push_back("U-HA_SR_PathWidth");
    return n;
}

std::vector<std::string> build_uhm_names() {
    std::vector<std::string> n;
    n.reserve(kSizeUHM);
    const std::vector<std::string> m = build_m_names();
    for (const auto& f : m) n.push_back("U-HM_S_" + f.substr(2));
    for (const auto& f : m) n.push_back("U-HM_R_" + f.substr(2));
    n.push_back("U-HM_SR_TopicSim");
    return n;
}

std::vector<std::string> concat(const std::vector<const std::vector<std::string>*>& parts) {
    std::vector<std::string> out;
    for (const auto* p : parts) out.insert(out.end(), p->begin(), p->end());
    return out;
}

}  // namespace

std::string schema_name(SchemaId id) {
    switch (id) {
        case SchemaId::M: return "M";
        case SchemaId::UP: return "U-P";
        case SchemaId::UHA: return "U-HA";
        case SchemaId::UHM: return "U-HM";
        case SchemaId::U: return "U";
        case SchemaId::ALL: return "ALL";
    }
    throw std::logic_error("schema_name: bad id");
}

SchemaId parse_schema(const std::string& name) {
    static const std::map<std::string, SchemaId> table = {
        {"M", SchemaId::M},     {"U-P", SchemaId::UP}, {"U-HA", SchemaId::UHA},
        {"U-HM", SchemaId::UHM}, {"U", SchemaId::U},   {"ALL", SchemaId::ALL}};
    auto it = table.find(name);
    if (it == table.end()) throw std::runtime_error("unknown schema id: " + name);
    return it->second;
}

std::size_t schema_size(SchemaId id) {
    switch (id) {
        case SchemaId::M: return kSizeM;
        case SchemaId::UP: return kSizeUP;
        case SchemaId::UHA: return kSizeUHA;
        case SchemaId::UHM: return kSizeUHM;
        case SchemaId::U: return kSizeU;
        case SchemaId::ALL: return kSizeAll;
    }
    throw std::logic_error("schema_size: bad id");
}

const std::vector<std::string>& feature_dictionary(SchemaId id) {
    static const std::vector<std::string> m = build_m_names();
    static const std::vector<std::string> up = build_up_names();
    static const std::vector<std::string> uha = build_uha_names();
    static const std::vector<std::string> uhm = build_uhm_names();
    static const std::vector<std::string> u = concat({&up, &uha, &uhm});
    static const std::vector<std::string> all = concat({&m, &up, &uha, &uhm});
    switch (id) {
        case SchemaId::M: return m;
        case SchemaId::UP: return up;
        case SchemaId::UHA: return uha;
        case SchemaId::UHM: return uhm;
        case SchemaId::U: return u;
        case SchemaId::ALL: return all;
    }
    throw std::logic_error("feature_dictionary: bad id");
}

std::size_t schema_offset(SchemaId id) {
    switch (id) {
        case SchemaId::M: return 0;
        case SchemaId::UP: return kSizeM;
        case SchemaId::UHA: return kSizeM + kSizeUP;
        case SchemaId::UHM: return kSizeM + kSizeUP + kSizeUHA;
        case SchemaId::U: return kSizeM;
        case SchemaId::ALL: return 0;
    }
    throw std::logic_error("schema_offset: bad id");
}

std::uint64_t dictionary_hash(SchemaId id) {
    std::uint64_t h = kFnvOffset;
    for (const auto& name : feature_dictionary(id)) {
        h = fnv1a64(name, h);
        h = fnv1a64("\n", h);
    }
    return h;
}

const std::vector<std::string>& topic_scheme_19() {
    static const std::vector<std::string> v = {
        "arts&culture",        "business&entrepreneurs", "celebrity&pop_culture",
        "diaries&daily_life",  "family",                 "fashion&style",
        "film_tv&video",       "fitness&health",         "food&dining",
        "gaming",              "learning&educational",   "music",
        "news&social_concern", "other_hobbies",          "relationships",
        "science&technology",  "sports",                 "travel&adventure",
        "youth&student_life"};
    return v;
}

const std::vector<std::string>& topic_scheme_6() {
    static const std::vector<std::string> v = {
        "arts&culture", "business&entrepreneurs", "pop_culture",
        "daily_life",   "sports&gaming",          "science&technology"};
    return v;
}

const std::vector<std::string>& emotion_labels() {
    static const std::vector<std::string> v = {
        "anger", "joy", "fear", "disgust", "surprise", "sad", "others"};
    return v;
}

const std::vector<std::string>& sentiment_labels() {
    static const std::vector<std::string> v = {"negative", "neutral", "positive"};
    return v;
}

}  // namespace repostlab::core
