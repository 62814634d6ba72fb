#include "repostlab/synthgen/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "repostlab/core/types.hpp"

namespace repostlab::synthgen {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::size_t parse_count(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("world config: " + key + ": not a count: " + value);
    }
    if (pos != value.size()) {
        throw std::invalid_argument("world config: " + key + ": not a count: " + value);
    }
    return static_cast<std::size_t>(v);
}

double parse_real(const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("world config: " + key + ": not a number: " + value);
    }
    if (pos != value.size()) {
        throw std::invalid_argument("world config: " + key + ": not a number: " + value);
    }
    return v;
}

bool parse_flag(const std::string& key, const std::string& value) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw std::invalid_argument("world config: " + key + ": expected true or false, got " + value);
}

}  // namespace

WorldConfig parse_world_config(const std::string& text) {
    WorldConfig cfg;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("world config line " + std::to_string(lineno) +
                                        ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!seen.insert(key).second) {
            throw std::invalid_argument("world config: repeated key: " + key);
        }
        if (key == "n_users") cfg.n_users = parse_count(key, value);
        else if (key == "n_hashtags") cfg.n_hashtags = parse_count(key, value);
        else if (key == "posts_per_hashtag") cfg.posts_per_hashtag = parse_count(key, value);
        else if (key == "history_length") cfg.history_length = parse_count(key, value);
        else if (key == "attachment") cfg.attachment = parse_count(key, value);
        else if (key == "vocab_size") cfg.vocab_size = parse_count(key, value);
        else if (key == "ood_strict") cfg.ood_strict = parse_flag(key, value);
        else if (key == "alpha_follow") cfg.alpha_follow = parse_real(key, value);
        else if (key == "alpha_interact") cfg.alpha_interact = parse_real(key, value);
        else if (key == "alpha_activity") cfg.alpha_activity = parse_real(key, value);
        else if (key == "beta_topic") cfg.beta_topic = parse_real(key, value);
        else if (key == "beta_sentiment") cfg.beta_sentiment = parse_real(key, value);
        else if (key == "base_rate") cfg.base_rate = parse_real(key, value);
        else if (key == "exposure_nonfollower") cfg.exposure_nonfollower = parse_real(key, value);
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_count(key, value));
        else throw std::invalid_argument("world config: unknown key: " + key);
    }
    validate_world_config(cfg);
    return cfg;
}

WorldConfig load_world_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open world config: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_world_config(buf.str());
}

std::string serialize_world_config(const WorldConfig& cfg) {
    std::ostringstream out;
    out << "n_users = " << cfg.n_users << '\n'
        << "n_hashtags = " << cfg.n_hashtags << '\n'
        << "posts_per_hashtag = " << cfg.posts_per_hashtag << '\n'
        << "history_length = " << cfg.history_length << '\n'
        << "attachment = " << cfg.attachment << '\n'
        << "vocab_size = " << cfg.vocab_size << '\n'
        << "ood_strict = " << (cfg.ood_strict ? "true" : "false") << '\n';
    out.precision(17);
    out << "alpha_follow = " << cfg.alpha_follow << '\n'
        << "alpha_interact = " << cfg.alpha_interact << '\n'
        << "alpha_activity = " << cfg.alpha_activity << '\n'
        << "beta_topic = " << cfg.beta_topic << '\n'
        << "beta_sentiment = " << cfg.beta_sentiment << '\n'
        << "base_rate = " << cfg.base_rate << '\n'
        << "exposure_nonfollower = " << cfg.exposure_nonfollower << '\n'
        << "seed = " << cfg.seed << '\n';
    return out.str();
}

void validate_world_config(const WorldConfig& cfg) {
    if (cfg.n_users < 1) throw std::invalid_argument("world config: n_users must be at least 1");
    if (cfg.n_hashtags < 1) throw std::invalid_argument("world config: n_hashtags must be at least 1");
    if (cfg.posts_per_hashtag < 1) {
        throw std::invalid_argument("world config: posts_per_hashtag must be at least 1");
    }
    if (cfg.history_length > core::kMaxHistory) {
        throw std::invalid_argument("world config: history_length exceeds the per-user limit of " +
                                    std::to_string(core::kMaxHistory));
    }
    if (cfg.attachment < 1) throw std::invalid_argument("world config: attachment must be at least 1");
    if (cfg.vocab_size < 1) throw std::invalid_argument("world config: vocab_size must be at least 1");
    for (double w : {cfg.alpha_follow, cfg.alpha_interact, cfg.alpha_activity, cfg.beta_topic,
                     cfg.beta_sentiment, cfg.base_rate}) {
        if (!std::isfinite(w)) throw std::invalid_argument("world config: weights must be finite");
    }
    if (!(cfg.exposure_nonfollower >= 0.0 && cfg.exposure_nonfollower <= 1.0)) {
        throw std::invalid_argument("world config: exposure_nonfollower must be in [0, 1]");
    }
}

}  // namespace repostlab::synthgen
