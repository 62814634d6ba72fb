#pragma once

#include <cstdint>
#include <string>

namespace repostlab::synthgen {

// Knobs for a synthetic social world.  The alpha weights make repost behavior
// depend on who the recipient is (graph position, past interaction, activity);
// the beta weights make it depend on what the post says (topic match, token
// valence).  base_rate is the logit of the spontaneous repost probability.
struct WorldConfig {
    std::size_t n_users = 2000;
    std::size_t n_hashtags = 6;
    std::size_t posts_per_hashtag = 100;
    std::size_t history_length = 30;
    std::size_t attachment = 4;
    std::size_t vocab_size = 40;
    bool ood_strict = true;
    double alpha_follow = 0.0;
    double alpha_interact = 0.0;
    double alpha_activity = 0.0;
    double beta_topic = 0.0;
    double beta_sentiment = 0.0;
    double base_rate = -4.0;
    double exposure_nonfollower = 0.01;
    std::uint64_t seed = 1;
};

// key = value lines, '#' starts a comment, unknown or repeated keys are
// errors.  Absent keys keep their defaults.
WorldConfig parse_world_config(const std::string& text);
WorldConfig load_world_config(const std::string& path);

// Every field, in a fixed order, parseable by parse_world_config.
std::string serialize_world_config(const WorldConfig& config);

// Throws std::invalid_argument describing the first violated constraint.
void validate_world_config(const WorldConfig& config);

}  // namespace repostlab::synthgen
