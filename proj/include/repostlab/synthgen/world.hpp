#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "repostlab/core/types.hpp"
#include "repostlab/synthgen/config.hpp"

namespace repostlab::synthgen {

struct World {
    WorldConfig config;
    std::vector<std::string> hashtags;
    std::vector<std::vector<std::string>> vocab;  // tokens per hashtag
    std::vector<core::UserRecord> users;
    std::vector<core::RawPost> posts;  // cascade sources first, then events
    std::vector<double> activity;      // latent per-user trait
    std::vector<std::size_t> interest; // primary hashtag per user
    std::size_t n_source_posts = 0;
};

// Users with latent traits, a preferential-attachment follow graph, per-user
// histories drawn from interest-weighted topic vocabularies, and the original
// posts that cascades will spread.  Fully determined by the config seed.
World generate_world(const WorldConfig& config);

// Walks every (source post, exposed user) pair; exposure covers all followers
// of the author plus a small sampled share of everyone else.  The repost
// probability is logistic in the configured alpha/beta terms.  Events are
// appended to world.posts and engagement metrics backfilled on the sources.
void generate_cascades(World& world);

// posts.jsonl and users.jsonl under dir (created if needed).
void write_world(const World& world, const std::string& dir);

}  // namespace repostlab::synthgen
