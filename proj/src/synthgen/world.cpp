#include "repostlab/synthgen/world.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <set>
#include <stdexcept>

#include "repostlab/core/corpus.hpp"
#include "repostlab/textfeat/tokenize.hpp"
#include "repostlab/util/rng.hpp"

namespace repostlab::synthgen {

namespace {

constexpr std::int64_t kEpoch = 1700000000;
constexpr std::int64_t kDay = 86400;
constexpr std::int64_t kHistoryDays = 120;
constexpr std::int64_t kStreamDays = 4;

const std::vector<std::string>& positive_words() {
    static const std::vector<std::string> words{"good", "great", "happy", "love", "nice"};
    return words;
}

const std::vector<std::string>& negative_words() {
    static const std::vector<std::string> words{"bad", "sad", "hate", "awful", "terrible"};
    return words;
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

std::string user_name(std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "u%05zu", i);
    return buf;
}

// A few topic tokens, optionally seasoned with one sentiment word, closed
// with a period so the text forms one sentence.
std::string compose_text(Rng& rng, const std::vector<std::string>& vocab, std::size_t lo,
                         std::size_t hi) {
    const std::size_t n = lo + rng.index(hi - lo + 1);
    std::string text;
    for (std::size_t k = 0; k < n; ++k) {
        if (!text.empty()) text += ' ';
        text += vocab[rng.index(vocab.size())];
    }
    if (rng.bernoulli(0.5)) {
        const auto& pool = rng.bernoulli(0.5) ? positive_words() : negative_words();
        if (!text.empty()) text += ' ';
        text += pool[rng.index(pool.size())];
    }
    text += '.';
    return text;
}

int text_valence(const std::string& text) {
    static const std::set<std::string> pos(positive_words().begin(), positive_words().end());
    static const std::set<std::string> neg(negative_words().begin(), negative_words().end());
    int v = 0;
    for (const auto& tok : textfeat::word_tokens(text)) {
        if (pos.count(tok)) ++v;
        if (neg.count(tok)) --v;
    }
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

}  // namespace

World generate_world(const WorldConfig& config) {
    validate_world_config(config);
    World world;
    world.config = config;
    const std::size_t n = config.n_users;
    const std::size_t nh = config.n_hashtags;

    for (std::size_t h = 0; h < nh; ++h) world.hashtags.push_back("tag" + std::to_string(h));
    world.vocab.assign(nh, {});
    for (std::size_t h = 0; h < nh; ++h) {
        for (std::size_t j = 0; j < config.vocab_size; ++j) {
            if (!config.ood_strict && j < config.vocab_size / 2) {
                world.vocab[h].push_back("sharedw" + std::to_string(j));
            } else {
                world.vocab[h].push_back("t" + std::to_string(h) + "w" + std::to_string(j));
            }
        }
    }

    Rng base = make_seed_rng(config.seed);

    Rng trait_rng = base.derive(1);
    world.users.resize(n);
    world.activity.resize(n);
    world.interest.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& u = world.users[i];
        u.user_id = user_name(i);
        world.activity[i] = std::exp(trait_rng.normal(-0.5, 0.7));
        world.interest[i] = trait_rng.index(nh);
        u.verified = trait_rng.bernoulli(0.1);
        u.profile_url_present = trait_rng.bernoulli(0.4);
        u.registered_at = kEpoch - trait_rng.uniform_int(200, 2000) * kDay;
    }

    // Preferential attachment: each new user follows up to `attachment`
    // earlier users, drawn from a bag where a user appears once per follower
    // plus once for smoothing, so popular accounts keep attracting followers.
    Rng graph_rng = base.derive(2);
    std::vector<std::size_t> bag;
    std::vector<std::int64_t> followers(n, 0);
    if (n > 0) bag.push_back(0);
    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t m = std::min(config.attachment, i);
        std::set<std::size_t> chosen;
        std::size_t attempts = 0;
        while (chosen.size() < m) {
            if (attempts++ > 50 * m) {
                // Dense corner: walk forward from a random start instead.
                std::size_t at = graph_rng.index(i);
                while (chosen.count(at)) at = (at + 1) % i;
                chosen.insert(at);
                continue;
            }
            chosen.insert(bag[graph_rng.index(bag.size())]);
        }
        for (std::size_t t : chosen) {
            world.users[i].following.push_back(user_name(t));
            ++followers[t];
            bag.push_back(t);
        }
        bag.push_back(i);
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::sort(world.users[i].following.begin(), world.users[i].following.end());
        world.users[i].follower_count = followers[i];
        world.users[i].followee_count = static_cast<std::int64_t>(world.users[i].following.size());
        world.users[i].listed_count = followers[i] / 25;
    }

    Rng hist_rng = base.derive(3);
    const std::int64_t hist_lo = kEpoch - kHistoryDays * kDay;
    const std::int64_t hist_hi = kEpoch - kDay;
    std::map<std::string, std::size_t> tag_index;
    for (std::size_t h = 0; h < nh; ++h) tag_index[world.hashtags[h]] = h;
    for (std::size_t i = 0; i < n; ++i) {
        auto& u = world.users[i];
        if (config.history_length == 0) continue;
        auto want = static_cast<std::size_t>(
            std::llround(world.activity[i] * static_cast<double>(config.history_length) * 0.5));
        const std::size_t n_hist = std::clamp<std::size_t>(want + 1, 1, config.history_length);
        std::vector<std::int64_t> times(n_hist);
        for (auto& t : times) t = hist_rng.uniform_int(hist_lo, hist_hi);
        std::sort(times.begin(), times.end());
        for (std::size_t k = 1; k < n_hist; ++k) {
            if (times[k] <= times[k - 1]) times[k] = times[k - 1] + 1;
        }
        for (std::size_t k = 0; k < n_hist; ++k) {
            core::RawPost p;
            p.post_id = "h" + std::to_string(i) + "p" + std::to_string(k);
            p.author_id = u.user_id;
            p.created_at = times[k];
            const double roll = hist_rng.uniform();
            core::PostType want_type = core::PostType::original;
            if (roll >= 0.60 && roll < 0.75) want_type = core::PostType::repost;
            else if (roll >= 0.75 && roll < 0.85) want_type = core::PostType::quote;
            else if (roll >= 0.85) want_type = core::PostType::reply;

            const core::RawPost* parent = nullptr;
            if (want_type != core::PostType::original) {
                std::vector<const core::RawPost*> candidates;
                for (const auto& fid : u.following) {
                    const std::size_t fi = static_cast<std::size_t>(std::stoul(fid.substr(1)));
                    for (const auto& fp : world.users[fi].history) {
                        if (fp.created_at < times[k]) candidates.push_back(&fp);
                    }
                }
                if (candidates.empty()) {
                    want_type = core::PostType::original;
                } else {
                    parent = candidates[hist_rng.index(candidates.size())];
                }
            }
            p.post_type = want_type;
            if (parent != nullptr) {
                p.has_parent = true;
                p.parent_id = parent->post_id;
                p.hashtags = parent->hashtags;
                const std::size_t ph =
                    parent->hashtags.empty() ? 0 : tag_index[parent->hashtags[0]];
                switch (want_type) {
                    case core::PostType::repost:
                        p.text = "RT " + parent->text;
                        break;
                    case core::PostType::quote:
                        p.text = compose_text(hist_rng, world.vocab[ph], 3, 6) + " RT " +
                                 parent->text;
                        p.mentions.push_back(parent->author_id);
                        break;
                    default:
                        p.text = compose_text(hist_rng, world.vocab[ph], 3, 6);
                        p.mentions.push_back(parent->author_id);
                        break;
                }
            } else {
                const std::size_t h =
                    hist_rng.bernoulli(0.7) ? world.interest[i] : hist_rng.index(nh);
                p.hashtags.push_back(world.hashtags[h]);
                p.text = compose_text(hist_rng, world.vocab[h], 6, 12);
            }
            p.metrics.likes = static_cast<std::int64_t>(hist_rng.index(8));
            p.metrics.reposts = static_cast<std::int64_t>(hist_rng.index(3));
            p.metrics.quotes = static_cast<std::int64_t>(hist_rng.index(2));
            p.metrics.replies = static_cast<std::int64_t>(hist_rng.index(2));
            u.history.push_back(std::move(p));
        }
    }

    Rng post_rng = base.derive(4);
    std::vector<std::vector<std::size_t>> members(nh);
    for (std::size_t i = 0; i < n; ++i) members[world.interest[i]].push_back(i);
    struct Draft {
        core::RawPost post;
        std::size_t order;
    };
    std::vector<Draft> drafts;
    std::size_t order = 0;
    for (std::size_t h = 0; h < nh; ++h) {
        for (std::size_t k = 0; k < config.posts_per_hashtag; ++k) {
            std::size_t author;
            if (!members[h].empty() && post_rng.bernoulli(0.7)) {
                author = members[h][post_rng.index(members[h].size())];
            } else {
                author = post_rng.index(n);
            }
            core::RawPost p;
            p.author_id = user_name(author);
            p.created_at = kEpoch + post_rng.uniform_int(0, kStreamDays * kDay);
            p.hashtags.push_back(world.hashtags[h]);
            p.text = compose_text(post_rng, world.vocab[h], 8, 14);
            drafts.push_back({std::move(p), order++});
        }
    }
    std::sort(drafts.begin(), drafts.end(), [](const Draft& a, const Draft& b) {
        if (a.post.created_at != b.post.created_at) return a.post.created_at < b.post.created_at;
        return a.order < b.order;
    });
    std::map<std::string, std::int64_t> authored;
    for (std::size_t k = 0; k < drafts.size(); ++k) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "p%06zu", k);
        drafts[k].post.post_id = buf;
        ++authored[drafts[k].post.author_id];
        world.posts.push_back(std::move(drafts[k].post));
    }
    world.n_source_posts = world.posts.size();

    for (std::size_t i = 0; i < n; ++i) {
        auto& u = world.users[i];
        u.total_post_count = static_cast<std::int64_t>(u.history.size()) + authored[u.user_id] +
                             static_cast<std::int64_t>(world.activity[i] * 30.0);
    }
    return world;
}

void generate_cascades(World& world) {
    const WorldConfig& cfg = world.config;
    const std::size_t n = world.users.size();
    Rng rng = make_seed_rng(cfg.seed).derive(5);

    std::map<std::string, std::size_t> user_slot;
    for (std::size_t i = 0; i < n; ++i) user_slot[world.users[i].user_id] = i;
    std::map<std::string, std::size_t> tag_index;
    for (std::size_t h = 0; h < world.hashtags.size(); ++h) tag_index[world.hashtags[h]] = h;

    std::map<std::string, std::string> author_of;
    for (const auto& p : world.posts) author_of[p.post_id] = p.author_id;
    for (const auto& u : world.users) {
        for (const auto& p : u.history) author_of[p.post_id] = p.author_id;
    }

    // How often each user's history engaged each other user.
    std::vector<std::map<std::string, int>> interacted(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& p : world.users[i].history) {
            for (const auto& m : p.mentions) ++interacted[i][m];
            if (p.has_parent) {
                auto it = author_of.find(p.parent_id);
                if (it != author_of.end()) ++interacted[i][it->second];
            }
        }
    }

    std::vector<std::set<std::size_t>> follows(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& fid : world.users[i].following) follows[i].insert(user_slot[fid]);
    }

    std::vector<core::RawPost> events;
    std::size_t event_no = 0;
    for (std::size_t pi = 0; pi < world.n_source_posts; ++pi) {
        auto& post = world.posts[pi];
        const std::size_t author = user_slot[post.author_id];
        const std::size_t h = post.hashtags.empty() ? 0 : tag_index[post.hashtags[0]];
        const int valence = text_valence(post.text);
        for (std::size_t u = 0; u < n; ++u) {
            if (u == author) continue;
            const bool is_follower = follows[u].count(author) > 0;
            if (!is_follower && !rng.bernoulli(cfg.exposure_nonfollower)) continue;

            double z = cfg.base_rate;
            if (is_follower) z += cfg.alpha_follow;
            auto it = interacted[u].find(post.author_id);
            if (it != interacted[u].end()) {
                z += cfg.alpha_interact * std::min(it->second, 3) / 3.0;
            }
            z += cfg.alpha_activity * (world.activity[u] / (1.0 + world.activity[u]));
            if (world.interest[u] == h) z += cfg.beta_topic;
            z += cfg.beta_sentiment * valence;
            const double p = sigmoid(z);
            if (rng.bernoulli(p)) {
                core::RawPost ev;
                char buf[32];
                std::snprintf(buf, sizeof(buf), "r%06zu", event_no++);
                ev.post_id = buf;
                ev.author_id = world.users[u].user_id;
                ev.created_at = post.created_at + rng.uniform_int(1, core::kRepostWindowSeconds);
                ev.hashtags = post.hashtags;
                ev.has_parent = true;
                ev.parent_id = post.post_id;
                const double roll = rng.uniform();
                if (roll < 0.70) {
                    ev.post_type = core::PostType::repost;
                    ev.text = "RT " + post.text;
                } else if (roll < 0.85) {
                    ev.post_type = core::PostType::quote;
                    ev.text = compose_text(rng, world.vocab[h], 3, 6) + " RT " + post.text;
                    ev.mentions.push_back(post.author_id);
                } else {
                    ev.post_type = core::PostType::reply;
                    ev.text = compose_text(rng, world.vocab[h], 3, 6);
                    ev.mentions.push_back(post.author_id);
                }
                switch (ev.post_type) {
                    case core::PostType::repost: ++post.metrics.reposts; break;
                    case core::PostType::quote: ++post.metrics.quotes; break;
                    default: ++post.metrics.replies; break;
                }
                events.push_back(std::move(ev));
            } else if (rng.bernoulli(std::min(1.0, 2.0 * p))) {
                ++post.metrics.likes;
            }
        }
    }
    for (auto& ev : events) world.posts.push_back(std::move(ev));
    std::stable_sort(world.posts.begin(), world.posts.end(),
                     [](const core::RawPost& a, const core::RawPost& b) {
                         if (a.created_at != b.created_at) return a.created_at < b.created_at;
                         return a.post_id < b.post_id;
                     });
}

void write_world(const World& world, const std::string& dir) {
    std::filesystem::create_directories(dir);
    core::write_posts_jsonl(dir + "/posts.jsonl", world.posts);
    core::write_users_jsonl(dir + "/users.jsonl", world.users);
}

}  // namespace repostlab::synthgen
