#include "repostlab/datasets/build.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "repostlab/util/hashing.hpp"
#include "repostlab/util/rng.hpp"

namespace repostlab::datasets {

using ordered_json = nlohmann::ordered_json;

const char* ratio_name(RatioTag tag) {
    switch (tag) {
        case RatioTag::one_one: return "1:1";
        case RatioTag::one_five: return "1:5";
        case RatioTag::one_ten: return "1:10";
        case RatioTag::general_one_five: return "general-1:5";
    }
    return "?";
}

RatioTag parse_ratio(const std::string& name) {
    if (name == "1:1") return RatioTag::one_one;
    if (name == "1:5") return RatioTag::one_five;
    if (name == "1:10") return RatioTag::one_ten;
    if (name == "general-1:5") return RatioTag::general_one_five;
    throw std::invalid_argument("unknown ratio tag: " + name);
}

std::size_t ratio_nearest(RatioTag tag) {
    switch (tag) {
        case RatioTag::one_one: return 1;
        case RatioTag::one_five: return 5;
        case RatioTag::one_ten: return 5;
        case RatioTag::general_one_five: return 0;
    }
    return 0;
}

std::size_t ratio_negatives(RatioTag tag) {
    switch (tag) {
        case RatioTag::one_one: return 1;
        case RatioTag::one_five: return 5;
        case RatioTag::one_ten: return 10;
        case RatioTag::general_one_five: return 5;
    }
    return 0;
}

namespace {

std::string smallest_tag(const core::RawPost& post) {
    std::string best;
    for (const auto& t : post.hashtags)
        if (best.empty() || t < best) best = t;
    return best;
}

std::string pair_key(const std::string& sender, const std::string& recipient) {
    return sender + '\x1f' + recipient;
}

// Posts the user has reposted/quoted/replied to, across main stream and
// history.
std::set<std::string> reposted_by(const core::Corpus& corpus, const std::string& user_id) {
    std::set<std::string> out;
    if (const core::UserRecord* u = corpus.find_user(user_id)) {
        for (const auto& p : u->history)
            if (p.has_parent) out.insert(p.parent_id);
    }
    auto it = corpus.posts_by_author.find(user_id);
    if (it != corpus.posts_by_author.end()) {
        for (const core::RawPost* p : it->second)
            if (p->has_parent) out.insert(p->parent_id);
    }
    return out;
}

std::vector<double> sanitized(std::vector<double> v) {
    for (double& x : v)
        if (!std::isfinite(x)) x = 0.0;
    return v;
}

double cosine_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na <= 0.0 || nb <= 0.0) return 1.0;
    return 1.0 - dot / (std::sqrt(na) * std::sqrt(nb));
}

core::Instance negative_instance(const core::RepostEvent& positive, const core::RawPost& post) {
    core::Instance inst;
    inst.post_id = post.post_id;
    inst.sender_id = post.author_id;
    inst.recipient_id = positive.recipient_id;
    inst.event_time = positive.repost_time;
    inst.hashtag = positive.hashtag;
    inst.label = 0;
    return inst;
}

}  // namespace

std::vector<core::RepostEvent> enumerate_positives(const core::Corpus& corpus,
                                                   PositiveStats* stats) {
    std::vector<core::RepostEvent> out;
    PositiveStats local;
    for (const auto& p : corpus.posts) {
        if (!p.has_parent || !core::is_repost_like(p.post_type)) continue;
        ++local.parented;
        const core::RawPost* parent = corpus.find_post(p.parent_id);
        if (!parent) {
            ++local.missing_parent;
            continue;
        }
        const std::int64_t latency = p.created_at - parent->created_at;
        if (latency <= 0 || latency > core::kRepostWindowSeconds) {
            ++local.outside_window;
            continue;
        }
        core::RepostEvent ev;
        ev.repost_id = p.post_id;
        ev.original_id = parent->post_id;
        ev.sender_id = parent->author_id;
        ev.recipient_id = p.author_id;
        ev.repost_time = p.created_at;
        ev.hashtag = smallest_tag(*parent);
        if (ev.hashtag.empty()) ev.hashtag = smallest_tag(p);
        out.push_back(std::move(ev));
    }
    if (stats) *stats = local;
    return out;
}

std::vector<const core::RawPost*> negative_pool(const core::RepostEvent& positive,
                                                const core::Corpus& corpus) {
    std::vector<const core::RawPost*> out;
    if (positive.hashtag.empty()) return out;
    const std::set<std::string> taken = reposted_by(corpus, positive.recipient_id);
    const std::int64_t lo = positive.repost_time - core::kRepostWindowSeconds;
    for (const auto& p : corpus.posts) {
        if (p.post_type != core::PostType::original) continue;
        if (p.post_id == positive.original_id) continue;
        if (p.created_at < lo || p.created_at > positive.repost_time) continue;
        if (std::find(p.hashtags.begin(), p.hashtags.end(), positive.hashtag) ==
            p.hashtags.end())
            continue;
        if (taken.count(p.post_id) > 0) continue;
        out.push_back(&p);
    }
    return out;
}

Selection select_negatives(const core::RepostEvent& positive,
                           const std::vector<const core::RawPost*>& pool, std::size_t n,
                           const SimilarityFn& features) {
    Selection sel;
    const std::vector<double> anchor =
        sanitized(features(positive.original_id, positive.sender_id));

    struct Ranked {
        double distance;
        const core::RawPost* post;
    };
    std::vector<Ranked> ranked;
    ranked.reserve(pool.size());
    for (const core::RawPost* p : pool) {
        const double d = cosine_distance(anchor, sanitized(features(p->post_id, p->author_id)));
        ranked.push_back({d, p});
    }
    std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        return a.post->post_id < b.post->post_id;
    });

    const std::size_t take = std::min(n, ranked.size());
    sel.deficit = n - take;
    sel.negatives.reserve(take);
    for (std::size_t i = 0; i < take; ++i)
        sel.negatives.push_back(negative_instance(positive, *ranked[i].post));
    return sel;
}

std::vector<core::Instance> general_negatives(const core::Corpus& corpus,
                                              std::size_t k_per_positive,
                                              std::uint64_t seed) {
    const std::vector<core::RepostEvent> positives = enumerate_positives(corpus);

    // The observed repost relation, over main and history posts.
    std::set<std::string> reposted_pairs;
    for (const auto& p : corpus.posts)
        if (p.has_parent) reposted_pairs.insert(p.parent_id + '\x1f' + p.author_id);
    for (const auto& u : corpus.users)
        for (const auto& p : u.history)
            if (p.has_parent) reposted_pairs.insert(p.parent_id + '\x1f' + p.author_id);

    // Latest observed activity per user; registration as fallback.
    std::map<std::string, std::int64_t> activity;
    for (const auto& u : corpus.users) {
        std::int64_t t = u.registered_at;
        for (const auto& p : u.history) t = std::max(t, p.created_at);
        activity[u.user_id] = t;
    }
    for (const auto& p : corpus.posts) {
        auto it = activity.find(p.author_id);
        if (it != activity.end()) it->second = std::max(it->second, p.created_at);
    }

    std::vector<const core::RawPost*> originals;
    for (const auto& p : corpus.posts)
        if (p.post_type == core::PostType::original) originals.push_back(&p);
    if (originals.empty() || corpus.users.empty())
        throw std::runtime_error("general negatives need original posts and users");

    const Rng base = make_seed_rng(seed);
    std::vector<core::Instance> out;
    out.reserve(positives.size() * k_per_positive);
    for (const auto& pos : positives) {
        Rng rng = base.derive(fnv1a64(pos.repost_id));
        std::set<std::string> drawn;
        std::size_t accepted = 0;
        const std::size_t budget = 10000 * k_per_positive;
        for (std::size_t attempt = 0; attempt < budget && accepted < k_per_positive;
             ++attempt) {
            const core::RawPost* post = originals[rng.index(originals.size())];
            const core::UserRecord& user = corpus.users[rng.index(corpus.users.size())];
            const std::int64_t t_u = activity.at(user.user_id);
            if (t_u <= post->created_at) continue;
            const std::string key = post->post_id + '\x1f' + user.user_id;
            if (reposted_pairs.count(key) > 0 || !drawn.insert(key).second) continue;
            core::Instance inst;
            inst.post_id = post->post_id;
            inst.sender_id = post->author_id;
            inst.recipient_id = user.user_id;
            inst.event_time = t_u;
            inst.hashtag = pos.hashtag;
            inst.label = 0;
            out.push_back(std::move(inst));
            ++accepted;
        }
        if (accepted < k_per_positive)
            throw std::runtime_error("general negative sampling exhausted for positive " +
                                     pos.repost_id);
    }
    return out;
}

std::vector<std::string> dataset_hashtags(const LabeledDataset& ds) {
    std::set<std::string> tags;
    for (const auto& inst : ds.instances) tags.insert(inst.hashtag);
    return {tags.begin(), tags.end()};
}

LabeledDataset build_dataset(const userfeat::FeatureContext& ctx, RatioTag tag,
                             std::uint64_t seed) {
    const core::Corpus& corpus = ctx.corpus();
    LabeledDataset ds;
    ds.ratio_tag = tag;
    ds.seed = seed;

    const std::vector<core::RepostEvent> positives =
        enumerate_positives(corpus, &ds.positive_stats);
    const std::size_t n_near = ratio_nearest(tag);
    const Rng base = make_seed_rng(seed);

    std::vector<core::Instance> general;
    if (tag == RatioTag::general_one_five)
        general = general_negatives(corpus, ratio_negatives(tag), seed);

    std::vector<const core::RawPost*> originals;
    if (tag == RatioTag::one_ten) {
        for (const auto& p : corpus.posts)
            if (p.post_type == core::PostType::original) originals.push_back(&p);
    }

    std::size_t positive_index = 0;
    for (const auto& pos : positives) {
        const std::size_t general_offset = positive_index * ratio_negatives(tag);
        ++positive_index;

        std::vector<core::Instance> negatives;
        if (tag == RatioTag::general_one_five) {
            negatives.assign(general.begin() + static_cast<std::ptrdiff_t>(general_offset),
                             general.begin() + static_cast<std::ptrdiff_t>(
                                                   general_offset + ratio_negatives(tag)));
        } else {
            const auto pool = negative_pool(pos, corpus);
            if (pool.size() < n_near) {
                ++ds.dropped_short_pool;
                continue;
            }
            Selection sel = select_negatives(
                pos, pool, n_near,
                [&ctx, &pos](const std::string& post_id, const std::string& sender_id) {
                    return ctx.similarity_vector(post_id, sender_id, pos.recipient_id);
                });
            negatives = std::move(sel.negatives);

            if (tag == RatioTag::one_ten) {
                std::set<std::string> exclude = reposted_by(corpus, pos.recipient_id);
                exclude.insert(pos.original_id);
                for (const auto& neg : negatives) exclude.insert(neg.post_id);
                std::vector<const core::RawPost*> space;
                space.reserve(originals.size());
                for (const core::RawPost* p : originals)
                    if (exclude.count(p->post_id) == 0) space.push_back(p);
                const std::size_t extra = ratio_negatives(tag) - n_near;
                if (space.size() < extra) {
                    ++ds.dropped_random_space;
                    continue;
                }
                Rng rng = base.derive(fnv1a64(pos.repost_id));
                for (std::size_t j = 0; j < extra; ++j) {
                    const std::size_t pick = j + rng.index(space.size() - j);
                    std::swap(space[j], space[pick]);
                    negatives.push_back(negative_instance(pos, *space[j]));
                }
            }
        }

        core::Instance pi;
        pi.post_id = pos.original_id;
        pi.sender_id = pos.sender_id;
        pi.recipient_id = pos.recipient_id;
        pi.event_time = pos.repost_time;
        pi.hashtag = pos.hashtag;
        pi.label = 1;
        ds.instances.push_back(std::move(pi));
        for (auto& neg : negatives) ds.instances.push_back(std::move(neg));
        ++ds.positives;
    }

    char buf[16];
    for (std::size_t i = 0; i < ds.instances.size(); ++i) {
        std::snprintf(buf, sizeof buf, "i%06zu", i);
        ds.instances[i].instance_id = buf;
    }
    return ds;
}

LeakageResult leakage_filter(const std::vector<core::Instance>& train,
                             const std::vector<core::Instance>& test) {
    std::set<std::string> pairs;
    for (const auto& t : test) pairs.insert(pair_key(t.sender_id, t.recipient_id));
    LeakageResult res;
    res.train.reserve(train.size());
    for (const auto& t : train) {
        if (pairs.count(pair_key(t.sender_id, t.recipient_id)) > 0)
            ++res.removed;
        else
            res.train.push_back(t);
    }
    return res;
}

void write_dataset(const LabeledDataset& ds, const std::string& path) {
    ordered_json j;
    j["ratio"] = ratio_name(ds.ratio_tag);
    j["seed"] = ds.seed;
    j["positives"] = ds.positives;
    j["stats"] = {{"parented", ds.positive_stats.parented},
                  {"missing_parent", ds.positive_stats.missing_parent},
                  {"outside_window", ds.positive_stats.outside_window},
                  {"dropped_short_pool", ds.dropped_short_pool},
                  {"dropped_random_space", ds.dropped_random_space}};
    ordered_json arr = ordered_json::array();
    for (const auto& inst : ds.instances) {
        ordered_json o;
        o["instance_id"] = inst.instance_id;
        o["post_id"] = inst.post_id;
        o["sender_id"] = inst.sender_id;
        o["recipient_id"] = inst.recipient_id;
        o["event_time"] = inst.event_time;
        o["hashtag"] = inst.hashtag;
        o["label"] = inst.label;
        arr.push_back(std::move(o));
    }
    j["instances"] = std::move(arr);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write dataset file: " + path);
    out << j.dump(2) << '\n';
}

LabeledDataset read_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read dataset file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error("invalid dataset file " + path + ": " + e.what());
    }
    LabeledDataset ds;
    ds.ratio_tag = parse_ratio(j.at("ratio").get<std::string>());
    ds.seed = j.at("seed").get<std::uint64_t>();
    ds.positives = j.at("positives").get<std::size_t>();
    if (j.contains("stats")) {
        const auto& s = j["stats"];
        ds.positive_stats.parented = s.value("parented", 0u);
        ds.positive_stats.missing_parent = s.value("missing_parent", 0u);
        ds.positive_stats.outside_window = s.value("outside_window", 0u);
        ds.dropped_short_pool = s.value("dropped_short_pool", 0u);
        ds.dropped_random_space = s.value("dropped_random_space", 0u);
    }
    for (const auto& o : j.at("instances")) {
        core::Instance inst;
        inst.instance_id = o.at("instance_id").get<std::string>();
        inst.post_id = o.at("post_id").get<std::string>();
        inst.sender_id = o.at("sender_id").get<std::string>();
        inst.recipient_id = o.at("recipient_id").get<std::string>();
        inst.event_time = o.at("event_time").get<std::int64_t>();
        inst.hashtag = o.at("hashtag").get<std::string>();
        inst.label = o.at("label").get<int>();
        ds.instances.push_back(std::move(inst));
    }
    return ds;
}

}  // namespace repostlab::datasets
