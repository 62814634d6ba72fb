#include "repostlab/userfeat/features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "repostlab/core/schema.hpp"
#include "repostlab/util/hashing.hpp"
#include "repostlab/util/threads.hpp"

namespace repostlab::userfeat {
namespace {

constexpr int kTopicCount = 10;
constexpr std::uint32_t kMaxCacheString = 1u << 20;

void put_u32(std::ofstream& os, std::uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_u64(std::ofstream& os, std::uint64_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_f64(std::ofstream& os, double v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_str(std::ofstream& os, const std::string& s) {
    put_u32(os, static_cast<std::uint32_t>(s.size()));
    os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

bool get_u32(std::ifstream& is, std::uint32_t& v) {
    return static_cast<bool>(is.read(reinterpret_cast<char*>(&v), sizeof v));
}

bool get_u64(std::ifstream& is, std::uint64_t& v) {
    return static_cast<bool>(is.read(reinterpret_cast<char*>(&v), sizeof v));
}

bool get_f64(std::ifstream& is, double& v) {
    return static_cast<bool>(is.read(reinterpret_cast<char*>(&v), sizeof v));
}

bool get_str(std::ifstream& is, std::string& s) {
    std::uint32_t n = 0;
    if (!get_u32(is, n) || n > kMaxCacheString) return false;
    s.resize(n);
    return n == 0 || static_cast<bool>(is.read(s.data(), n));
}

// Content signature covering everything the cached per-post features and the
// topic model can depend on: post texts, hashtags, and the extraction seed.
std::uint64_t corpus_signature(const core::Corpus& corpus, const ContextOptions& opts) {
    std::uint64_t h = kFnvOffset;
    for (const auto& [id, post] : corpus.all_posts) {
        h = fnv1a64(id, h);
        h = fnv1a64("\x1f", h);
        h = fnv1a64(post->text, h);
        for (const auto& tag : post->hashtags) {
            h = fnv1a64("\x1e", h);
            h = fnv1a64(tag, h);
        }
        h = fnv1a64("\n", h);
    }
    const std::uint64_t salt[2] = {opts.seed, core::dictionary_hash(core::SchemaId::ALL)};
    return fnv1a64(salt, sizeof salt, h);
}

textfeat::TopicModel degenerate_model(std::uint64_t seed) {
    textfeat::TopicModel m;
    m.K = kTopicCount;
    m.alpha = 50.0 / m.K;
    m.beta = 0.01;
    m.seed = seed;
    m.topic_word.assign(m.K, {});
    m.word_topic_count.assign(m.K, {});
    m.topic_count.assign(m.K, 0);
    return m;
}

bool load_model_cache(const std::string& path, std::uint64_t sig, textfeat::TopicModel& m) {
    std::ifstream is(path, std::ios::binary);
    if (!is) return false;
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, "RLDA", 4) != 0) return false;
    std::uint64_t file_sig = 0;
    if (!get_u64(is, file_sig) || file_sig != sig) return false;
    std::uint32_t k = 0;
    std::uint64_t seed = 0, vsize = 0;
    double alpha = 0.0, beta = 0.0;
    if (!get_u32(is, k) || k == 0 || k > 4096) return false;
    if (!get_f64(is, alpha) || !get_f64(is, beta) || !get_u64(is, seed)) return false;
    if (!get_u64(is, vsize) || vsize > 50'000'000) return false;

    textfeat::TopicModel out;
    out.K = static_cast<int>(k);
    out.alpha = alpha;
    out.beta = beta;
    out.seed = seed;
    out.vocab_words.resize(vsize);
    for (std::uint64_t w = 0; w < vsize; ++w) {
        if (!get_str(is, out.vocab_words[w])) return false;
        out.vocab[out.vocab_words[w]] = static_cast<int>(w);
    }
    out.word_topic_count.assign(out.K, std::vector<std::int32_t>(vsize, 0));
    for (int t = 0; t < out.K; ++t) {
        for (std::uint64_t w = 0; w < vsize; ++w) {
            std::uint32_t c = 0;
            if (!get_u32(is, c)) return false;
            out.word_topic_count[t][w] = static_cast<std::int32_t>(c);
        }
    }
    out.topic_count.assign(out.K, 0);
    for (int t = 0; t < out.K; ++t) {
        std::uint64_t c = 0;
        if (!get_u64(is, c)) return false;
        out.topic_count[t] = static_cast<std::int64_t>(c);
    }
    out.topic_word.assign(out.K, std::vector<double>(vsize, 0.0));
    const double vb = static_cast<double>(vsize) * out.beta;
    for (int t = 0; t < out.K; ++t) {
        const double denom = static_cast<double>(out.topic_count[t]) + vb;
        for (std::uint64_t w = 0; w < vsize; ++w)
            out.topic_word[t][w] =
                denom > 0.0 ? (out.word_topic_count[t][w] + out.beta) / denom : 0.0;
    }
    m = std::move(out);
    return true;
}

void save_model_cache(const std::string& path, std::uint64_t sig,
                      const textfeat::TopicModel& m) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) return;
        os.write("RLDA", 4);
        put_u64(os, sig);
        put_u32(os, static_cast<std::uint32_t>(m.K));
        put_f64(os, m.alpha);
        put_f64(os, m.beta);
        put_u64(os, m.seed);
        put_u64(os, m.vocab_words.size());
        for (const auto& w : m.vocab_words) put_str(os, w);
        for (int t = 0; t < m.K; ++t)
            for (std::size_t w = 0; w < m.vocab_words.size(); ++w)
                put_u32(os, static_cast<std::uint32_t>(m.word_topic_count[t][w]));
        for (int t = 0; t < m.K; ++t)
            put_u64(os, static_cast<std::uint64_t>(m.topic_count[t]));
        if (!os) return;
    }
    std::rename(tmp.c_str(), path.c_str());
}

bool load_post_cache(const std::string& path, std::uint64_t sig, const core::Corpus& corpus,
                     int topics, std::map<std::string, std::vector<double>>& post_m,
                     std::map<std::string, std::vector<double>>& post_topics) {
    std::ifstream is(path, std::ios::binary);
    if (!is) return false;
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, "RLPF", 4) != 0) return false;
    std::uint64_t file_sig = 0, count = 0;
    if (!get_u64(is, file_sig) || file_sig != sig) return false;
    if (!get_u64(is, count) || count != corpus.all_posts.size()) return false;

    std::map<std::string, std::vector<double>> ms, ts;
    for (std::uint64_t i = 0; i < count; ++i) {
        std::string id;
        std::uint32_t nm = 0, nt = 0;
        if (!get_str(is, id) || corpus.all_posts.find(id) == corpus.all_posts.end())
            return false;
        if (!get_u32(is, nm) || nm != core::kSizeM) return false;
        std::vector<double> m(nm);
        for (auto& v : m)
            if (!get_f64(is, v)) return false;
        if (!get_u32(is, nt) || nt != static_cast<std::uint32_t>(topics)) return false;
        std::vector<double> t(nt);
        for (auto& v : t)
            if (!get_f64(is, v)) return false;
        ms[id] = std::move(m);
        ts[id] = std::move(t);
    }
    if (ms.size() != corpus.all_posts.size()) return false;
    post_m = std::move(ms);
    post_topics = std::move(ts);
    return true;
}

void save_post_cache(const std::string& path, std::uint64_t sig,
                     const std::map<std::string, std::vector<double>>& post_m,
                     const std::map<std::string, std::vector<double>>& post_topics) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) return;
        os.write("RLPF", 4);
        put_u64(os, sig);
        put_u64(os, post_m.size());
        for (const auto& [id, m] : post_m) {
            put_str(os, id);
            put_u32(os, static_cast<std::uint32_t>(m.size()));
            for (double v : m) put_f64(os, v);
            const auto& t = post_topics.at(id);
            put_u32(os, static_cast<std::uint32_t>(t.size()));
            for (double v : t) put_f64(os, v);
        }
        if (!os) return;
    }
    std::rename(tmp.c_str(), path.c_str());
}

// Adds the topic mixtures of `from`'s history posts that interact with the
// other user: mentioning them, or reposting something in their history.
void add_interaction_topics(const HistorySummary& from, const std::string& other_id,
                            const HistorySummary& other, std::vector<double>& acc) {
    for (std::size_t i = 0; i < from.posts.size(); ++i) {
        const core::RawPost* p = from.posts[i];
        bool hit =
            std::find(p->mentions.begin(), p->mentions.end(), other_id) != p->mentions.end();
        if (!hit && core::is_repost_like(p->post_type) && p->has_parent &&
            other.post_ids.count(p->parent_id) > 0)
            hit = true;
        if (!hit) continue;
        const auto& t = from.post_topics[i];
        for (std::size_t k = 0; k < acc.size() && k < t.size(); ++k) acc[k] += t[k];
    }
}

}  // namespace

FeatureContext::FeatureContext(const core::Corpus& corpus, const ContextOptions& opts)
    : corpus_(&corpus),
      opts_(opts),
      graph_(corpus),
      registry_(textfeat::ScorerRegistry::builtin()) {
    reference_date_ = opts.reference_date > 0 ? opts.reference_date : corpus.max_timestamp();
    hashtag_codes_ = textfeat::build_hashtag_codes(corpus);

    const std::uint64_t sig = corpus_signature(corpus, opts);
    const std::string model_path =
        opts.cache_dir.empty() ? "" : opts.cache_dir + "/lda_" + hash_hex(sig) + ".bin";
    const std::string posts_path =
        opts.cache_dir.empty() ? ""
                               : opts.cache_dir + "/postfeat_" + hash_hex(sig) + ".bin";

    if (model_path.empty() || !load_model_cache(model_path, sig, lda_)) {
        std::vector<std::string> texts;
        texts.reserve(corpus.all_posts.size());
        for (const auto& p : corpus.posts) texts.push_back(p.text);
        for (const auto& u : corpus.users)
            for (const auto& p : u.history) texts.push_back(p.text);
        try {
            lda_ = textfeat::lda_train(texts, kTopicCount, opts.seed);
        } catch (const std::exception&) {
            // Nothing survives stop-word filtering; topic mixtures stay uniform.
            lda_ = degenerate_model(opts.seed);
        }
        if (!model_path.empty()) save_model_cache(model_path, sig, lda_);
    }

    extractor_ =
        std::make_unique<textfeat::PostFeatureExtractor>(&lda_, &registry_, &hashtag_codes_);

    if (posts_path.empty() ||
        !load_post_cache(posts_path, sig, corpus, lda_.K, post_m_, post_topics_)) {
        std::vector<const core::RawPost*> plist;
        plist.reserve(corpus.all_posts.size());
        for (const auto& [id, p] : corpus.all_posts) plist.push_back(p);
        std::vector<std::vector<double>> ms(plist.size()), ts(plist.size());
        parallel_for(plist.size(), opts.jobs, [&](std::size_t i) {
            ms[i] = extractor_->extract(*plist[i]);
            ts[i] = extractor_->topic_mixture(plist[i]->text);
        });
        for (std::size_t i = 0; i < plist.size(); ++i) {
            post_m_[plist[i]->post_id] = std::move(ms[i]);
            post_topics_[plist[i]->post_id] = std::move(ts[i]);
        }
        if (!posts_path.empty()) save_post_cache(posts_path, sig, post_m_, post_topics_);
    }

    {
        std::vector<HistorySummary> slots(corpus.users.size());
        parallel_for(corpus.users.size(), opts.jobs, [&](std::size_t i) {
            slots[i] = build_summary(corpus.users[i], *extractor_, -1, &post_m_, &post_topics_);
        });
        for (std::size_t i = 0; i < corpus.users.size(); ++i)
            summaries_[corpus.users[i].user_id] = std::move(slots[i]);
    }

    if (graph_.n_nodes() > 0) leaderrank_ = leaderrank_by_id(graph_);

    max_post_count_ = 1.0;
    for (const auto& u : corpus.users)
        max_post_count_ = std::max(max_post_count_, static_cast<double>(u.total_post_count));

    // Indegree: followers the user has mentioned, or whose histories repost
    // something out of the user's history.
    for (const auto& u : corpus.users) {
        const HistorySummary& own = summaries_.at(u.user_id);
        const int node = graph_.index_of(u.user_id);
        int count = 0;
        for (int f : graph_.followers(node)) {
            const std::string& fid = graph_.ids()[f];
            bool related = own.mention_counts.count(fid) > 0;
            if (!related) {
                const HistorySummary& fs = summaries_.at(fid);
                for (const auto& pid : fs.reposted_parent_ids) {
                    if (own.post_ids.count(pid) > 0) {
                        related = true;
                        break;
                    }
                }
            }
            if (related) ++count;
        }
        indegree_[u.user_id] = count;
    }
}

const HistorySummary& FeatureContext::summary_of(const std::string& user_id) const {
    auto it = summaries_.find(user_id);
    if (it == summaries_.end()) throw std::runtime_error("no summary for user: " + user_id);
    return it->second;
}

const std::vector<double>& FeatureContext::post_m(const std::string& post_id) const {
    auto it = post_m_.find(post_id);
    if (it == post_m_.end()) throw std::runtime_error("no features for post: " + post_id);
    return it->second;
}

const std::vector<double>& FeatureContext::post_topics(const std::string& post_id) const {
    auto it = post_topics_.find(post_id);
    if (it == post_topics_.end())
        throw std::runtime_error("no topic mixture for post: " + post_id);
    return it->second;
}

int FeatureContext::indegree_of(const std::string& user_id) const {
    auto it = indegree_.find(user_id);
    return it == indegree_.end() ? 0 : it->second;
}

std::vector<double> FeatureContext::profile_features(const core::UserRecord& user,
                                                     const std::string& counterpart_id) const {
    std::vector<double> out;
    out.reserve(15);
    double age_days = static_cast<double>(reference_date_ - user.registered_at) / 86400.0;
    if (age_days < 0.0) {
        age_clamps_.fetch_add(1, std::memory_order_relaxed);
        age_days = 0.0;
    }
    const double denom = std::max(age_days, 1.0);
    out.push_back(age_days);
    out.push_back(static_cast<double>(user.follower_count));
    out.push_back(static_cast<double>(user.followee_count));
    out.push_back(static_cast<double>(user.total_post_count));
    out.push_back(static_cast<double>(user.listed_count));
    out.push_back(static_cast<double>(user.total_post_count) / max_post_count_);
    out.push_back(static_cast<double>(user.follower_count) / denom);
    out.push_back(static_cast<double>(user.followee_count) / denom);
    out.push_back(static_cast<double>(user.total_post_count) / denom);
    out.push_back(static_cast<double>(user.listed_count) / denom);
    out.push_back(user.verified ? 1.0 : 0.0);
    out.push_back(user.profile_url_present ? 1.0 : 0.0);
    auto lr = leaderrank_.find(user.user_id);
    out.push_back(lr == leaderrank_.end() ? std::nan("") : lr->second);
    out.push_back(static_cast<double>(indegree_of(user.user_id)));
    out.push_back(graph_.follows(user.user_id, counterpart_id) ? 1.0 : 0.0);
    return out;
}

std::vector<double> FeatureContext::activity_features(const HistorySummary& s) const {
    return {static_cast<double>(s.n_posts),
            s.pct_original,
            s.pct_repost,
            s.pct_quote,
            s.pct_reply,
            s.pct_interactive,
            s.avg_interval_days};
}

std::vector<double> FeatureContext::popularity_features(const HistorySummary& s) const {
    return {s.avg_reposts, s.avg_quotes, s.avg_replies, s.avg_likes};
}

std::vector<double> FeatureContext::interaction_features(const HistorySummary& sender,
                                                         const HistorySummary& recipient,
                                                         const std::string& sender_id,
                                                         const std::string& recipient_id,
                                                         const core::Instance& instance) const {
    const double nan = std::nan("");
    std::vector<double> out;
    out.reserve(16);

    if (recipient.n_posts == 0) {
        out.push_back(nan);
        out.push_back(nan);
    } else {
        auto c = recipient.mention_counts.find(sender_id);
        auto p = recipient.mention_posts.find(sender_id);
        out.push_back(c == recipient.mention_counts.end()
                          ? 0.0
                          : static_cast<double>(c->second));
        out.push_back(p == recipient.mention_posts.end()
                          ? 0.0
                          : 100.0 * static_cast<double>(p->second) /
                                static_cast<double>(recipient.n_posts));
    }
    if (sender.n_posts == 0) {
        out.push_back(nan);
        out.push_back(nan);
    } else {
        auto c = sender.mention_counts.find(recipient_id);
        auto p = sender.mention_posts.find(recipient_id);
        out.push_back(c == sender.mention_counts.end() ? 0.0
                                                       : static_cast<double>(c->second));
        out.push_back(p == sender.mention_posts.end()
                          ? 0.0
                          : 100.0 * static_cast<double>(p->second) /
                                static_cast<double>(sender.n_posts));
    }

    const core::RawPost* post = corpus_->find_post(instance.post_id);
    if (!post) throw std::runtime_error("unknown post in instance: " + instance.post_id);
    out.push_back(static_cast<double>(instance.event_time - post->created_at) / 86400.0);

    std::vector<double> tors(static_cast<std::size_t>(lda_.K), 0.0);
    add_interaction_topics(sender, recipient_id, recipient, tors);
    add_interaction_topics(recipient, sender_id, sender, tors);
    double total = 0.0;
    for (double v : tors) total += v;
    if (total > 0.0)
        for (double& v : tors) v /= total;
    out.insert(out.end(), tors.begin(), tors.end());

    const double cs = cosine_similarity(post_topics(instance.post_id), tors);
    out.push_back(std::isnan(cs) ? 1.0 : 1.0 - cs);
    return out;
}

std::vector<double> FeatureContext::historical_post_features(
    const HistorySummary& sender, const HistorySummary& recipient) const {
    std::vector<double> out;
    out.reserve(2 * core::kSizeM + 1);
    out.insert(out.end(), sender.mean_m.begin(), sender.mean_m.end());
    out.insert(out.end(), recipient.mean_m.begin(), recipient.mean_m.end());
    out.push_back(cosine_similarity(sender.mean_topics, recipient.mean_topics));
    return out;
}

std::vector<double> FeatureContext::instance_features(const core::Instance& instance) const {
    const core::UserRecord* s_user = corpus_->find_user(instance.sender_id);
    const core::UserRecord* r_user = corpus_->find_user(instance.recipient_id);
    if (!s_user) throw std::runtime_error("unknown sender in instance: " + instance.sender_id);
    if (!r_user)
        throw std::runtime_error("unknown recipient in instance: " + instance.recipient_id);

    HistorySummary s_trunc, r_trunc;
    const HistorySummary* ss;
    const HistorySummary* rs;
    if (opts_.strict_causality) {
        s_trunc = build_summary(*s_user, *extractor_, instance.event_time, &post_m_,
                                &post_topics_);
        r_trunc = build_summary(*r_user, *extractor_, instance.event_time, &post_m_,
                                &post_topics_);
        ss = &s_trunc;
        rs = &r_trunc;
    } else {
        ss = &summary_of(instance.sender_id);
        rs = &summary_of(instance.recipient_id);
    }

    std::vector<double> row;
    row.reserve(core::kSizeAll);
    const auto& m = post_m(instance.post_id);
    row.insert(row.end(), m.begin(), m.end());

    auto append = [&row](std::vector<double>&& block) {
        row.insert(row.end(), block.begin(), block.end());
    };
    append(profile_features(*r_user, instance.sender_id));
    append(profile_features(*s_user, instance.recipient_id));
    append(activity_features(*rs));
    append(popularity_features(*rs));
    append(activity_features(*ss));
    append(popularity_features(*ss));
    append(interaction_features(*ss, *rs, instance.sender_id, instance.recipient_id,
                                instance));
    append(historical_post_features(*ss, *rs));

    if (row.size() != core::kSizeAll)
        throw std::logic_error("instance row has wrong width");
    return row;
}

std::vector<double> FeatureContext::similarity_vector(const std::string& post_id,
                                                      const std::string& sender_id,
                                                      const std::string& recipient_id) const {
    const core::UserRecord* su = corpus_->find_user(sender_id);
    if (!su) throw std::runtime_error("unknown sender: " + sender_id);
    const HistorySummary& s = summary_of(sender_id);

    std::vector<double> v;
    v.reserve(core::kSizeM + 15 + 11 + core::kSizeM);
    const auto& m = post_m(post_id);
    v.insert(v.end(), m.begin(), m.end());
    auto prof = profile_features(*su, recipient_id);
    v.insert(v.end(), prof.begin(), prof.end());
    auto act = activity_features(s);
    v.insert(v.end(), act.begin(), act.end());
    auto pop = popularity_features(s);
    v.insert(v.end(), pop.begin(), pop.end());
    v.insert(v.end(), s.mean_m.begin(), s.mean_m.end());
    return v;
}

}  // namespace repostlab::userfeat
