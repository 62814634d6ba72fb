#include "repostlab/userfeat/summary.hpp"

#include <algorithm>
#include <cmath>

#include "repostlab/core/schema.hpp"

namespace repostlab::userfeat {

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na <= 0.0 || nb <= 0.0) return std::nan("");
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

HistorySummary build_summary(const core::UserRecord& user,
                             const textfeat::PostFeatureExtractor& extractor,
                             std::int64_t cutoff,
                             const std::map<std::string, std::vector<double>>* m_cache,
                             const std::map<std::string, std::vector<double>>* topic_cache) {
    HistorySummary s;
    std::vector<const core::RawPost*> posts;
    posts.reserve(user.history.size());
    for (const auto& p : user.history)
        if (cutoff < 0 || p.created_at <= cutoff) posts.push_back(&p);
    s.n_posts = posts.size();
    s.posts = posts;

    const double nan = std::nan("");
    if (posts.empty()) {
        s.pct_original = s.pct_repost = s.pct_quote = s.pct_reply = nan;
        s.pct_interactive = nan;
        s.avg_interval_days = nan;
        s.avg_reposts = s.avg_quotes = s.avg_replies = s.avg_likes = nan;
        s.mean_m.assign(core::kSizeM, nan);
        return s;
    }

    std::size_t counts[4] = {0, 0, 0, 0};
    double recv[4] = {0, 0, 0, 0};
    std::vector<std::int64_t> times;
    times.reserve(posts.size());
    for (const auto* p : posts) {
        ++counts[static_cast<int>(p->post_type)];
        recv[0] += static_cast<double>(p->metrics.reposts);
        recv[1] += static_cast<double>(p->metrics.quotes);
        recv[2] += static_cast<double>(p->metrics.replies);
        recv[3] += static_cast<double>(p->metrics.likes);
        times.push_back(p->created_at);
        s.post_ids.insert(p->post_id);
        if (core::is_repost_like(p->post_type) && p->has_parent)
            s.reposted_parent_ids.insert(p->parent_id);
        std::set<std::string> seen;
        for (const auto& m : p->mentions) {
            ++s.mention_counts[m];
            if (seen.insert(m).second) ++s.mention_posts[m];
        }
    }

    const double n = static_cast<double>(posts.size());
    s.pct_original = 100.0 * counts[0] / n;
    s.pct_repost = 100.0 * counts[1] / n;
    s.pct_quote = 100.0 * counts[2] / n;
    s.pct_reply = 100.0 * counts[3] / n;
    s.pct_interactive = 100.0 * (counts[1] + counts[2] + counts[3]) / n;
    s.avg_reposts = recv[0] / n;
    s.avg_quotes = recv[1] / n;
    s.avg_replies = recv[2] / n;
    s.avg_likes = recv[3] / n;

    if (times.size() >= 2) {
        std::sort(times.begin(), times.end());
        double total = static_cast<double>(times.back() - times.front());
        s.avg_interval_days = total / 86400.0 / static_cast<double>(times.size() - 1);
    } else {
        s.avg_interval_days = nan;
    }

    s.post_m.reserve(posts.size());
    s.post_topics.reserve(posts.size());
    for (const auto* p : posts) {
        const std::vector<double>* m = nullptr;
        const std::vector<double>* t = nullptr;
        if (m_cache) {
            auto it = m_cache->find(p->post_id);
            if (it != m_cache->end()) m = &it->second;
        }
        if (topic_cache) {
            auto it = topic_cache->find(p->post_id);
            if (it != topic_cache->end()) t = &it->second;
        }
        s.post_m.push_back(m ? *m : extractor.extract(*p));
        s.post_topics.push_back(t ? *t : extractor.topic_mixture(p->text));
    }

    s.mean_m.assign(core::kSizeM, 0.0);
    for (std::size_t c = 0; c < core::kSizeM; ++c) {
        double sum = 0.0;
        std::size_t k = 0;
        for (const auto& v : s.post_m) {
            if (!std::isnan(v[c])) {
                sum += v[c];
                ++k;
            }
        }
        s.mean_m[c] = k > 0 ? sum / static_cast<double>(k) : nan;
    }
    const int K = static_cast<int>(s.post_topics.front().size());
    s.mean_topics.assign(K, 0.0);
    for (const auto& t : s.post_topics)
        for (int k = 0; k < K; ++k) s.mean_topics[k] += t[k];
    for (int k = 0; k < K; ++k) s.mean_topics[k] /= n;
    return s;
}

}  // namespace repostlab::userfeat
