#include "repostlab/textfeat/lda.hpp"

#include <stdexcept>

#include "repostlab/textfeat/lexicons.hpp"
#include "repostlab/textfeat/tokenize.hpp"
#include "repostlab/util/rng.hpp"

namespace repostlab::textfeat {

namespace {

std::vector<std::string> content_tokens(const std::string& text) {
    std::vector<std::string> out;
    const auto& stops = stop_words();
    for (auto& t : word_tokens(text))
        if (!stops.count(t)) out.push_back(std::move(t));
    return out;
}

int sample_discrete(const std::vector<double>& weights, double total, Rng& rng) {
    double r = rng.uniform() * total;
    for (std::size_t k = 0; k + 1 < weights.size(); ++k) {
        r -= weights[k];
        if (r < 0.0) return static_cast<int>(k);
    }
    return static_cast<int>(weights.size()) - 1;
}

}  // namespace

TopicModel lda_train(const std::vector<std::string>& texts, int K,
                     double alpha, double beta, int iters, std::uint64_t seed) {
    if (K < 1) throw std::runtime_error("lda_train: K must be at least 1");
    if (texts.empty()) throw std::runtime_error("lda_train: empty corpus");

    TopicModel m;
    m.K = K;
    m.alpha = alpha;
    m.beta = beta;
    m.seed = seed;

    std::vector<std::vector<int>> docs;
    docs.reserve(texts.size());
    for (const auto& text : texts) {
        std::vector<int> doc;
        for (const auto& tok : content_tokens(text)) {
            auto it = m.vocab.find(tok);
            int w;
            if (it == m.vocab.end()) {
                w = static_cast<int>(m.vocab_words.size());
                m.vocab.emplace(tok, w);
                m.vocab_words.push_back(tok);
            } else {
                w = it->second;
            }
            doc.push_back(w);
        }
        docs.push_back(std::move(doc));
    }
    const int V = static_cast<int>(m.vocab_words.size());
    if (V == 0) throw std::runtime_error("lda_train: no tokens left after stop-word filtering");

    m.word_topic_count.assign(K, std::vector<std::int32_t>(V, 0));
    m.topic_count.assign(K, 0);
    std::vector<std::vector<int>> doc_topic(docs.size(), std::vector<int>(K, 0));
    std::vector<std::vector<int>> z(docs.size());

    Rng rng = make_seed_rng(seed);
    for (std::size_t d = 0; d < docs.size(); ++d) {
        z[d].resize(docs[d].size());
        for (std::size_t i = 0; i < docs[d].size(); ++i) {
            const int k = static_cast<int>(rng.index(static_cast<std::size_t>(K)));
            z[d][i] = k;
            ++m.word_topic_count[k][docs[d][i]];
            ++m.topic_count[k];
            ++doc_topic[d][k];
        }
    }

    const double vbeta = V * beta;
    std::vector<double> weights(K);
    for (int sweep = 0; sweep < iters; ++sweep) {
        for (std::size_t d = 0; d < docs.size(); ++d) {
            const auto& doc = docs[d];
            auto& dt = doc_topic[d];
            for (std::size_t i = 0; i < doc.size(); ++i) {
                const int w = doc[i];
                const int old = z[d][i];
                --m.word_topic_count[old][w];
                --m.topic_count[old];
                --dt[old];
                double total = 0.0;
                for (int k = 0; k < K; ++k) {
                    const double p = (m.word_topic_count[k][w] + beta) /
                                     (m.topic_count[k] + vbeta) * (dt[k] + alpha);
                    weights[k] = p;
                    total += p;
                }
                const int nk = sample_discrete(weights, total, rng);
                z[d][i] = nk;
                ++m.word_topic_count[nk][w];
                ++m.topic_count[nk];
                ++dt[nk];
            }
        }
    }

    m.topic_word.assign(K, std::vector<double>(V, 0.0));
    for (int k = 0; k < K; ++k)
        for (int w = 0; w < V; ++w)
            m.topic_word[k][w] =
                (m.word_topic_count[k][w] + beta) / (m.topic_count[k] + vbeta);
    return m;
}

std::vector<double> lda_infer(const TopicModel& model, const std::string& text,
                              int iters, std::uint64_t seed) {
    const int K = model.K;
    std::vector<int> doc;
    for (const auto& tok : content_tokens(text)) {
        auto it = model.vocab.find(tok);
        if (it != model.vocab.end()) doc.push_back(it->second);
    }
    if (doc.empty() || K == 1)
        return std::vector<double>(K, 1.0 / K);

    const double vbeta = model.vocab_size() * model.beta;
    Rng rng = make_seed_rng(seed);
    std::vector<int> z(doc.size());
    std::vector<int> dt(K, 0);
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const int k = static_cast<int>(rng.index(static_cast<std::size_t>(K)));
        z[i] = k;
        ++dt[k];
    }

    std::vector<double> weights(K);
    std::vector<double> theta_sum(K, 0.0);
    const int keep_from = iters / 2;  // average the later sweeps
    int kept = 0;
    for (int sweep = 0; sweep < iters; ++sweep) {
        for (std::size_t i = 0; i < doc.size(); ++i) {
            const int w = doc[i];
            --dt[z[i]];
            double total = 0.0;
            for (int k = 0; k < K; ++k) {
                const double p = (model.word_topic_count[k][w] + model.beta) /
                                 (model.topic_count[k] + vbeta) * (dt[k] + model.alpha);
                weights[k] = p;
                total += p;
            }
            const int nk = sample_discrete(weights, total, rng);
            z[i] = nk;
            ++dt[nk];
        }
        if (sweep >= keep_from) {
            const double denom = doc.size() + K * model.alpha;
            for (int k = 0; k < K; ++k) theta_sum[k] += (dt[k] + model.alpha) / denom;
            ++kept;
        }
    }
    std::vector<double> theta(K);
    double total = 0.0;
    for (int k = 0; k < K; ++k) {
        theta[k] = theta_sum[k] / kept;
        total += theta[k];
    }
    for (int k = 0; k < K; ++k) theta[k] /= total;
    return theta;
}

}  // namespace repostlab::textfeat
