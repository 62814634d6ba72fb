#include "repostlab/userfeat/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace repostlab::userfeat {

FollowGraph::FollowGraph(const core::Corpus& corpus) {
    ids_.reserve(corpus.users.size());
    for (const auto& u : corpus.users) ids_.push_back(u.user_id);
    std::sort(ids_.begin(), ids_.end());
    for (std::size_t i = 0; i < ids_.size(); ++i)
        index_.emplace(ids_[i], static_cast<int>(i));

    out_.assign(ids_.size(), {});
    in_.assign(ids_.size(), {});
    for (const auto& u : corpus.users) {
        const int from = index_.at(u.user_id);
        for (const auto& f : u.following) {
            auto it = index_.find(f);
            if (it == index_.end() || it->second == from) continue;
            out_[from].push_back(it->second);
            in_[it->second].push_back(from);
        }
    }
    for (auto& v : out_) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    for (auto& v : in_) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
}

int FollowGraph::index_of(const std::string& user_id) const {
    auto it = index_.find(user_id);
    return it == index_.end() ? -1 : it->second;
}

bool FollowGraph::follows(const std::string& follower, const std::string& followee) const {
    const int a = index_of(follower), b = index_of(followee);
    if (a < 0 || b < 0) return false;
    return std::binary_search(out_[a].begin(), out_[a].end(), b);
}

std::vector<double> leaderrank(const FollowGraph& graph) {
    const std::size_t n = graph.n_nodes();
    if (n == 0) throw std::runtime_error("leaderrank: empty graph");

    // Node n is the ground node. Every node gains one link to it and one
    // from it, so every out-degree is positive.
    std::vector<double> score(n + 1, 1.0);
    score[n] = 0.0;
    std::vector<double> next(n + 1);

    for (int iter = 0; iter < kLeaderRankMaxIters; ++iter) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t v = 0; v < n; ++v) {
            const auto& out = graph.followees(static_cast<int>(v));
            const double share = score[v] / static_cast<double>(out.size() + 1);
            for (int t : out) next[t] += share;
            next[n] += share;
        }
        const double ground_share = score[n] / static_cast<double>(n);
        for (std::size_t v = 0; v < n; ++v) next[v] += ground_share;

        double delta = 0.0;
        for (std::size_t v = 0; v <= n; ++v) delta += std::fabs(next[v] - score[v]);
        score.swap(next);
        if (delta < kLeaderRankTol) break;
    }

    const double ground_share = score[n] / static_cast<double>(n);
    std::vector<double> out(n);
    for (std::size_t v = 0; v < n; ++v) out[v] = score[v] + ground_share;
    return out;
}

std::map<std::string, double> leaderrank_by_id(const FollowGraph& graph) {
    const auto scores = leaderrank(graph);
    std::map<std::string, double> out;
    for (std::size_t i = 0; i < scores.size(); ++i) out.emplace(graph.ids()[i], scores[i]);
    return out;
}

}  // namespace repostlab::userfeat
