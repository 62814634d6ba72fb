#pragma once

#include <map>
#include <string>
#include <vector>

#include "repostlab/core/types.hpp"

namespace repostlab::userfeat {

// Directed follow graph (follower -> followee) over the corpus users.
// Self-loops and edges to unknown users are dropped at construction.
class FollowGraph {
public:
    explicit FollowGraph(const core::Corpus& corpus);

    std::size_t n_nodes() const { return ids_.size(); }
    const std::vector<std::string>& ids() const { return ids_; }
    int index_of(const std::string& user_id) const;  // -1 if unknown

    const std::vector<int>& followees(int node) const { return out_[node]; }
    const std::vector<int>& followers(int node) const { return in_[node]; }
    bool follows(const std::string& follower, const std::string& followee) const;

private:
    std::vector<std::string> ids_;  // sorted user ids
    std::map<std::string, int> index_;
    std::vector<std::vector<int>> out_;
    std::vector<std::vector<int>> in_;
};

inline constexpr double kLeaderRankTol = 1e-8;
inline constexpr int kLeaderRankMaxIters = 10000;

// LeaderRank: a ground node is linked to and from every node, the walk is
// iterated to stationarity, and the ground score is shared back equally.
// Scores are positive and sum to the node count. Throws on an empty graph.
std::vector<double> leaderrank(const FollowGraph& graph);

std::map<std::string, double> leaderrank_by_id(const FollowGraph& graph);

}  // namespace repostlab::userfeat
