#include <cmath>
#include <map>
#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"
#include "repostlab/core/corpus.hpp"
#include "repostlab/core/schema.hpp"
#include "repostlab/textfeat/lda.hpp"
#include "repostlab/textfeat/post_features.hpp"
#include "repostlab/textfeat/scorers.hpp"
#include "repostlab/userfeat/features.hpp"
#include "repostlab/userfeat/graph.hpp"
#include "repostlab/userfeat/summary.hpp"

using namespace repostlab;
using namespace repostlab::userfeat;
using testutil::make_post;
using testutil::make_user;

namespace {

core::Corpus load_fixture(const std::string& dir, const std::vector<core::RawPost>& posts,
                          const std::vector<core::UserRecord>& users) {
    core::write_posts_jsonl(dir + "/posts.jsonl", posts);
    core::write_users_jsonl(dir + "/users.jsonl", users);
    return core::load_corpus(dir + "/posts.jsonl", dir + "/users.jsonl");
}

// Straight transcription of the ground-node walk on a dense adjacency copy,
// used as an oracle for the packed implementation.
std::vector<double> dense_leaderrank(const FollowGraph& g) {
    const std::size_t n = g.n_nodes();
    std::vector<double> score(n + 1, 1.0);
    score[n] = 0.0;
    for (int iter = 0; iter < 20000; ++iter) {
        std::vector<double> next(n + 1, 0.0);
        for (std::size_t v = 0; v < n; ++v) {
            const auto& out = g.followees(static_cast<int>(v));
            const double share = score[v] / static_cast<double>(out.size() + 1);
            for (int t : out) next[t] += share;
            next[n] += share;
        }
        for (std::size_t v = 0; v < n; ++v)
            next[v] += score[n] / static_cast<double>(n);
        double delta = 0.0;
        for (std::size_t v = 0; v <= n; ++v) delta += std::fabs(next[v] - score[v]);
        score.swap(next);
        if (delta < 1e-12) break;
    }
    std::vector<double> out(n);
    for (std::size_t v = 0; v < n; ++v)
        out[v] = score[v] + score[n] / static_cast<double>(n);
    return out;
}

}  // namespace

TEST_CASE("follow graph drops self-loops and unknown targets") {
    const std::string dir = testutil::tmp_dir("uf_graph");
    auto corpus = load_fixture(
        dir, {make_post("p1", "a", 100, "hello world")},
        {make_user("a", 10, {"a", "b", "ghost"}), make_user("b", 10, {"a"})});
    FollowGraph g(corpus);
    CHECK(g.n_nodes() == 2);
    CHECK(g.ids() == std::vector<std::string>{"a", "b"});
    CHECK(g.index_of("a") == 0);
    CHECK(g.index_of("zz") == -1);
    CHECK(g.follows("a", "b"));
    CHECK(g.follows("b", "a"));
    CHECK_FALSE(g.follows("a", "a"));
    CHECK(g.followees(0) == std::vector<int>{1});
    CHECK(g.followers(0) == std::vector<int>{1});
}

TEST_CASE("leaderrank closed forms and dense oracle") {
    const std::string dir = testutil::tmp_dir("uf_lr");

    SUBCASE("single node scores exactly one") {
        auto corpus = load_fixture(dir, {make_post("p", "solo", 10, "hi there")},
                                   {make_user("solo")});
        FollowGraph g(corpus);
        auto s = leaderrank(g);
        REQUIRE(s.size() == 1);
        CHECK(s[0] == doctest::Approx(1.0).epsilon(1e-9));
    }

    SUBCASE("two-node chain matches the stationary solution") {
        // a follows b: walking the stationary equations by hand gives
        // a = 8/9 and b = 10/9 after the ground share is folded back
        auto corpus = load_fixture(dir, {make_post("p", "a", 10, "hi there")},
                                   {make_user("a", 10, {"b"}), make_user("b")});
        FollowGraph g(corpus);
        auto s = leaderrank(g);
        REQUIRE(s.size() == 2);
        CHECK(std::fabs(s[0] - 8.0 / 9.0) < 1e-6);
        CHECK(std::fabs(s[1] - 10.0 / 9.0) < 1e-6);
    }

    SUBCASE("hub of a star collects the top score") {
        std::vector<core::UserRecord> users = {make_user("hub")};
        for (int i = 0; i < 6; ++i)
            users.push_back(make_user("fan" + std::to_string(i), 10, {"hub"}));
        auto corpus = load_fixture(dir, {make_post("p", "hub", 10, "hi there")}, users);
        FollowGraph g(corpus);
        auto s = leaderrank(g);
        const int hub = g.index_of("hub");
        for (std::size_t i = 0; i < s.size(); ++i)
            if (static_cast<int>(i) != hub) CHECK(s[hub] > s[i]);
    }

    SUBCASE("random graph agrees with the dense walk") {
        std::vector<core::UserRecord> users;
        for (int i = 0; i < 12; ++i) users.push_back(make_user("u" + std::to_string(i)));
        // deterministic pseudo-random edges
        for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 12; ++j)
                if (i != j && ((i * 7 + j * 13) % 5) == 0)
                    users[i].following.push_back("u" + std::to_string(j));
        auto corpus = load_fixture(dir, {make_post("p", "u0", 10, "hi there")}, users);
        FollowGraph g(corpus);
        auto fast = leaderrank(g);
        auto slow = dense_leaderrank(g);
        double sum = 0.0;
        for (std::size_t i = 0; i < fast.size(); ++i) {
            CHECK(fast[i] > 0.0);
            CHECK(std::fabs(fast[i] - slow[i]) < 1e-6);
            sum += fast[i];
        }
        CHECK(std::fabs(sum - static_cast<double>(g.n_nodes())) < 1e-6);
    }
}

TEST_CASE("history summary aggregates percentages and intervals") {
    auto reg = textfeat::ScorerRegistry::builtin();
    auto model = textfeat::lda_train({"game win score", "rain cold water"}, 10, 3);
    std::map<std::string, int> codes;
    textfeat::PostFeatureExtractor ex(&model, &reg, &codes);

    SUBCASE("pure repost history") {
        std::vector<core::RawPost> hist;
        for (int i = 0; i < 50; ++i)
            hist.push_back(make_post("h" + std::to_string(i), "u", 100 + i, "game win",
                                     {}, core::PostType::repost, "x" + std::to_string(i)));
        auto s = build_summary(make_user("u", 10, {}, hist), ex);
        CHECK(s.n_posts == 50);
        CHECK(s.pct_repost == 100.0);
        CHECK(s.pct_original == 0.0);
        CHECK(s.pct_interactive == 100.0);
        CHECK(s.reposted_parent_ids.size() == 50);
    }

    SUBCASE("two posts two days apart") {
        auto s = build_summary(
            make_user("u", 10, {},
                      {make_post("h1", "u", 1000, "game win"),
                       make_post("h2", "u", 1000 + 2 * 86400, "rain cold")}),
            ex);
        CHECK(s.avg_interval_days == doctest::Approx(2.0).epsilon(1e-12));
    }

    SUBCASE("mixed type percentages") {
        std::vector<core::RawPost> hist = {
            make_post("h1", "u", 100, "game", {}, core::PostType::original),
            make_post("h2", "u", 200, "win", {}, core::PostType::repost, "x1"),
            make_post("h3", "u", 300, "rain", {}, core::PostType::repost, "x2"),
            make_post("h4", "u", 400, "cold", {}, core::PostType::quote, "x3"),
            make_post("h5", "u", 500, "water", {}, core::PostType::reply, "x4")};
        auto s = build_summary(make_user("u", 10, {}, hist), ex);
        CHECK(s.pct_original == 20.0);
        CHECK(s.pct_repost == 40.0);
        CHECK(s.pct_quote == 20.0);
        CHECK(s.pct_reply == 20.0);
        CHECK(s.pct_interactive == 80.0);
    }

    SUBCASE("received engagement averages") {
        auto p1 = make_post("h1", "u", 100, "game");
        p1.metrics.likes = 5;
        p1.metrics.reposts = 2;
        auto p2 = make_post("h2", "u", 200, "win");
        p2.metrics.likes = 5;
        auto s = build_summary(make_user("u", 10, {}, {p1, p2}), ex);
        CHECK(s.avg_likes == 5.0);
        CHECK(s.avg_reposts == 1.0);
        CHECK(s.avg_quotes == 0.0);
    }

    SUBCASE("empty history is all nan") {
        auto s = build_summary(make_user("u"), ex);
        CHECK(s.n_posts == 0);
        CHECK(std::isnan(s.pct_original));
        CHECK(std::isnan(s.avg_interval_days));
        CHECK(std::isnan(s.avg_likes));
        for (double v : s.mean_m) CHECK(std::isnan(v));
    }

    SUBCASE("single post has no interval") {
        auto s = build_summary(make_user("u", 10, {}, {make_post("h1", "u", 100, "game")}), ex);
        CHECK(std::isnan(s.avg_interval_days));
        CHECK(s.pct_original == 100.0);
    }

    SUBCASE("causality cutoff drops later posts") {
        auto s = build_summary(make_user("u", 10, {},
                                         {make_post("h1", "u", 100, "game"),
                                          make_post("h2", "u", 200, "win"),
                                          make_post("h3", "u", 300, "rain")}),
                               ex, 200);
        CHECK(s.n_posts == 2);
        CHECK(s.post_ids.count("h3") == 0);
    }

    SUBCASE("mention counts versus mentioning posts") {
        auto p1 = make_post("h1", "u", 100, "game");
        p1.mentions = {"v", "v", "w"};
        auto p2 = make_post("h2", "u", 200, "win");
        p2.mentions = {"v"};
        auto s = build_summary(make_user("u", 10, {}, {p1, p2}), ex);
        CHECK(s.mention_counts.at("v") == 3);
        CHECK(s.mention_posts.at("v") == 2);
        CHECK(s.mention_counts.at("w") == 1);
        CHECK(s.mention_posts.at("w") == 1);
    }

    SUBCASE("mean content vector skips nan columns") {
        std::vector<core::RawPost> hist = {make_post("h1", "u", 100, "Game win today."),
                                           make_post("h2", "u", 200, ""),
                                           make_post("h3", "u", 300, "Cold rain water.")};
        auto user = make_user("u", 10, {}, hist);
        auto s = build_summary(user, ex);
        REQUIRE(s.mean_m.size() == core::kSizeM);
        std::vector<std::vector<double>> per_post;
        for (const auto& p : hist) per_post.push_back(ex.extract(p));
        for (std::size_t c = 0; c < core::kSizeM; ++c) {
            double sum = 0.0;
            std::size_t k = 0;
            for (const auto& v : per_post)
                if (!std::isnan(v[c])) {
                    sum += v[c];
                    ++k;
                }
            if (k == 0) {
                CHECK(std::isnan(s.mean_m[c]));
            } else {
                CHECK(s.mean_m[c] == doctest::Approx(sum / static_cast<double>(k)).epsilon(1e-12));
            }
        }
        // the empty post contributes nan readability, so those columns
        // average over two posts while counts average over three
        const auto& names = core::feature_dictionary(core::SchemaId::M);
        std::size_t read1 = 0, charnum = 0;
        for (std::size_t i = 0; i < names.size(); ++i) {
            if (names[i] == "M_Readability1") read1 = i;
            if (names[i] == "M_CharNum") charnum = i;
        }
        CHECK(s.mean_m[read1] ==
              doctest::Approx((per_post[0][read1] + per_post[2][read1]) / 2.0).epsilon(1e-12));
        CHECK(s.mean_m[charnum] == doctest::Approx(31.0 / 3.0).epsilon(1e-12));
    }
}

TEST_CASE("cosine similarity basics") {
    CHECK(cosine_similarity({1.0, 0.0}, {0.0, 1.0}) == 0.0);
    CHECK(cosine_similarity({1.0, 2.0}, {2.0, 4.0}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::isnan(cosine_similarity({0.0, 0.0}, {1.0, 1.0})));
    CHECK(cosine_similarity({1.0, 1.0}, {-1.0, -1.0}) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("feature context assembles the full instance row") {
    const std::string dir = testutil::tmp_dir("uf_ctx");

    auto u2_mention = make_post("h21", "u2", 900, "shout out today");
    u2_mention.mentions = {"u1", "u1"};
    auto u2_repost = make_post("h22", "u2", 1200, "game win sunny", {},
                               core::PostType::repost, "h11");
    std::vector<core::UserRecord> users = {
        make_user("u1", 100, {},
                  {make_post("h11", "u1", 800, "Game win sunny day."),
                   make_post("h12", "u1", 1000, "Rain water cold night.")}),
        make_user("u2", 150, {"u1"}, {u2_mention, u2_repost}),
        make_user("u3", 200, {"u1"},
                  {make_post("h31", "u3", 700, "Rain water cold night.")}),
        make_user("u4", 250)};
    auto p1 = make_post("p1", "u1", 5000, "Game win sunny day.", {"sports"});
    auto p2 = make_post("p2", "u2", 5000 + 21600, "RT game", {"sports"},
                        core::PostType::repost, "p1");
    auto corpus = load_fixture(dir, {p1, p2}, users);
    REQUIRE(corpus.warnings.empty());

    ContextOptions opts;
    opts.seed = 11;
    auto ctx = FeatureContext::build_unique(corpus, opts);

    core::Instance inst;
    inst.instance_id = "i1";
    inst.post_id = "p1";
    inst.sender_id = "u1";
    inst.recipient_id = "u2";
    inst.event_time = p2.created_at;
    inst.hashtag = "sports";
    inst.label = 1;

    const auto row = ctx->instance_features(inst);
    REQUIRE(row.size() == core::kSizeAll);

    const auto& names = core::feature_dictionary(core::SchemaId::ALL);
    auto idx = [&](const std::string& name) {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == name) return i;
        throw std::runtime_error("missing feature " + name);
    };

    // content block is the cached post extraction
    const auto& m = ctx->post_m("p1");
    for (std::size_t i = 0; i < core::kSizeM; ++i) CHECK(row[i] == m[i]);

    // recipient u2 follows sender u1; the sender does not follow back.
    // u1's interacting followers: u2 reposted from u1's history, u3 never did.
    CHECK(row[idx("U-P_R_FollowS")] == 1.0);
    CHECK(row[idx("U-P_S_FollowS")] == 0.0);
    CHECK(row[idx("U-P_R_Indegree")] == 0.0);
    CHECK(row[idx("U-P_S_Indegree")] == 1.0);

    // u1 has the larger history nowhere, both have 2 entries
    CHECK(row[idx("U-HA_R_TweetNum")] == 2.0);
    CHECK(row[idx("U-HA_S_TweetNum")] == 2.0);
    CHECK(row[idx("U-HA_R_RetweetPercent")] == 50.0);
    CHECK(row[idx("U-HA_S_TweetPercent")] == 100.0);

    // recipient mentioned the sender twice inside one of two posts
    CHECK(row[idx("U-HA_RS_Mention")] == 2.0);
    CHECK(row[idx("U-HA_RS_MentionPer")] == 50.0);
    CHECK(row[idx("U-HA_SR_Mention")] == 0.0);
    CHECK(row[idx("U-HA_SR_MentionPer")] == 0.0);

    // repost came six hours after the post
    CHECK(row[idx("U-HA_RS_RepostLatency")] == doctest::Approx(0.25).epsilon(1e-12));

    // interaction topics form a simplex when any interaction exists
    double tors_sum = 0.0;
    for (int i = 1; i <= 10; ++i) tors_sum += row[idx("U-HA_SR_TORS" + std::to_string(i))];
    CHECK(tors_sum == doctest::Approx(1.0).epsilon(1e-9));
    const double pw = row[idx("U-HA_SR_PathWidth")];
    CHECK(pw >= 0.0);
    CHECK(pw <= 2.0);

    // historical blocks carry each side's nan-skipping mean
    const auto& s_sum = ctx->summary_of("u1");
    const auto& r_sum = ctx->summary_of("u2");
    const std::size_t s_off = idx("U-HM_S_TopicM1");
    const std::size_t r_off = idx("U-HM_R_TopicM1");
    for (std::size_t i = 0; i < core::kSizeM; ++i) {
        if (std::isnan(s_sum.mean_m[i]))
            CHECK(std::isnan(row[s_off + i]));
        else
            CHECK(row[s_off + i] == s_sum.mean_m[i]);
        if (std::isnan(r_sum.mean_m[i]))
            CHECK(std::isnan(row[r_off + i]));
        else
            CHECK(row[r_off + i] == r_sum.mean_m[i]);
    }
    CHECK(row[idx("U-HM_SR_TopicSim")] ==
          doctest::Approx(cosine_similarity(s_sum.mean_topics, r_sum.mean_topics))
              .epsilon(1e-12));

    // extraction is deterministic
    CHECK(ctx->instance_features(inst) == row);

    SUBCASE("interaction-free pair gets the neutral path width") {
        core::Instance other;
        other.instance_id = "i2";
        other.post_id = "p1";
        other.sender_id = "u3";
        other.recipient_id = "u4";
        other.event_time = p2.created_at;
        other.hashtag = "sports";
        const auto r2 = ctx->instance_features(other);
        double tsum = 0.0;
        for (int i = 1; i <= 10; ++i) tsum += r2[idx("U-HA_SR_TORS" + std::to_string(i))];
        CHECK(tsum == 0.0);
        CHECK(r2[idx("U-HA_SR_PathWidth")] == 1.0);
        // empty recipient history leaves the mention features undefined
        CHECK(std::isnan(r2[idx("U-HA_RS_Mention")]));
        CHECK(std::isnan(r2[idx("U-HA_RS_MentionPer")]));
    }

    SUBCASE("identical histories give topic similarity one") {
        const auto& a = ctx->summary_of("u3");
        // u3's single history post matches u1's second entry word for word
        CHECK(cosine_similarity(a.mean_topics, a.mean_topics) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("percentage features stay inside their ranges") {
        for (const char* f : {"U-HA_R_TweetPercent", "U-HA_R_RetweetPercent",
                              "U-HA_R_QuotePercent", "U-HA_R_ReplyPercent",
                              "U-HA_R_InteractivePer", "U-HA_S_TweetPercent",
                              "U-HA_RS_MentionPer", "U-HA_SR_MentionPer"}) {
            const double v = row[idx(f)];
            CHECK(v >= 0.0);
            CHECK(v <= 100.0);
        }
        CHECK(std::fabs(row[idx("U-HM_SR_TopicSim")]) <= 1.0 + 1e-12);
    }

    SUBCASE("similarity vector stacks post and sender blocks") {
        const auto v = ctx->similarity_vector("p1", "u1", "u2");
        CHECK(v.size() == 78 + 15 + 11 + 78);
        for (std::size_t i = 0; i < core::kSizeM; ++i) CHECK(v[i] == m[i]);
    }
}

TEST_CASE("account age clamps at zero and warns") {
    const std::string dir = testutil::tmp_dir("uf_age");
    auto corpus = load_fixture(dir, {make_post("p1", "u1", 500, "hello world today")},
                               {make_user("u1", 2000)});
    ContextOptions opts;
    opts.reference_date = 1000;  // before u1 registered
    auto ctx = FeatureContext::build_unique(corpus, opts);
    CHECK(ctx->age_clamp_warnings() == 0);
    const auto prof = ctx->profile_features(*corpus.find_user("u1"), "u1");
    CHECK(prof[0] == 0.0);
    CHECK(ctx->age_clamp_warnings() == 1);
}

TEST_CASE("spread activity peaks at the most prolific user") {
    const std::string dir = testutil::tmp_dir("uf_spread");
    auto heavy = make_user("heavy");
    heavy.total_post_count = 40;
    auto light = make_user("light");
    light.total_post_count = 10;
    auto corpus = load_fixture(dir, {make_post("p1", "heavy", 500, "hello world")},
                               {heavy, light});
    auto ctx = FeatureContext::build_unique(corpus, ContextOptions{});
    const auto hp = ctx->profile_features(*corpus.find_user("heavy"), "light");
    const auto lp = ctx->profile_features(*corpus.find_user("light"), "heavy");
    CHECK(hp[5] == 1.0);
    CHECK(lp[5] == 0.25);
}
