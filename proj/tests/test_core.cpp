#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"
#include "repostlab/core/corpus.hpp"
#include "repostlab/core/schema.hpp"
#include "repostlab/core/table.hpp"

using namespace repostlab;
using testutil::make_post;
using testutil::make_user;

TEST_CASE("corpus jsonl round-trips byte for byte") {
    const std::string dir = testutil::tmp_dir("core_roundtrip");
    std::vector<core::RawPost> posts;
    posts.push_back(make_post("p1", "u1", 2000, "hello world #x", {"x"}));
    auto p2 = make_post("p2", "u2", 2500, "RT hello", {"x"}, core::PostType::repost, "p1");
    p2.metrics.reposts = 3;
    p2.metrics.likes = 7;
    p2.mentions.push_back("u1");
    posts.push_back(p2);
    std::vector<core::UserRecord> users;
    users.push_back(make_user("u1", 100, {"u2"}, {make_post("h1", "u1", 500, "old post")}));
    users.push_back(make_user("u2", 150));

    core::write_posts_jsonl(dir + "/posts.jsonl", posts);
    core::write_users_jsonl(dir + "/users.jsonl", users);
    const std::string posts_bytes = testutil::slurp(dir + "/posts.jsonl");
    const std::string users_bytes = testutil::slurp(dir + "/users.jsonl");

    auto corpus = core::load_corpus(dir + "/posts.jsonl", dir + "/users.jsonl");
    CHECK(corpus.warnings.empty());

    std::string posts_again, users_again;
    for (const auto& p : corpus.posts) posts_again += core::serialize_post(p) + "\n";
    for (const auto& u : corpus.users) users_again += core::serialize_user(u) + "\n";
    CHECK(posts_again == posts_bytes);
    CHECK(users_again == users_bytes);
}

TEST_CASE("minimal corpus loads with indexes populated") {
    const std::string dir = testutil::tmp_dir("core_minimal");
    core::write_posts_jsonl(dir + "/posts.jsonl",
                            {make_post("a", "u1", 1000, "first"),
                             make_post("b", "u2", 1500, "again", {}, core::PostType::repost, "a")});
    core::write_users_jsonl(dir + "/users.jsonl", {make_user("u1"), make_user("u2")});
    auto c = core::load_corpus(dir + "/posts.jsonl", dir + "/users.jsonl");
    CHECK(c.warnings.empty());
    CHECK(c.posts.size() == 2);
    CHECK(c.post_index.at("b") == 1);
    CHECK(c.find_post("a")->text == "first");
    CHECK(c.find_user("u2")->user_id == "u2");
    CHECK(c.find_post("zz") == nullptr);
    CHECK(c.posts_by_author.at("u1").size() == 1);
    CHECK(c.max_timestamp() == 1500);
}

TEST_CASE("dangling references warn but load") {
    const std::string dir = testutil::tmp_dir("core_dangling");
    core::write_posts_jsonl(dir + "/posts.jsonl",
                            {make_post("a", "u1", 1000, "x", {}, core::PostType::repost, "ghost")});
    core::write_users_jsonl(dir + "/users.jsonl", {make_user("u1", 100, {"nobody"})});
    auto c = core::load_corpus(dir + "/posts.jsonl", dir + "/users.jsonl");
    REQUIRE(c.warnings.size() == 2);
    CHECK(c.warnings[0].find("dangling parent ghost") != std::string::npos);
    CHECK(c.warnings[1].find("follows unknown user nobody") != std::string::npos);
}

TEST_CASE("history over the cap is rejected") {
    const std::string dir = testutil::tmp_dir("core_histcap");
    std::vector<core::RawPost> history;
    for (int i = 0; i < 51; ++i)
        history.push_back(make_post("h" + std::to_string(i), "u1", 100 + i, "t"));
    core::write_posts_jsonl(dir + "/posts.jsonl", {make_post("a", "u1", 1000, "x")});
    core::write_users_jsonl(dir + "/users.jsonl", {make_user("u1", 10, {}, history)});
    CHECK_THROWS_WITH_AS(core::load_corpus(dir + "/posts.jsonl", dir + "/users.jsonl"),
                         doctest::Contains("history has 51"), std::runtime_error);
}

TEST_CASE("duplicate ids are errors") {
    const std::string dir = testutil::tmp_dir("core_dup");
    core::write_posts_jsonl(dir + "/posts.jsonl",
                            {make_post("same", "u1", 1000, "x"), make_post("same", "u1", 2000, "y")});
    core::write_users_jsonl(dir + "/users.jsonl", {make_user("u1")});
    CHECK_THROWS_WITH_AS(core::load_corpus(dir + "/posts.jsonl", dir + "/users.jsonl"),
                         doctest::Contains("duplicate post id: same"), std::runtime_error);
}

TEST_CASE("malformed jsonl reports the line number") {
    const std::string dir = testutil::tmp_dir("core_badline");
    testutil::spit(dir + "/posts.jsonl",
                   "{\"post_id\":\"a\",\"author_id\":\"u1\",\"created_at\":1,\"text\":\"x\","
                   "\"hashtags\":[],\"post_type\":\"original\",\"parent_id\":null,"
                   "\"metrics\":{\"reposts\":0,\"quotes\":0,\"replies\":0,\"likes\":0},"
                   "\"mentions\":[]}\n{not json\n");
    core::write_users_jsonl(dir + "/users.jsonl", {make_user("u1")});
    CHECK_THROWS_WITH_AS(core::load_corpus(dir + "/posts.jsonl", dir + "/users.jsonl"),
                         doctest::Contains(":2:"), std::runtime_error);
}

TEST_CASE("schema sizes and block layout") {
    CHECK(core::schema_size(core::SchemaId::M) == 78);
    CHECK(core::schema_size(core::SchemaId::UP) == 30);
    CHECK(core::schema_size(core::SchemaId::UHA) == 38);
    CHECK(core::schema_size(core::SchemaId::UHM) == 157);
    CHECK(core::schema_size(core::SchemaId::U) == 225);
    CHECK(core::schema_size(core::SchemaId::ALL) == 303);

    const auto& all = core::feature_dictionary(core::SchemaId::ALL);
    REQUIRE(all.size() == 303);
    // topic blocks open the content section: 19-scheme, main+num, 6-scheme,
    // main+num, then the 10 LDA mixture components
    for (int i = 1; i <= 19; ++i) CHECK(all[i - 1] == "M_TopicM" + std::to_string(i));
    CHECK(all[19] == "M_TopicMMain");
    CHECK(all[20] == "M_TopicMNum");
    for (int i = 1; i <= 6; ++i) CHECK(all[20 + i] == "M_TopicG" + std::to_string(i));
    CHECK(all[27] == "M_TopicGMain");
    CHECK(all[28] == "M_TopicGNum");
    for (int i = 1; i <= 10; ++i) CHECK(all[28 + i] == "M_TopicLDA" + std::to_string(i));
    CHECK(all[77] == "M_hashtag");

    // ALL is M then U; U is U-P then U-HA then U-HM
    const auto& m = core::feature_dictionary(core::SchemaId::M);
    const auto& u = core::feature_dictionary(core::SchemaId::U);
    const auto& up = core::feature_dictionary(core::SchemaId::UP);
    const auto& uha = core::feature_dictionary(core::SchemaId::UHA);
    const auto& uhm = core::feature_dictionary(core::SchemaId::UHM);
    std::vector<std::string> cat = m;
    cat.insert(cat.end(), u.begin(), u.end());
    CHECK(cat == all);
    std::vector<std::string> ucat = up;
    ucat.insert(ucat.end(), uha.begin(), uha.end());
    ucat.insert(ucat.end(), uhm.begin(), uhm.end());
    CHECK(ucat == u);

    std::set<std::string> uniq(all.begin(), all.end());
    CHECK(uniq.size() == all.size());

    CHECK(core::schema_offset(core::SchemaId::M) == 0);
    CHECK(core::schema_offset(core::SchemaId::UP) == 78);
    CHECK(core::schema_offset(core::SchemaId::UHA) == 108);
    CHECK(core::schema_offset(core::SchemaId::UHM) == 146);
    CHECK(core::schema_offset(core::SchemaId::U) == 78);
    CHECK(core::schema_offset(core::SchemaId::ALL) == 0);
}

TEST_CASE("schema names parse and hash stably") {
    for (auto id : {core::SchemaId::M, core::SchemaId::UP, core::SchemaId::UHA,
                    core::SchemaId::UHM, core::SchemaId::U, core::SchemaId::ALL}) {
        CHECK(core::parse_schema(core::schema_name(id)) == id);
        CHECK(core::dictionary_hash(id) == core::dictionary_hash(id));
        CHECK(core::dictionary_hash(id) != 0);
    }
    CHECK(core::schema_name(core::SchemaId::UP) == "U-P");
    CHECK_THROWS(core::parse_schema("bogus"));
    CHECK(core::dictionary_hash(core::SchemaId::M) != core::dictionary_hash(core::SchemaId::U));
}

TEST_CASE("feature table csv round-trip keeps every value") {
    const std::string dir = testutil::tmp_dir("core_table");
    auto t = core::make_table(core::SchemaId::UP);
    std::vector<double> row(30);
    for (std::size_t i = 0; i < row.size(); ++i) row[i] = 0.1 * static_cast<double>(i) + 1.0 / 3.0;
    row[3] = std::nan("");
    t.rows.push_back(row);
    row[3] = -7.25e-12;
    t.rows.push_back(row);
    t.labels = {1, 0};
    t.hashtags = {"alpha", "beta"};
    t.instance_ids = {"i1", "i2"};
    core::write_csv(t, dir + "/t.csv");
    auto back = core::read_csv(dir + "/t.csv");
    CHECK(back.schema_id == core::SchemaId::UP);
    CHECK(back.feature_names == t.feature_names);
    REQUIRE(back.rows.size() == 2);
    CHECK(std::isnan(back.rows[0][3]));
    for (std::size_t i = 0; i < 30; ++i) {
        if (i != 3) CHECK(back.rows[0][i] == t.rows[0][i]);
        CHECK(back.rows[1][i] == t.rows[1][i]);
    }
    CHECK(back.labels == t.labels);
    CHECK(back.hashtags == t.hashtags);
    CHECK(back.instance_ids == t.instance_ids);

    // a second write of the read-back table reproduces the file exactly
    core::write_csv(back, dir + "/t2.csv");
    CHECK(testutil::slurp(dir + "/t.csv") == testutil::slurp(dir + "/t2.csv"));
}

TEST_CASE("slice extracts the named block") {
    auto t = core::make_table(core::SchemaId::ALL);
    std::vector<double> row(303);
    for (std::size_t i = 0; i < row.size(); ++i) row[i] = static_cast<double>(i);
    t.rows.push_back(row);
    t.labels = {1};
    t.hashtags = {"h"};
    t.instance_ids = {"i"};

    auto up = t.slice(core::SchemaId::UP);
    CHECK(up.schema_id == core::SchemaId::UP);
    REQUIRE(up.rows.size() == 1);
    REQUIRE(up.rows[0].size() == 30);
    CHECK(up.rows[0].front() == 78.0);
    CHECK(up.rows[0].back() == 107.0);
    CHECK(up.labels == t.labels);
    CHECK(up.instance_ids == t.instance_ids);

    auto u = t.slice(core::SchemaId::U);
    CHECK(u.rows[0].front() == 78.0);
    CHECK(u.rows[0].back() == 302.0);
    CHECK(u.rows[0].size() == 225);

    auto same = t.slice(core::SchemaId::ALL);
    CHECK(same.rows == t.rows);

    CHECK_THROWS_AS((void)up.slice(core::SchemaId::M), std::runtime_error);
}
