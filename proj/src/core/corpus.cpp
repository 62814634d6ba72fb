#include "repostlab/core/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace repostlab::core {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string post_type_str(PostType t) { return post_type_name(t); }

RawPost post_from_json(const nlohmann::json& j) {
    RawPost p;
    p.post_id = j.at("post_id").get<std::string>();
    p.author_id = j.at("author_id").get<std::string>();
    p.created_at = j.at("created_at").get<std::int64_t>();
    p.text = j.at("text").get<std::string>();
    for (const auto& h : j.at("hashtags")) p.hashtags.push_back(h.get<std::string>());
    p.post_type = parse_post_type(j.at("post_type").get<std::string>());
    const auto& parent = j.at("parent_id");
    if (!parent.is_null()) {
        p.has_parent = true;
        p.parent_id = parent.get<std::string>();
    }
    const auto& m = j.at("metrics");
    p.metrics.reposts = m.at("reposts").get<std::int64_t>();
    p.metrics.quotes = m.at("quotes").get<std::int64_t>();
    p.metrics.replies = m.at("replies").get<std::int64_t>();
    p.metrics.likes = m.at("likes").get<std::int64_t>();
    for (const auto& u : j.at("mentions")) p.mentions.push_back(u.get<std::string>());
    return p;
}

ordered_json post_to_json(const RawPost& p) {
    ordered_json j;
    j["post_id"] = p.post_id;
    j["author_id"] = p.author_id;
    j["created_at"] = p.created_at;
    j["text"] = p.text;
    j["hashtags"] = p.hashtags;
    j["post_type"] = post_type_str(p.post_type);
    if (p.has_parent)
        j["parent_id"] = p.parent_id;
    else
        j["parent_id"] = nullptr;
    j["metrics"] = {{"reposts", p.metrics.reposts},
                    {"quotes", p.metrics.quotes},
                    {"replies", p.metrics.replies},
                    {"likes", p.metrics.likes}};
    j["mentions"] = p.mentions;
    return j;
}

UserRecord user_from_json(const nlohmann::json& j) {
    UserRecord u;
    u.user_id = j.at("user_id").get<std::string>();
    u.registered_at = j.at("registered_at").get<std::int64_t>();
    u.follower_count = j.at("follower_count").get<std::int64_t>();
    u.followee_count = j.at("followee_count").get<std::int64_t>();
    u.total_post_count = j.at("total_post_count").get<std::int64_t>();
    u.listed_count = j.at("listed_count").get<std::int64_t>();
    u.verified = j.at("verified").get<bool>();
    u.profile_url_present = j.at("profile_url_present").get<bool>();
    for (const auto& f : j.at("following")) u.following.push_back(f.get<std::string>());
    for (const auto& h : j.at("history")) u.history.push_back(post_from_json(h));
    return u;
}

ordered_json user_to_json(const UserRecord& u) {
    ordered_json j;
    j["user_id"] = u.user_id;
    j["registered_at"] = u.registered_at;
    j["follower_count"] = u.follower_count;
    j["followee_count"] = u.followee_count;
    j["total_post_count"] = u.total_post_count;
    j["listed_count"] = u.listed_count;
    j["verified"] = u.verified;
    j["profile_url_present"] = u.profile_url_present;
    j["following"] = u.following;
    ordered_json hist = ordered_json::array();
    for (const auto& p : u.history) hist.push_back(post_to_json(p));
    j["history"] = std::move(hist);
    return j;
}

// Parses one JSONL file, reporting the 1-based line number on failure.
template <typename Fn>
void for_each_line(const std::string& path, Fn&& fn) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": malformed JSON: " + e.what());
        }
        try {
            fn(j);
        } catch (const std::exception& e) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

}  // namespace

std::string post_type_name(PostType t) {
    switch (t) {
        case PostType::original: return "original";
        case PostType::repost: return "repost";
        case PostType::quote: return "quote";
        case PostType::reply: return "reply";
    }
    throw std::logic_error("post_type_name: bad value");
}

PostType parse_post_type(const std::string& s) {
    if (s == "original") return PostType::original;
    if (s == "repost") return PostType::repost;
    if (s == "quote") return PostType::quote;
    if (s == "reply") return PostType::reply;
    throw std::runtime_error("unknown post_type: " + s);
}

std::int64_t Corpus::max_timestamp() const {
    std::int64_t t = 0;
    for (const auto& p : posts) t = std::max(t, p.created_at);
    for (const auto& u : users) {
        t = std::max(t, u.registered_at);
        for (const auto& p : u.history) t = std::max(t, p.created_at);
    }
    return t;
}

Corpus load_corpus(const std::string& posts_path, const std::string& users_path) {
    Corpus c;
    for_each_line(posts_path, [&](const nlohmann::json& j) {
        c.posts.push_back(post_from_json(j));
    });
    for_each_line(users_path, [&](const nlohmann::json& j) {
        UserRecord u = user_from_json(j);
        if (u.history.size() > kMaxHistory)
            throw std::runtime_error("user " + u.user_id + ": history has " +
                                     std::to_string(u.history.size()) +
                                     " entries, limit is " + std::to_string(kMaxHistory));
        c.users.push_back(std::move(u));
    });

    for (std::size_t i = 0; i < c.posts.size(); ++i) {
        const auto& id = c.posts[i].post_id;
        if (!c.post_index.emplace(id, i).second)
            throw std::runtime_error("duplicate post id: " + id);
    }
    for (std::size_t i = 0; i < c.users.size(); ++i) {
        const auto& id = c.users[i].user_id;
        if (!c.user_index.emplace(id, i).second)
            throw std::runtime_error("duplicate user id: " + id);
    }

    for (const auto& p : c.posts) {
        if (!c.all_posts.emplace(p.post_id, &p).second)
            throw std::runtime_error("duplicate post id: " + p.post_id);
        c.posts_by_author[p.author_id].push_back(&p);
    }
    for (const auto& u : c.users) {
        for (const auto& p : u.history) {
            if (!c.all_posts.emplace(p.post_id, &p).second)
                throw std::runtime_error("duplicate post id: " + p.post_id);
        }
    }

    auto warn = [&](const std::string& msg) { c.warnings.push_back(msg); };
    for (const auto& p : c.posts) {
        if (c.user_index.find(p.author_id) == c.user_index.end())
            warn("post " + p.post_id + ": unknown author " + p.author_id);
        if (p.has_parent && c.all_posts.find(p.parent_id) == c.all_posts.end())
            warn("post " + p.post_id + ": dangling parent " + p.parent_id);
    }
    for (const auto& u : c.users) {
        for (const auto& f : u.following)
            if (c.user_index.find(f) == c.user_index.end())
                warn("user " + u.user_id + ": follows unknown user " + f);
        bool sorted = std::is_sorted(
            u.history.begin(), u.history.end(),
            [](const RawPost& a, const RawPost& b) { return a.created_at < b.created_at; });
        if (!sorted) warn("user " + u.user_id + ": history not in time order");
    }
    return c;
}

std::string serialize_post(const RawPost& post) { return post_to_json(post).dump(); }

std::string serialize_user(const UserRecord& user) { return user_to_json(user).dump(); }

void write_posts_jsonl(const std::string& path, const std::vector<RawPost>& posts) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (const auto& p : posts) out << serialize_post(p) << '\n';
}

void write_users_jsonl(const std::string& path, const std::vector<UserRecord>& users) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (const auto& u : users) out << serialize_user(u) << '\n';
}

}  // namespace repostlab::core
