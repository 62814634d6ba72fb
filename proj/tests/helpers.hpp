#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "repostlab/core/types.hpp"

namespace testutil {

// Fresh scratch directory under the test working dir; wiped per call so
// reruns start clean.
inline std::string tmp_dir(const std::string& name) {
    namespace fs = std::filesystem;
    fs::path dir = fs::path("test_tmp") / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir.string();
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline repostlab::core::RawPost make_post(
    const std::string& id, const std::string& author, std::int64_t t,
    const std::string& text, const std::vector<std::string>& hashtags = {},
    repostlab::core::PostType type = repostlab::core::PostType::original,
    const std::string& parent = "") {
    repostlab::core::RawPost p;
    p.post_id = id;
    p.author_id = author;
    p.created_at = t;
    p.text = text;
    p.hashtags = hashtags;
    p.post_type = type;
    p.has_parent = !parent.empty();
    p.parent_id = parent;
    return p;
}

inline repostlab::core::UserRecord make_user(
    const std::string& id, std::int64_t registered = 1000,
    const std::vector<std::string>& following = {},
    const std::vector<repostlab::core::RawPost>& history = {}) {
    repostlab::core::UserRecord u;
    u.user_id = id;
    u.registered_at = registered;
    u.following = following;
    u.history = history;
    u.follower_count = 10;
    u.followee_count = 10;
    u.total_post_count = static_cast<std::int64_t>(history.size());
    return u;
}

}  // namespace testutil
