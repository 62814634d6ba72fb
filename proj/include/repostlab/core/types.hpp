#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace repostlab::core {

// Provenance of a post as recorded on disk. Quotes and replies count as
// reposts for labeling; the original value is kept for the per-type
// percentage features.
enum class PostType { original, repost, quote, reply };

std::string post_type_name(PostType t);
PostType parse_post_type(const std::string& s);

inline bool is_repost_like(PostType t) { return t != PostType::original; }

struct PostMetrics {
    std::int64_t reposts = 0;
    std::int64_t quotes = 0;
    std::int64_t replies = 0;
    std::int64_t likes = 0;
};

struct RawPost {
    std::string post_id;
    std::string author_id;
    std::int64_t created_at = 0;  // epoch seconds
    std::string text;
    std::vector<std::string> hashtags;
    PostType post_type = PostType::original;
    bool has_parent = false;
    std::string parent_id;
    PostMetrics metrics;
    std::vector<std::string> mentions;  // user ids
};

struct UserRecord {
    std::string user_id;
    std::int64_t registered_at = 0;
    std::int64_t follower_count = 0;
    std::int64_t followee_count = 0;
    std::int64_t total_post_count = 0;
    std::int64_t listed_count = 0;
    bool verified = false;
    bool profile_url_present = false;
    std::vector<std::string> following;  // user ids this user follows
    std::vector<RawPost> history;        // latest posts, at most 50
};

inline constexpr std::size_t kMaxHistory = 50;
inline constexpr std::int64_t kRepostWindowSeconds = 86400;

// A repost of an original post within the 24-hour window, with the original
// present in the corpus. Sender is the original's author; recipient is the
// reposting user.
struct RepostEvent {
    std::string repost_id;
    std::string original_id;
    std::string sender_id;
    std::string recipient_id;
    std::int64_t repost_time = 0;
    std::string hashtag;
};

struct Instance {
    std::string instance_id;
    std::string post_id;       // the post whose repost decision is predicted
    std::string sender_id;     // author of that post
    std::string recipient_id;  // user deciding whether to repost
    std::int64_t event_time = 0;
    std::string hashtag;
    int label = 0;
};

struct Corpus {
    std::vector<RawPost> posts;
    std::vector<UserRecord> users;
    std::map<std::string, std::size_t> post_index;  // post_id -> posts index
    std::map<std::string, std::size_t> user_index;  // user_id -> users index
    // All posts by id, including user-history posts; values stay valid for
    // the corpus lifetime because posts/users never change after load.
    std::map<std::string, const RawPost*> all_posts;
    // Author id -> posts authored in the main stream (corpus order).
    std::map<std::string, std::vector<const RawPost*>> posts_by_author;
    std::vector<std::string> warnings;

    const RawPost* find_post(const std::string& id) const {
        auto it = all_posts.find(id);
        return it == all_posts.end() ? nullptr : it->second;
    }
    const UserRecord* find_user(const std::string& id) const {
        auto it = user_index.find(id);
        return it == user_index.end() ? nullptr : &users[it->second];
    }
    std::int64_t max_timestamp() const;
};

}  // namespace repostlab::core
