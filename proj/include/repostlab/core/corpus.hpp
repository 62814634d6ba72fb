#pragma once

#include <string>

#include "repostlab/core/types.hpp"

namespace repostlab::core {

// Loads a corpus from JSONL files. Malformed lines and duplicate ids throw
// with the offending line number or id; dangling references become warnings
// on the returned corpus. A user history longer than 50 posts is an
// invariant violation and throws.
Corpus load_corpus(const std::string& posts_path, const std::string& users_path);

// Canonical single-line JSON for one record, fixed key order. Loading a file
// of canonical lines and re-serializing reproduces it byte for byte.
std::string serialize_post(const RawPost& post);
std::string serialize_user(const UserRecord& user);

void write_posts_jsonl(const std::string& path, const std::vector<RawPost>& posts);
void write_users_jsonl(const std::string& path, const std::vector<UserRecord>& users);

}  // namespace repostlab::core
