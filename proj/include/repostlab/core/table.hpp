#pragma once

#include <string>
#include <vector>

#include "repostlab/core/schema.hpp"

namespace repostlab::core {

// A dense feature table with one row per instance. Columns follow
// feature_dictionary(schema); bookkeeping (label, hashtag, instance id) is
// carried alongside and written as the trailing CSV columns.
struct FeatureTable {
    SchemaId schema_id = SchemaId::ALL;
    std::vector<std::string> feature_names;
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    std::vector<std::string> hashtags;
    std::vector<std::string> instance_ids;

    std::size_t n_rows() const { return rows.size(); }
    std::size_t n_cols() const { return feature_names.size(); }

    // Column-sliced copy holding only the named sub-schema. Valid when this
    // table holds ALL (any slice) or already holds the requested schema.
    FeatureTable slice(SchemaId target) const;
};

FeatureTable make_table(SchemaId schema);

void write_csv(const FeatureTable& table, const std::string& path);
FeatureTable read_csv(const std::string& path);

}  // namespace repostlab::core
