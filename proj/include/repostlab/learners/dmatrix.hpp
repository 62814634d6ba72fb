#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "repostlab/core/table.hpp"
#include "repostlab/util/hashing.hpp"

namespace repostlab::learners {

// Dense row-major training matrix; NaN marks missing values.
struct DMatrix {
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    std::vector<std::string> feature_names;
    std::uint64_t dictionary_hash = 0;
};

// Same formula as the canonical schema dictionary hash, usable for ad-hoc
// feature sets (bag-of-words columns and the like).
inline std::uint64_t names_hash(const std::vector<std::string>& names) {
    std::uint64_t h = kFnvOffset;
    for (const auto& n : names) {
        h = fnv1a64(n, h);
        h = fnv1a64("\n", h);
    }
    return h;
}

inline DMatrix from_table(const core::FeatureTable& t) {
    DMatrix m;
    m.rows = t.rows;
    m.labels = t.labels;
    m.feature_names = t.feature_names;
    m.dictionary_hash = names_hash(t.feature_names);
    return m;
}

inline DMatrix subset(const DMatrix& m, const std::vector<std::size_t>& idx) {
    DMatrix out;
    out.feature_names = m.feature_names;
    out.dictionary_hash = m.dictionary_hash;
    out.rows.reserve(idx.size());
    out.labels.reserve(idx.size());
    for (auto i : idx) {
        out.rows.push_back(m.rows[i]);
        out.labels.push_back(m.labels[i]);
    }
    return out;
}

}  // namespace repostlab::learners
