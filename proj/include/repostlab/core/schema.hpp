#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace repostlab::core {

enum class SchemaId { M, UP, UHA, UHM, U, ALL };

inline constexpr std::size_t kSizeM = 78;
inline constexpr std::size_t kSizeUP = 30;
inline constexpr std::size_t kSizeUHA = 38;
inline constexpr std::size_t kSizeUHM = 157;
inline constexpr std::size_t kSizeU = kSizeUP + kSizeUHA + kSizeUHM;
inline constexpr std::size_t kSizeAll = kSizeM + kSizeU;

std::string schema_name(SchemaId id);
SchemaId parse_schema(const std::string& name);  // throws on unknown name
std::size_t schema_size(SchemaId id);

// Ordered feature names for a schema. ALL is the concatenation
// M then U-P then U-HA then U-HM; U drops the leading M block.
const std::vector<std::string>& feature_dictionary(SchemaId id);

// Column offset of a schema's block inside the ALL vector.
std::size_t schema_offset(SchemaId id);

// Content hash of the ordered name list; embedded in model files so a model
// can refuse feature tables built against a different dictionary.
std::uint64_t dictionary_hash(SchemaId id);

struct FeatureVector {
    SchemaId schema_id = SchemaId::ALL;
    std::vector<double> values;
};

// Topic scheme labels, in feature-index order.
const std::vector<std::string>& topic_scheme_19();
const std::vector<std::string>& topic_scheme_6();
const std::vector<std::string>& emotion_labels();     // 7 entries, others last
const std::vector<std::string>& sentiment_labels();   // negative, neutral, positive

}  // namespace repostlab::core
