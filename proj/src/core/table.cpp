#include "repostlab/core/table.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "repostlab/util/strings.hpp"

namespace repostlab::core {

FeatureTable make_table(SchemaId schema) {
    FeatureTable t;
    t.schema_id = schema;
    t.feature_names = feature_dictionary(schema);
    return t;
}

FeatureTable FeatureTable::slice(SchemaId target) const {
    if (target == schema_id) return *this;
    if (schema_id != SchemaId::ALL)
        throw std::runtime_error("slice: table holds " + schema_name(schema_id) +
                                 ", cannot extract " + schema_name(target));
    const std::size_t off = schema_offset(target);
    const std::size_t len = schema_size(target);
    FeatureTable out = make_table(target);
    out.labels = labels;
    out.hashtags = hashtags;
    out.instance_ids = instance_ids;
    out.rows.reserve(rows.size());
    for (const auto& r : rows)
        out.rows.emplace_back(r.begin() + off, r.begin() + off + len);
    return out;
}

void write_csv(const FeatureTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    std::string header;
    for (const auto& n : table.feature_names) {
        header += n;
        header += ',';
    }
    header += "label,hashtag,instance_id\n";
    out << header;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& r = table.rows[i];
        if (r.size() != table.feature_names.size())
            throw std::runtime_error("row width mismatch at row " + std::to_string(i));
        std::string line;
        for (double v : r) {
            line += to_g17(v);
            line += ',';
        }
        line += std::to_string(table.labels[i]);
        line += ',';
        line += table.hashtags[i];
        line += ',';
        line += table.instance_ids[i];
        line += '\n';
        out << line;
    }
}

FeatureTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
    auto cols = split(line, ',');
    if (cols.size() < 4 || cols[cols.size() - 3] != "label" ||
        cols[cols.size() - 2] != "hashtag" || cols.back() != "instance_id")
        throw std::runtime_error(path + ": missing bookkeeping columns");
    const std::size_t n_feat = cols.size() - 3;

    FeatureTable t;
    t.feature_names.assign(cols.begin(), cols.begin() + n_feat);
    bool known_schema = false;
    for (SchemaId id : {SchemaId::M, SchemaId::UP, SchemaId::UHA, SchemaId::UHM,
                        SchemaId::U, SchemaId::ALL}) {
        if (t.feature_names == feature_dictionary(id)) {
            t.schema_id = id;
            known_schema = true;
            break;
        }
    }
    if (!known_schema)
        throw std::runtime_error(path + ": header does not match any feature dictionary");

    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto fields = split(line, ',');
        if (fields.size() != n_feat + 3)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected " + std::to_string(n_feat + 3) +
                                     " fields, got " + std::to_string(fields.size()));
        std::vector<double> row(n_feat);
        for (std::size_t i = 0; i < n_feat; ++i) {
            const auto& f = fields[i];
            if (f == "NaN")
                row[i] = std::nan("");
            else if (f == "Inf")
                row[i] = HUGE_VAL;
            else if (f == "-Inf")
                row[i] = -HUGE_VAL;
            else {
                char* end = nullptr;
                row[i] = std::strtod(f.c_str(), &end);
                if (end == f.c_str())
                    throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                             ": bad number '" + f + "'");
            }
        }
        t.rows.push_back(std::move(row));
        t.labels.push_back(std::stoi(fields[n_feat]));
        t.hashtags.push_back(fields[n_feat + 1]);
        t.instance_ids.push_back(fields[n_feat + 2]);
    }
    return t;
}

}  // namespace repostlab::core
