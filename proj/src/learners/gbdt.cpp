#include "repostlab/learners/gbdt.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "json.hpp"
#include "repostlab/util/rng.hpp"

namespace repostlab::learners {

namespace {

constexpr double kProbClamp = 1e-6;
constexpr double kLogClamp = 1e-15;

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double logit(double p) { return std::log(p / (1.0 - p)); }

double leaf_weight(double g, double h, double lambda, double lr) {
    return -g / (h + lambda) * lr;
}

double split_term(double g, double h, double lambda) {
    return g * g / (h + lambda);
}

double weighted_logloss(const std::vector<double>& margin, const std::vector<int>& labels,
                        double spw) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < margin.size(); ++i) {
        double p = sigmoid(margin[i]);
        p = std::min(1.0 - kLogClamp, std::max(kLogClamp, p));
        double w = labels[i] == 1 ? spw : 1.0;
        num += w * (labels[i] == 1 ? -std::log(p) : -std::log(1.0 - p));
        den += w;
    }
    return num / den;
}

// Best split for one frontier node, updated feature by feature.
struct NodeBest {
    double gain = 0.0;
    int feature = -1;
    double threshold = 0.0;
    bool default_left = true;
};

struct FrontierNode {
    int node = -1;
    double g = 0.0;
    double h = 0.0;
    NodeBest best;
};

void check_matrix(const DMatrix& m, const char* what) {
    for (const auto& row : m.rows) {
        if (row.size() != m.feature_names.size()) {
            throw std::invalid_argument(std::string(what) + ": row width does not match feature names");
        }
    }
    for (int y : m.labels) {
        if (y != 0 && y != 1) {
            throw std::invalid_argument(std::string(what) + ": labels must be 0 or 1");
        }
    }
    if (m.rows.size() != m.labels.size()) {
        throw std::invalid_argument(std::string(what) + ": row/label count mismatch");
    }
}

}  // namespace

double Tree::predict(const std::vector<double>& row) const {
    int at = 0;
    while (nodes[at].feature >= 0) {
        const TreeNode& nd = nodes[at];
        double v = row[nd.feature];
        bool go_left = std::isnan(v) ? nd.default_left : (v < nd.threshold);
        at = go_left ? nd.left : nd.right;
    }
    return nodes[at].weight;
}

GBDTModel gbdt_train(const DMatrix& train, const GBDTParams& params, const DMatrix* val) {
    check_matrix(train, "gbdt_train");
    if (val != nullptr) {
        check_matrix(*val, "gbdt_train validation");
        if (val->feature_names != train.feature_names) {
            throw std::invalid_argument("gbdt_train: validation feature names differ from training");
        }
    }
    const std::size_t n = train.rows.size();
    const std::size_t m = train.feature_names.size();
    if (n == 0) throw std::invalid_argument("gbdt_train: empty training set");
    if (params.max_depth < 1 || params.n_estimators < 1) {
        throw std::invalid_argument("gbdt_train: max_depth and n_estimators must be positive");
    }
    if (!(params.subsample > 0.0 && params.subsample <= 1.0)) {
        throw std::invalid_argument("gbdt_train: subsample must be in (0, 1]");
    }

    GBDTModel model;
    model.params = params;
    model.feature_names = train.feature_names;
    model.dictionary_hash = train.dictionary_hash;

    std::size_t n_pos = 0;
    for (int y : train.labels) n_pos += static_cast<std::size_t>(y);
    double prior = static_cast<double>(n_pos) / static_cast<double>(n);
    prior = std::min(1.0 - kProbClamp, std::max(kProbClamp, prior));
    model.base_score = logit(prior);
    if (n_pos == 0 || n_pos == n) {
        model.constant = true;
        return model;
    }

    // Each feature's rows with a present value, sorted by (value, row index).
    std::vector<std::vector<int>> sorted_col(m);
    for (std::size_t j = 0; j < m; ++j) {
        auto& col = sorted_col[j];
        col.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isnan(train.rows[i][j])) col.push_back(static_cast<int>(i));
        }
        std::sort(col.begin(), col.end(), [&](int a, int b) {
            double va = train.rows[a][j], vb = train.rows[b][j];
            if (va != vb) return va < vb;
            return a < b;
        });
    }

    std::vector<double> margin(n, model.base_score);
    std::vector<double> val_margin;
    if (val != nullptr) val_margin.assign(val->rows.size(), model.base_score);

    std::vector<double> g(n), h(n);
    std::vector<int> node_of_row(n);
    std::vector<int> slot_of_node;
    std::vector<int> sample_order(n);
    for (std::size_t i = 0; i < n; ++i) sample_order[i] = static_cast<int>(i);

    Rng base_rng = make_seed_rng(params.seed);
    const double spw = params.scale_pos_weight;
    double best_val = std::numeric_limits<double>::infinity();
    int best_round = -1;

    for (int round = 0; round < params.n_estimators; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            double p = sigmoid(margin[i]);
            double w = train.labels[i] == 1 ? spw : 1.0;
            g[i] = (p - static_cast<double>(train.labels[i])) * w;
            h[i] = p * (1.0 - p) * w;
        }

        std::fill(node_of_row.begin(), node_of_row.end(), -1);
        double root_g = 0.0, root_h = 0.0;
        if (params.subsample < 1.0) {
            Rng round_rng = base_rng.derive(static_cast<std::uint64_t>(round));
            round_rng.shuffle(sample_order);
            auto take = static_cast<std::size_t>(params.subsample * static_cast<double>(n));
            take = std::max<std::size_t>(1, std::min(take, n));
            for (std::size_t k = 0; k < take; ++k) {
                int r = sample_order[k];
                node_of_row[r] = 0;
                root_g += g[r];
                root_h += h[r];
            }
        } else {
            for (std::size_t i = 0; i < n; ++i) {
                node_of_row[i] = 0;
                root_g += g[i];
                root_h += h[i];
            }
        }

        Tree tree;
        tree.nodes.emplace_back();
        slot_of_node.assign(1, 0);
        std::vector<FrontierNode> frontier(1);
        frontier[0].node = 0;
        frontier[0].g = root_g;
        frontier[0].h = root_h;

        std::vector<double> gnm, hnm, gl, hl, prev;
        std::vector<char> has_prev;
        for (int depth = 0; depth < params.max_depth && !frontier.empty(); ++depth) {
            const std::size_t fs = frontier.size();
            for (std::size_t j = 0; j < m; ++j) {
                const auto& col = sorted_col[j];
                gnm.assign(fs, 0.0);
                hnm.assign(fs, 0.0);
                for (int r : col) {
                    int nd = node_of_row[r];
                    if (nd < 0) continue;
                    int s = slot_of_node[nd];
                    if (s < 0) continue;
                    gnm[s] += g[r];
                    hnm[s] += h[r];
                }
                gl.assign(fs, 0.0);
                hl.assign(fs, 0.0);
                prev.assign(fs, 0.0);
                has_prev.assign(fs, 0);
                for (int r : col) {
                    int nd = node_of_row[r];
                    int s = nd >= 0 ? slot_of_node[nd] : -1;
                    if (s < 0) continue;
                    double v = train.rows[r][static_cast<std::size_t>(j)];
                    if (has_prev[s] && v > prev[s]) {
                        FrontierNode& fn = frontier[s];
                        double thr = 0.5 * (prev[s] + v);
                        double parent = split_term(fn.g, fn.h, params.reg_lambda);
                        double gmiss = fn.g - gnm[s];
                        double hmiss = fn.h - hnm[s];
                        // Missing goes left, then missing goes right; strict
                        // improvement keeps the earlier option on ties.
                        for (int dir = 0; dir < 2; ++dir) {
                            double lg = dir == 0 ? gl[s] + gmiss : gl[s];
                            double lh = dir == 0 ? hl[s] + hmiss : hl[s];
                            double rg = fn.g - lg;
                            double rh = fn.h - lh;
                            if (lh < params.min_child_weight || rh < params.min_child_weight) continue;
                            double gain = 0.5 * (split_term(lg, lh, params.reg_lambda) +
                                                 split_term(rg, rh, params.reg_lambda) - parent) -
                                          params.gamma;
                            if (gain > fn.best.gain) {
                                fn.best.gain = gain;
                                fn.best.feature = static_cast<int>(j);
                                fn.best.threshold = thr;
                                fn.best.default_left = dir == 0;
                            }
                        }
                    }
                    gl[s] += g[r];
                    hl[s] += h[r];
                    prev[s] = v;
                    has_prev[s] = 1;
                }
            }

            std::vector<FrontierNode> next;
            for (auto& fn : frontier) {
                TreeNode& nd = tree.nodes[static_cast<std::size_t>(fn.node)];
                if (fn.best.feature >= 0 && fn.best.gain > 0.0) {
                    nd.feature = fn.best.feature;
                    nd.threshold = fn.best.threshold;
                    nd.default_left = fn.best.default_left;
                    nd.gain = fn.best.gain;
                    nd.left = static_cast<int>(tree.nodes.size());
                    nd.right = nd.left + 1;
                    tree.nodes.emplace_back();
                    tree.nodes.emplace_back();
                    FrontierNode lc, rc;
                    lc.node = nd.left;
                    rc.node = nd.right;
                    next.push_back(lc);
                    next.push_back(rc);
                } else {
                    nd.weight = leaf_weight(fn.g, fn.h, params.reg_lambda, params.learning_rate);
                }
            }
            slot_of_node.assign(tree.nodes.size(), -1);
            for (std::size_t s = 0; s < next.size(); ++s) slot_of_node[next[s].node] = static_cast<int>(s);
            for (std::size_t i = 0; i < n; ++i) {
                int nd = node_of_row[i];
                if (nd < 0) continue;
                const TreeNode& tn = tree.nodes[static_cast<std::size_t>(nd)];
                if (tn.feature < 0) {
                    node_of_row[i] = -1;
                    continue;
                }
                double v = train.rows[i][static_cast<std::size_t>(tn.feature)];
                bool go_left = std::isnan(v) ? tn.default_left : (v < tn.threshold);
                int child = go_left ? tn.left : tn.right;
                node_of_row[i] = child;
                FrontierNode& fn = next[static_cast<std::size_t>(slot_of_node[child])];
                fn.g += g[i];
                fn.h += h[i];
            }
            frontier = std::move(next);
        }
        for (auto& fn : frontier) {
            tree.nodes[static_cast<std::size_t>(fn.node)].weight =
                leaf_weight(fn.g, fn.h, params.reg_lambda, params.learning_rate);
        }

        for (std::size_t i = 0; i < n; ++i) margin[i] += tree.predict(train.rows[i]);
        model.trees.push_back(std::move(tree));
        model.train_loss.push_back(weighted_logloss(margin, train.labels, spw));

        if (val != nullptr) {
            for (std::size_t i = 0; i < val->rows.size(); ++i) {
                val_margin[i] += model.trees.back().predict(val->rows[i]);
            }
            double vl = weighted_logloss(val_margin, val->labels, spw);
            model.val_loss.push_back(vl);
            if (vl < best_val) {
                best_val = vl;
                best_round = round;
            }
            if (params.early_stopping_rounds > 0 && round - best_round >= params.early_stopping_rounds) {
                break;
            }
        }
    }

    if (val != nullptr && best_round >= 0) {
        model.trees.resize(static_cast<std::size_t>(best_round) + 1);
        model.best_iteration = best_round;
    } else {
        model.best_iteration = static_cast<int>(model.trees.size()) - 1;
    }
    return model;
}

double gbdt_predict_one(const GBDTModel& model, const std::vector<double>& row) {
    if (row.size() != model.feature_names.size()) {
        throw std::invalid_argument("gbdt_predict: row width does not match the model's features");
    }
    double margin = model.base_score;
    for (const auto& tree : model.trees) margin += tree.predict(row);
    return sigmoid(margin);
}

std::vector<double> gbdt_predict(const GBDTModel& model,
                                 const std::vector<std::vector<double>>& rows) {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(gbdt_predict_one(model, row));
    return out;
}

std::vector<std::pair<std::string, double>> feature_importance(const GBDTModel& model) {
    std::vector<double> gain(model.feature_names.size(), 0.0);
    double total = 0.0;
    for (const auto& tree : model.trees) {
        for (const auto& nd : tree.nodes) {
            if (nd.feature >= 0) {
                gain[static_cast<std::size_t>(nd.feature)] += nd.gain;
                total += nd.gain;
            }
        }
    }
    std::vector<std::pair<std::string, double>> out;
    if (total <= 0.0) return out;
    for (std::size_t j = 0; j < gain.size(); ++j) {
        if (gain[j] > 0.0) out.emplace_back(model.feature_names[j], gain[j] / total);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return out;
}

void write_gbdt_model(const GBDTModel& model, const std::string& path) {
    nlohmann::ordered_json j;
    j["format"] = "repostlab-gbdt";
    j["version"] = 1;
    j["dictionary_hash"] = hash_hex(model.dictionary_hash);
    j["feature_names"] = model.feature_names;
    j["params"] = {{"max_depth", model.params.max_depth},
                   {"learning_rate", model.params.learning_rate},
                   {"n_estimators", model.params.n_estimators},
                   {"min_child_weight", model.params.min_child_weight},
                   {"subsample", model.params.subsample},
                   {"scale_pos_weight", model.params.scale_pos_weight},
                   {"reg_lambda", model.params.reg_lambda},
                   {"gamma", model.params.gamma},
                   {"seed", model.params.seed},
                   {"early_stopping_rounds", model.params.early_stopping_rounds}};
    j["base_score"] = model.base_score;
    j["constant"] = model.constant;
    j["best_iteration"] = model.best_iteration;
    nlohmann::ordered_json trees = nlohmann::ordered_json::array();
    for (const auto& tree : model.trees) {
        nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
        for (const auto& nd : tree.nodes) {
            nodes.push_back({{"feature", nd.feature},
                             {"threshold", nd.threshold},
                             {"default_left", nd.default_left},
                             {"left", nd.left},
                             {"right", nd.right},
                             {"weight", nd.weight},
                             {"gain", nd.gain}});
        }
        trees.push_back({{"nodes", std::move(nodes)}});
    }
    j["trees"] = std::move(trees);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write model file: " + path);
    out << j.dump(2) << '\n';
}

GBDTModel read_gbdt_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read model file: " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.at("format").get<std::string>() != "repostlab-gbdt" || j.at("version").get<int>() != 1) {
        throw std::runtime_error("unrecognized model format in " + path);
    }
    GBDTModel model;
    const auto& p = j.at("params");
    model.params.max_depth = p.at("max_depth").get<int>();
    model.params.learning_rate = p.at("learning_rate").get<double>();
    model.params.n_estimators = p.at("n_estimators").get<int>();
    model.params.min_child_weight = p.at("min_child_weight").get<double>();
    model.params.subsample = p.at("subsample").get<double>();
    model.params.scale_pos_weight = p.at("scale_pos_weight").get<double>();
    model.params.reg_lambda = p.at("reg_lambda").get<double>();
    model.params.gamma = p.at("gamma").get<double>();
    model.params.seed = p.at("seed").get<std::uint64_t>();
    model.params.early_stopping_rounds = p.at("early_stopping_rounds").get<int>();
    model.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    model.dictionary_hash = names_hash(model.feature_names);
    std::string stored = j.at("dictionary_hash").get<std::string>();
    if (stored != hash_hex(model.dictionary_hash)) {
        throw std::runtime_error("model dictionary hash does not match its feature names: " + path);
    }
    model.base_score = j.at("base_score").get<double>();
    model.constant = j.at("constant").get<bool>();
    model.best_iteration = j.at("best_iteration").get<int>();
    for (const auto& tj : j.at("trees")) {
        Tree tree;
        for (const auto& nj : tj.at("nodes")) {
            TreeNode nd;
            nd.feature = nj.at("feature").get<int>();
            nd.threshold = nj.at("threshold").get<double>();
            nd.default_left = nj.at("default_left").get<bool>();
            nd.left = nj.at("left").get<int>();
            nd.right = nj.at("right").get<int>();
            nd.weight = nj.at("weight").get<double>();
            nd.gain = nj.at("gain").get<double>();
            tree.nodes.push_back(nd);
        }
        model.trees.push_back(std::move(tree));
    }
    return model;
}

}  // namespace repostlab::learners
