#include "repostlab/learners/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "json.hpp"
#include "repostlab/util/base64.hpp"
#include "repostlab/util/rng.hpp"

namespace repostlab::learners {

namespace {

constexpr double kLogClamp = 1e-15;
constexpr double kAdamBeta1 = 0.9;
constexpr double kAdamBeta2 = 0.999;
constexpr double kAdamEps = 1e-8;

std::size_t layer_count(const MlpNet& net) { return net.weights.size(); }

std::size_t flat_size(const MlpNet& net) {
    std::size_t total = 0;
    for (std::size_t l = 0; l < layer_count(net); ++l) {
        total += net.weights[l].size() + net.biases[l].size();
    }
    return total;
}

void softmax_in_place(std::vector<double>& z) {
    double mx = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (double& v : z) {
        v = std::exp(v - mx);
        sum += v;
    }
    for (double& v : z) v /= sum;
}

// Forward pass keeping every layer's activation; acts[0] is the input and
// acts.back() holds softmax probabilities.
void forward_all(const MlpNet& net, const std::vector<double>& x,
                 std::vector<std::vector<double>>& acts) {
    const std::size_t layers = layer_count(net);
    acts.assign(layers + 1, {});
    acts[0] = x;
    for (std::size_t l = 0; l < layers; ++l) {
        const auto& w = net.weights[l];
        const auto& b = net.biases[l];
        const auto& in = acts[l];
        const std::size_t n_out = b.size();
        const std::size_t n_in = in.size();
        auto& out = acts[l + 1];
        out.assign(n_out, 0.0);
        for (std::size_t o = 0; o < n_out; ++o) {
            double z = b[o];
            const double* row = &w[o * n_in];
            for (std::size_t i = 0; i < n_in; ++i) z += row[i] * in[i];
            out[o] = z;
        }
        if (l != layers - 1) {
            for (double& v : out) v = std::max(0.0, v);
        }
    }
    softmax_in_place(acts[layers]);
}

void check_matrix(const DMatrix& m, const char* what) {
    if (m.rows.size() != m.labels.size()) {
        throw std::invalid_argument(std::string(what) + ": row/label count mismatch");
    }
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
}

double mean_ce(const MlpNet& net, const std::vector<std::vector<double>>& inputs,
               const std::vector<int>& labels) {
    std::vector<std::vector<double>> acts;
    double loss = 0.0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        forward_all(net, inputs[i], acts);
        double p = acts.back()[static_cast<std::size_t>(labels[i])];
        loss += -std::log(std::max(p, kLogClamp));
    }
    return loss / static_cast<double>(inputs.size());
}

}  // namespace

std::vector<double> mlp_forward(const MlpNet& net, const std::vector<double>& x) {
    std::vector<std::vector<double>> acts;
    forward_all(net, x, acts);
    return acts.back();
}

double mlp_loss_and_grads(const MlpNet& net, const std::vector<std::vector<double>>& inputs,
                          const std::vector<int>& labels, std::vector<double>& grads) {
    if (inputs.empty() || inputs.size() != labels.size()) {
        throw std::invalid_argument("mlp_loss_and_grads: empty batch or size mismatch");
    }
    const std::size_t layers = layer_count(net);
    grads.assign(flat_size(net), 0.0);
    std::vector<std::size_t> offsets(layers);
    std::size_t at = 0;
    for (std::size_t l = 0; l < layers; ++l) {
        offsets[l] = at;
        at += net.weights[l].size() + net.biases[l].size();
    }

    double loss = 0.0;
    std::vector<std::vector<double>> acts;
    std::vector<double> delta, next_delta;
    for (std::size_t s = 0; s < inputs.size(); ++s) {
        forward_all(net, inputs[s], acts);
        const auto& probs = acts[layers];
        loss += -std::log(std::max(probs[static_cast<std::size_t>(labels[s])], kLogClamp));
        delta = probs;
        delta[static_cast<std::size_t>(labels[s])] -= 1.0;
        for (std::size_t li = layers; li-- > 0;) {
            const auto& in = acts[li];
            const std::size_t n_out = net.biases[li].size();
            const std::size_t n_in = in.size();
            double* gw = &grads[offsets[li]];
            double* gb = gw + n_out * n_in;
            for (std::size_t o = 0; o < n_out; ++o) {
                double d = delta[o];
                double* grow = gw + o * n_in;
                for (std::size_t i = 0; i < n_in; ++i) grow[i] += d * in[i];
                gb[o] += d;
            }
            if (li == 0) break;
            next_delta.assign(n_in, 0.0);
            const auto& w = net.weights[li];
            for (std::size_t o = 0; o < n_out; ++o) {
                double d = delta[o];
                const double* row = &w[o * n_in];
                for (std::size_t i = 0; i < n_in; ++i) next_delta[i] += d * row[i];
            }
            for (std::size_t i = 0; i < n_in; ++i) {
                if (in[i] <= 0.0) next_delta[i] = 0.0;
            }
            delta = next_delta;
        }
    }
    const double inv = 1.0 / static_cast<double>(inputs.size());
    for (double& gv : grads) gv *= inv;
    return loss * inv;
}

std::vector<double> mlp_flatten(const MlpNet& net) {
    std::vector<double> flat;
    flat.reserve(flat_size(net));
    for (std::size_t l = 0; l < layer_count(net); ++l) {
        flat.insert(flat.end(), net.weights[l].begin(), net.weights[l].end());
        flat.insert(flat.end(), net.biases[l].begin(), net.biases[l].end());
    }
    return flat;
}

void mlp_unflatten(MlpNet& net, const std::vector<double>& flat) {
    if (flat.size() != flat_size(net)) {
        throw std::invalid_argument("mlp_unflatten: size mismatch");
    }
    std::size_t at = 0;
    for (std::size_t l = 0; l < layer_count(net); ++l) {
        std::copy_n(flat.begin() + static_cast<std::ptrdiff_t>(at), net.weights[l].size(),
                    net.weights[l].begin());
        at += net.weights[l].size();
        std::copy_n(flat.begin() + static_cast<std::ptrdiff_t>(at), net.biases[l].size(),
                    net.biases[l].begin());
        at += net.biases[l].size();
    }
}

std::vector<double> mlp_prepare_row(const MlpModel& model, const std::vector<double>& raw) {
    const std::size_t m = model.impute_mean.size();
    if (raw.size() != m) {
        throw std::invalid_argument("mlp_prepare_row: row width does not match the model's features");
    }
    std::vector<double> out(2 * m);
    for (std::size_t j = 0; j < m; ++j) {
        bool missing = std::isnan(raw[j]);
        double v = missing ? model.impute_mean[j] : raw[j];
        out[j] = (v - model.impute_mean[j]) / model.scale[j];
        out[m + j] = missing ? 1.0 : 0.0;
    }
    return out;
}

MlpModel mlp_train(const DMatrix& train, const MlpParams& params, const DMatrix* val) {
    check_matrix(train, "mlp_train");
    if (val != nullptr) {
        check_matrix(*val, "mlp_train validation");
        if (val->feature_names != train.feature_names) {
            throw std::invalid_argument("mlp_train: validation feature names differ from training");
        }
    }
    const std::size_t n = train.rows.size();
    const std::size_t m = train.feature_names.size();
    if (n == 0 || m == 0) throw std::invalid_argument("mlp_train: empty training set");
    if (params.batch_size < 1 || params.max_epochs < 1) {
        throw std::invalid_argument("mlp_train: batch_size and max_epochs must be positive");
    }

    MlpModel model;
    model.params = params;
    model.feature_names = train.feature_names;
    model.dictionary_hash = train.dictionary_hash;
    model.impute_mean.assign(m, 0.0);
    model.scale.assign(m, 1.0);
    for (std::size_t j = 0; j < m; ++j) {
        double sum = 0.0, sq = 0.0;
        std::size_t cnt = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double v = train.rows[i][j];
            if (std::isnan(v)) continue;
            sum += v;
            sq += v * v;
            ++cnt;
        }
        if (cnt == 0) continue;
        double mean = sum / static_cast<double>(cnt);
        double var = sq / static_cast<double>(cnt) - mean * mean;
        model.impute_mean[j] = mean;
        model.scale[j] = var > 0.0 ? std::sqrt(var) : 1.0;
    }

    std::vector<std::vector<double>> inputs(n);
    for (std::size_t i = 0; i < n; ++i) inputs[i] = mlp_prepare_row(model, train.rows[i]);
    std::vector<std::vector<double>> val_inputs;
    if (val != nullptr) {
        val_inputs.resize(val->rows.size());
        for (std::size_t i = 0; i < val->rows.size(); ++i) {
            val_inputs[i] = mlp_prepare_row(model, val->rows[i]);
        }
    }

    MlpNet& net = model.net;
    net.dims.clear();
    net.dims.push_back(static_cast<int>(2 * m));
    for (int hwidth : params.hidden) {
        if (hwidth < 1) throw std::invalid_argument("mlp_train: hidden widths must be positive");
        net.dims.push_back(hwidth);
    }
    net.dims.push_back(2);
    const std::size_t layers = net.dims.size() - 1;
    net.weights.resize(layers);
    net.biases.resize(layers);
    Rng base = make_seed_rng(params.seed);
    Rng init_rng = base.derive(1);
    for (std::size_t l = 0; l < layers; ++l) {
        const auto n_in = static_cast<std::size_t>(net.dims[l]);
        const auto n_out = static_cast<std::size_t>(net.dims[l + 1]);
        net.weights[l].assign(n_out * n_in, 0.0);
        net.biases[l].assign(n_out, 0.0);
        if (l + 1 < layers) {
            double sd = std::sqrt(2.0 / static_cast<double>(n_in));
            for (double& w : net.weights[l]) w = init_rng.normal(0.0, sd);
        }
        // The last layer stays zero so an untrained net answers (0.5, 0.5).
    }

    std::vector<double> flat = mlp_flatten(net);
    std::vector<double> adam_m(flat.size(), 0.0), adam_v(flat.size(), 0.0);
    std::vector<double> grads;
    std::vector<double> best_flat;
    double best_val = std::numeric_limits<double>::infinity();
    long long step = 0;

    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    for (int epoch = 0; epoch < params.max_epochs; ++epoch) {
        Rng epoch_rng = base.derive(100 + static_cast<std::uint64_t>(epoch));
        epoch_rng.shuffle(perm);
        double epoch_loss = 0.0;
        std::size_t seen = 0;
        for (std::size_t start = 0; start < n; start += static_cast<std::size_t>(params.batch_size)) {
            std::size_t stop = std::min(n, start + static_cast<std::size_t>(params.batch_size));
            std::vector<std::vector<double>> bx;
            std::vector<int> by;
            bx.reserve(stop - start);
            by.reserve(stop - start);
            for (std::size_t k = start; k < stop; ++k) {
                bx.push_back(inputs[perm[k]]);
                by.push_back(train.labels[perm[k]]);
            }
            double loss = mlp_loss_and_grads(net, bx, by, grads);
            if (!std::isfinite(loss)) {
                throw std::runtime_error("mlp_train: non-finite loss at epoch " +
                                         std::to_string(epoch) + ", batch " +
                                         std::to_string(start / static_cast<std::size_t>(params.batch_size)));
            }
            epoch_loss += loss * static_cast<double>(stop - start);
            seen += stop - start;
            ++step;
            double bc1 = 1.0 - std::pow(kAdamBeta1, static_cast<double>(step));
            double bc2 = 1.0 - std::pow(kAdamBeta2, static_cast<double>(step));
            for (std::size_t p = 0; p < flat.size(); ++p) {
                adam_m[p] = kAdamBeta1 * adam_m[p] + (1.0 - kAdamBeta1) * grads[p];
                adam_v[p] = kAdamBeta2 * adam_v[p] + (1.0 - kAdamBeta2) * grads[p] * grads[p];
                double mhat = adam_m[p] / bc1;
                double vhat = adam_v[p] / bc2;
                flat[p] -= params.learning_rate * mhat / (std::sqrt(vhat) + kAdamEps);
            }
            mlp_unflatten(net, flat);
        }
        model.train_loss.push_back(epoch_loss / static_cast<double>(seen));

        if (val != nullptr && !val_inputs.empty()) {
            double vl = mean_ce(net, val_inputs, val->labels);
            model.val_loss.push_back(vl);
            if (vl < best_val) {
                best_val = vl;
                model.best_epoch = epoch;
                best_flat = flat;
            } else if (params.patience > 0 && epoch - model.best_epoch >= params.patience) {
                break;
            }
        } else {
            model.best_epoch = epoch;
        }
    }
    if (!best_flat.empty()) mlp_unflatten(net, best_flat);
    return model;
}

double mlp_predict_one(const MlpModel& model, const std::vector<double>& row) {
    return mlp_forward(model.net, mlp_prepare_row(model, row))[1];
}

std::vector<double> mlp_predict(const MlpModel& model,
                                const std::vector<std::vector<double>>& rows) {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(mlp_predict_one(model, row));
    return out;
}

void write_mlp_model(const MlpModel& model, const std::string& path) {
    nlohmann::ordered_json j;
    j["format"] = "repostlab-mlp";
    j["version"] = 1;
    j["dictionary_hash"] = hash_hex(model.dictionary_hash);
    j["feature_names"] = model.feature_names;
    j["params"] = {{"hidden", model.params.hidden},
                   {"learning_rate", model.params.learning_rate},
                   {"batch_size", model.params.batch_size},
                   {"max_epochs", model.params.max_epochs},
                   {"patience", model.params.patience},
                   {"seed", model.params.seed}};
    j["dims"] = model.net.dims;
    j["impute_mean"] = base64_encode_doubles(model.impute_mean);
    j["scale"] = base64_encode_doubles(model.scale);
    j["best_epoch"] = model.best_epoch;
    nlohmann::ordered_json layers = nlohmann::ordered_json::array();
    for (std::size_t l = 0; l < model.net.weights.size(); ++l) {
        layers.push_back({{"weights", base64_encode_doubles(model.net.weights[l])},
                          {"biases", base64_encode_doubles(model.net.biases[l])}});
    }
    j["layers"] = std::move(layers);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write model file: " + path);
    out << j.dump(2) << '\n';
}

MlpModel read_mlp_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read model file: " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    if (j.at("format").get<std::string>() != "repostlab-mlp" || j.at("version").get<int>() != 1) {
        throw std::runtime_error("unrecognized model format in " + path);
    }
    MlpModel model;
    const auto& p = j.at("params");
    model.params.hidden = p.at("hidden").get<std::vector<int>>();
    model.params.learning_rate = p.at("learning_rate").get<double>();
    model.params.batch_size = p.at("batch_size").get<int>();
    model.params.max_epochs = p.at("max_epochs").get<int>();
    model.params.patience = p.at("patience").get<int>();
    model.params.seed = p.at("seed").get<std::uint64_t>();
    model.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    model.dictionary_hash = names_hash(model.feature_names);
    if (j.at("dictionary_hash").get<std::string>() != hash_hex(model.dictionary_hash)) {
        throw std::runtime_error("model dictionary hash does not match its feature names: " + path);
    }
    model.net.dims = j.at("dims").get<std::vector<int>>();
    model.impute_mean = base64_decode_doubles(j.at("impute_mean").get<std::string>());
    model.scale = base64_decode_doubles(j.at("scale").get<std::string>());
    model.best_epoch = j.at("best_epoch").get<int>();
    const auto& layers = j.at("layers");
    if (model.net.dims.size() != layers.size() + 1) {
        throw std::runtime_error("model layer count does not match dims: " + path);
    }
    model.net.weights.resize(layers.size());
    model.net.biases.resize(layers.size());
    for (std::size_t l = 0; l < layers.size(); ++l) {
        model.net.weights[l] = base64_decode_doubles(layers[l].at("weights").get<std::string>());
        model.net.biases[l] = base64_decode_doubles(layers[l].at("biases").get<std::string>());
        auto n_in = static_cast<std::size_t>(model.net.dims[l]);
        auto n_out = static_cast<std::size_t>(model.net.dims[l + 1]);
        if (model.net.weights[l].size() != n_in * n_out || model.net.biases[l].size() != n_out) {
            throw std::runtime_error("model layer shape mismatch: " + path);
        }
    }
    if (model.impute_mean.size() != model.feature_names.size() ||
        model.scale.size() != model.feature_names.size()) {
        throw std::runtime_error("model preprocessing width mismatch: " + path);
    }
    return model;
}

}  // namespace repostlab::learners
