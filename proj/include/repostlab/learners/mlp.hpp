#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "repostlab/learners/dmatrix.hpp"

namespace repostlab::learners {

struct MlpParams {
    std::vector<int> hidden{128, 128, 64};
    double learning_rate = 0.001;
    int batch_size = 40;
    int max_epochs = 200;
    int patience = 10;
    std::uint64_t seed = 0;
};

// Fully connected ReLU network with a two-way softmax head.  Layer l maps
// dims[l] -> dims[l+1]; weights are row-major (out x in).
struct MlpNet {
    std::vector<int> dims;
    std::vector<std::vector<double>> weights;
    std::vector<std::vector<double>> biases;
};

std::vector<double> mlp_forward(const MlpNet& net, const std::vector<double>& x);

// Mean cross-entropy over the batch and its analytic gradient, flattened as
// layer 0 weights, layer 0 biases, layer 1 weights, ...  Shared between the
// trainer and the finite-difference checks.
double mlp_loss_and_grads(const MlpNet& net, const std::vector<std::vector<double>>& inputs,
                          const std::vector<int>& labels, std::vector<double>& grads);

std::vector<double> mlp_flatten(const MlpNet& net);
void mlp_unflatten(MlpNet& net, const std::vector<double>& flat);

struct MlpModel {
    MlpNet net;
    MlpParams params;
    std::vector<std::string> feature_names;
    std::uint64_t dictionary_hash = 0;
    std::vector<double> impute_mean;
    std::vector<double> scale;
    int best_epoch = -1;
    std::vector<double> train_loss;
    std::vector<double> val_loss;
};

// Missing values are imputed with training means and flagged through appended
// presence indicators, so the network input is twice the raw feature width.
std::vector<double> mlp_prepare_row(const MlpModel& model, const std::vector<double>& raw);

MlpModel mlp_train(const DMatrix& train, const MlpParams& params, const DMatrix* val = nullptr);

std::vector<double> mlp_predict(const MlpModel& model,
                                const std::vector<std::vector<double>>& rows);
double mlp_predict_one(const MlpModel& model, const std::vector<double>& row);

void write_mlp_model(const MlpModel& model, const std::string& path);
MlpModel read_mlp_model(const std::string& path);

}  // namespace repostlab::learners
