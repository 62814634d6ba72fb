#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "repostlab/learners/dmatrix.hpp"

namespace repostlab::learners {

struct GBDTParams {
    int max_depth = 8;
    double learning_rate = 0.3;
    int n_estimators = 100;
    double min_child_weight = 1.0;
    double subsample = 1.0;
    double scale_pos_weight = 1.0;
    double reg_lambda = 1.0;
    double gamma = 0.0;
    std::uint64_t seed = 0;
    int early_stopping_rounds = 10;
};

// feature < 0 marks a leaf; interior nodes route x < threshold to the left
// child and missing values to the default side.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    bool default_left = true;
    int left = -1;
    int right = -1;
    double weight = 0.0;
    double gain = 0.0;
};

struct Tree {
    std::vector<TreeNode> nodes;
    double predict(const std::vector<double>& row) const;
};

struct GBDTModel {
    GBDTParams params;
    double base_score = 0.0;
    std::vector<Tree> trees;
    std::vector<std::string> feature_names;
    std::uint64_t dictionary_hash = 0;
    bool constant = false;
    int best_iteration = -1;
    std::vector<double> train_loss;
    std::vector<double> val_loss;
};

// Gradient-boosted trees on the logistic objective, second-order splits with
// exact greedy enumeration and learned missing-value direction.  A training
// set with only one class collapses to a constant model at the clamped prior.
GBDTModel gbdt_train(const DMatrix& train, const GBDTParams& params,
                     const DMatrix* val = nullptr);

std::vector<double> gbdt_predict(const GBDTModel& model,
                                 const std::vector<std::vector<double>>& rows);
double gbdt_predict_one(const GBDTModel& model, const std::vector<double>& row);

// Total split gain per feature, normalized to sum 1.  Sorted by weight
// descending, name ascending on ties; empty when the model never split.
std::vector<std::pair<std::string, double>> feature_importance(const GBDTModel& model);

void write_gbdt_model(const GBDTModel& model, const std::string& path);
GBDTModel read_gbdt_model(const std::string& path);

}  // namespace repostlab::learners
