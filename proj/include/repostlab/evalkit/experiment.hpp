#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "repostlab/core/schema.hpp"
#include "repostlab/core/table.hpp"
#include "repostlab/datasets/splits.hpp"
#include "repostlab/learners/gbdt.hpp"
#include "repostlab/learners/mlp.hpp"

namespace repostlab::evalkit {

enum class LearnerKind { gbdt, mlp };

struct ModelSpec {
    std::string name;
    core::SchemaId schema = core::SchemaId::ALL;
    LearnerKind kind = LearnerKind::gbdt;
    learners::GBDTParams gbdt;
    learners::MlpParams mlp;
};

struct GroupStat {
    std::string group;
    double mu = 0.0;
    double sigma = 0.0;
    std::size_t folds = 0;
};

struct ModelReport {
    std::string name;
    std::vector<GroupStat> per_group;
    double overall_mu = 0.0;
    double overall_sigma = 0.0;
};

struct Comparison {
    std::string a;
    std::string b;
    double t_p = 0.0;
    double wilcoxon_p = 0.0;
};

struct ImportanceEntry {
    std::string feature;
    double weight = 0.0;
};

struct Prediction {
    std::string model;
    std::size_t fold = 0;
    std::string instance_id;
    int label = 0;
    double prob = 0.0;
};

struct EvalReport {
    std::string experiment;
    std::vector<ModelReport> models;
    std::vector<Comparison> comparisons;
    std::vector<ImportanceEntry> importance;
};

// Trains and scores every model on every fold of the plan.  Fold scores are
// threshold-0.5 F1 on the test rows, grouped by the fold's group tag; the
// overall figure mixes the per-group distributions.  Model pairs are compared
// on per-group means when the plan has at least two groups, otherwise on raw
// fold scores.  Importance comes from the first tree model in the list,
// retrained on the whole table; per-fold learner seeds are derived from the
// spec seed and the fold index.
EvalReport run_experiment(const core::FeatureTable& table, const datasets::SplitPlan& plan,
                          const std::vector<ModelSpec>& specs, const std::string& experiment,
                          std::vector<Prediction>* predictions = nullptr);

void write_report(const EvalReport& report, const std::string& path);
EvalReport read_report(const std::string& path);

// Aligned text table of per-group and overall scores.
std::string render_report(const EvalReport& report);

void write_predictions_csv(const std::vector<Prediction>& preds, const std::string& path);

}  // namespace repostlab::evalkit
