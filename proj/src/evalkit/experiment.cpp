#include "repostlab/evalkit/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

#include "json.hpp"
#include "repostlab/evalkit/metrics.hpp"
#include "repostlab/evalkit/stats.hpp"
#include "repostlab/util/rng.hpp"

namespace repostlab::evalkit {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::vector<std::size_t> resolve_rows(const std::vector<std::string>& ids,
                                      const std::map<std::string, std::size_t>& index) {
    std::vector<std::size_t> out;
    out.reserve(ids.size());
    for (const auto& id : ids) {
        auto it = index.find(id);
        if (it == index.end()) {
            throw std::runtime_error("split plan references unknown instance id: " + id);
        }
        out.push_back(it->second);
    }
    return out;
}

struct FoldData {
    learners::DMatrix train;
    learners::DMatrix val;
    learners::DMatrix test;
    std::vector<std::string> test_ids;
};

FoldData cut_fold(const learners::DMatrix& full, const datasets::Fold& fold,
                  const std::map<std::string, std::size_t>& index) {
    FoldData fd;
    fd.train = learners::subset(full, resolve_rows(fold.train, index));
    if (!fold.val.empty()) fd.val = learners::subset(full, resolve_rows(fold.val, index));
    fd.test = learners::subset(full, resolve_rows(fold.test, index));
    fd.test_ids = fold.test;
    return fd;
}

double run_one(const ModelSpec& spec, std::size_t fold_index, const FoldData& fd,
               std::vector<double>& probs) {
    if (spec.kind == LearnerKind::gbdt) {
        learners::GBDTParams p = spec.gbdt;
        p.seed = make_seed_rng(spec.gbdt.seed).derive(fold_index).seed();
        const learners::DMatrix* val = fd.val.rows.empty() ? nullptr : &fd.val;
        auto model = learners::gbdt_train(fd.train, p, val);
        probs = learners::gbdt_predict(model, fd.test.rows);
    } else {
        learners::MlpParams p = spec.mlp;
        p.seed = make_seed_rng(spec.mlp.seed).derive(fold_index).seed();
        const learners::DMatrix* val = fd.val.rows.empty() ? nullptr : &fd.val;
        auto model = learners::mlp_train(fd.train, p, val);
        probs = learners::mlp_predict(model, fd.test.rows);
    }
    return f1(fd.test.labels, threshold_labels(probs));
}

nlohmann::ordered_json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

double null_or_double(const nlohmann::json& j) {
    if (j.is_null()) return kNan;
    return j.get<double>();
}

}  // namespace

EvalReport run_experiment(const core::FeatureTable& table, const datasets::SplitPlan& plan,
                          const std::vector<ModelSpec>& specs, const std::string& experiment,
                          std::vector<Prediction>* predictions) {
    if (specs.empty()) throw std::invalid_argument("run_experiment: no models");
    if (plan.folds.empty()) throw std::invalid_argument("run_experiment: empty split plan");

    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < table.instance_ids.size(); ++i) {
        index[table.instance_ids[i]] = i;
    }

    std::map<core::SchemaId, learners::DMatrix> sliced;
    for (const auto& spec : specs) {
        if (sliced.find(spec.schema) == sliced.end()) {
            sliced[spec.schema] = learners::from_table(table.slice(spec.schema));
        }
    }

    EvalReport report;
    report.experiment = experiment;

    // model -> fold scores in fold order, and model -> group -> scores
    std::vector<std::vector<double>> fold_scores(specs.size());
    std::vector<std::map<std::string, std::vector<double>>> group_scores(specs.size());

    for (std::size_t f = 0; f < plan.folds.size(); ++f) {
        const auto& fold = plan.folds[f];
        const std::string group = fold.group.empty() ? "all" : fold.group;
        std::map<core::SchemaId, FoldData> cut;
        for (std::size_t s = 0; s < specs.size(); ++s) {
            const auto& spec = specs[s];
            auto it = cut.find(spec.schema);
            if (it == cut.end()) {
                it = cut.emplace(spec.schema, cut_fold(sliced[spec.schema], fold, index)).first;
            }
            std::vector<double> probs;
            double score = run_one(spec, f, it->second, probs);
            fold_scores[s].push_back(score);
            group_scores[s][group].push_back(score);
            if (predictions != nullptr) {
                const auto& fd = it->second;
                for (std::size_t i = 0; i < fd.test_ids.size(); ++i) {
                    predictions->push_back(
                        {spec.name, f, fd.test_ids[i], fd.test.labels[i], probs[i]});
                }
            }
        }
    }

    for (std::size_t s = 0; s < specs.size(); ++s) {
        ModelReport mr;
        mr.name = specs[s].name;
        std::vector<double> mus, sigmas;
        for (const auto& [group, scores] : group_scores[s]) {
            Aggregate agg = mean_std(scores);
            mr.per_group.push_back({group, agg.mu, agg.sigma, scores.size()});
            mus.push_back(agg.mu);
            sigmas.push_back(agg.sigma);
        }
        Aggregate overall = aggregate_scores(mus, sigmas);
        mr.overall_mu = overall.mu;
        mr.overall_sigma = overall.sigma;
        report.models.push_back(std::move(mr));
    }

    const bool by_group = group_scores[0].size() >= 2;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        for (std::size_t j = i + 1; j < specs.size(); ++j) {
            std::vector<double> a, b;
            if (by_group) {
                for (const auto& g : report.models[i].per_group) a.push_back(g.mu);
                for (const auto& g : report.models[j].per_group) b.push_back(g.mu);
            } else {
                a = fold_scores[i];
                b = fold_scores[j];
            }
            Comparison cmp;
            cmp.a = specs[i].name;
            cmp.b = specs[j].name;
            try {
                cmp.t_p = paired_t_test(a, b).p;
            } catch (const std::exception&) {
                cmp.t_p = kNan;
            }
            try {
                cmp.wilcoxon_p = wilcoxon_signed_rank(a, b).p;
            } catch (const std::exception&) {
                cmp.wilcoxon_p = kNan;
            }
            report.comparisons.push_back(std::move(cmp));
        }
    }

    for (const auto& spec : specs) {
        if (spec.kind != LearnerKind::gbdt) continue;
        auto model = learners::gbdt_train(sliced[spec.schema], spec.gbdt, nullptr);
        for (const auto& [feature, weight] : learners::feature_importance(model)) {
            report.importance.push_back({feature, weight});
        }
        break;
    }
    return report;
}

void write_report(const EvalReport& report, const std::string& path) {
    nlohmann::ordered_json j;
    j["experiment"] = report.experiment;
    nlohmann::ordered_json models = nlohmann::ordered_json::array();
    for (const auto& mr : report.models) {
        nlohmann::ordered_json groups = nlohmann::ordered_json::array();
        for (const auto& g : mr.per_group) {
            groups.push_back({{"group", g.group},
                              {"mu", g.mu},
                              {"sigma", g.sigma},
                              {"folds", g.folds}});
        }
        models.push_back({{"name", mr.name},
                          {"per_group", std::move(groups)},
                          {"overall", {{"mu", mr.overall_mu}, {"sigma", mr.overall_sigma}}}});
    }
    j["models"] = std::move(models);
    nlohmann::ordered_json cmps = nlohmann::ordered_json::array();
    for (const auto& c : report.comparisons) {
        cmps.push_back({{"a", c.a},
                        {"b", c.b},
                        {"t_p", finite_or_null(c.t_p)},
                        {"wilcoxon_p", finite_or_null(c.wilcoxon_p)}});
    }
    j["comparisons"] = std::move(cmps);
    nlohmann::ordered_json imp = nlohmann::ordered_json::array();
    for (const auto& e : report.importance) {
        imp.push_back({{"feature", e.feature}, {"weight", e.weight}});
    }
    j["importance"] = std::move(imp);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write report: " + path);
    out << j.dump(2) << '\n';
}

EvalReport read_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read report: " + path);
    nlohmann::json j = nlohmann::json::parse(in);
    EvalReport report;
    report.experiment = j.at("experiment").get<std::string>();
    for (const auto& mj : j.at("models")) {
        ModelReport mr;
        mr.name = mj.at("name").get<std::string>();
        for (const auto& gj : mj.at("per_group")) {
            mr.per_group.push_back({gj.at("group").get<std::string>(),
                                    gj.at("mu").get<double>(),
                                    gj.at("sigma").get<double>(),
                                    gj.at("folds").get<std::size_t>()});
        }
        mr.overall_mu = mj.at("overall").at("mu").get<double>();
        mr.overall_sigma = mj.at("overall").at("sigma").get<double>();
        report.models.push_back(std::move(mr));
    }
    for (const auto& cj : j.at("comparisons")) {
        report.comparisons.push_back({cj.at("a").get<std::string>(),
                                      cj.at("b").get<std::string>(),
                                      null_or_double(cj.at("t_p")),
                                      null_or_double(cj.at("wilcoxon_p"))});
    }
    for (const auto& ij : j.at("importance")) {
        report.importance.push_back(
            {ij.at("feature").get<std::string>(), ij.at("weight").get<double>()});
    }
    return report;
}

std::string render_report(const EvalReport& report) {
    std::vector<std::string> groups;
    for (const auto& mr : report.models) {
        for (const auto& g : mr.per_group) {
            if (std::find(groups.begin(), groups.end(), g.group) == groups.end()) {
                groups.push_back(g.group);
            }
        }
    }
    std::sort(groups.begin(), groups.end());

    auto cell = [](double mu, double sigma) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.4f+-%.4f", mu, sigma);
        return std::string(buf);
    };

    std::vector<std::vector<std::string>> grid;
    std::vector<std::string> header{"model"};
    header.insert(header.end(), groups.begin(), groups.end());
    header.push_back("overall");
    grid.push_back(header);
    for (const auto& mr : report.models) {
        std::vector<std::string> row{mr.name};
        for (const auto& g : groups) {
            auto it = std::find_if(mr.per_group.begin(), mr.per_group.end(),
                                   [&](const GroupStat& gs) { return gs.group == g; });
            row.push_back(it == mr.per_group.end() ? "-" : cell(it->mu, it->sigma));
        }
        row.push_back(cell(mr.overall_mu, mr.overall_sigma));
        grid.push_back(std::move(row));
    }

    std::vector<std::size_t> width(grid[0].size(), 0);
    for (const auto& row : grid) {
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    }
    std::string out = report.experiment + "\n";
    for (const auto& row : grid) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out += row[c];
            if (c + 1 < row.size()) out.append(width[c] - row[c].size() + 2, ' ');
        }
        out += '\n';
    }
    return out;
}

void write_predictions_csv(const std::vector<Prediction>& preds, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write predictions: " + path);
    out << "model,fold,instance_id,label,prob\n";
    char buf[64];
    for (const auto& p : preds) {
        std::snprintf(buf, sizeof(buf), "%.17g", p.prob);
        out << p.model << ',' << p.fold << ',' << p.instance_id << ',' << p.label << ',' << buf
            << '\n';
    }
}

}  // namespace repostlab::evalkit
