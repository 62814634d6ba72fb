// Batch front door: composable pipeline steps (synthesize, build, featurize,
// split, train, evaluate, inspect) that read prior artifacts by path and write
// outputs plus a manifest of content hashes, so any run can be replayed and
// checked bit for bit.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "repostlab/core/corpus.hpp"
#include "repostlab/core/schema.hpp"
#include "repostlab/core/table.hpp"
#include "repostlab/datasets/build.hpp"
#include "repostlab/datasets/splits.hpp"
#include "repostlab/evalkit/experiment.hpp"
#include "repostlab/evalkit/metrics.hpp"
#include "repostlab/evalkit/stats.hpp"
#include "repostlab/learners/dmatrix.hpp"
#include "repostlab/learners/gbdt.hpp"
#include "repostlab/learners/grid.hpp"
#include "repostlab/learners/mlp.hpp"
#include "repostlab/synthgen/config.hpp"
#include "repostlab/synthgen/world.hpp"
#include "repostlab/userfeat/features.hpp"
#include "repostlab/util/hashing.hpp"

namespace {

using repostlab::hash_file;
using repostlab::hash_hex;
using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;
namespace core = repostlab::core;
namespace datasets = repostlab::datasets;
namespace evalkit = repostlab::evalkit;
namespace learners = repostlab::learners;
namespace synthgen = repostlab::synthgen;
namespace userfeat = repostlab::userfeat;

constexpr const char* kToolVersion = "repostlab 1.0.0";

// ---------------------------------------------------------------- manifests

struct Manifest {
    std::string command;
    ordered_json config = ordered_json::object();
    ordered_json inputs = ordered_json::object();
    ordered_json outputs = ordered_json::object();

    void add_input(const std::string& path) { inputs[path] = hash_hex(hash_file(path)); }
    void add_output(const std::string& path) { outputs[path] = hash_hex(hash_file(path)); }

    void write(const std::string& path) const {
        ordered_json j;
        j["tool"] = kToolVersion;
        j["command"] = command;
        j["config"] = config;
        j["inputs"] = inputs;
        j["outputs"] = outputs;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path);
        out << j.dump(2) << "\n";
    }
};

std::string cache_dir_from_env() {
    const char* v = std::getenv("REPOSTLAB_CACHE");
    return v ? std::string(v) : std::string();
}

core::SchemaId schema_arg(const std::string& name) {
    try {
        return core::parse_schema(name);
    } catch (const std::exception&) {
        throw std::invalid_argument("unknown schema \"" + name +
                                    "\" (expected M, U-P, U-HA, U-HM, U, or ALL)");
    }
}

datasets::RatioTag ratio_arg(const std::string& name) {
    try {
        return datasets::parse_ratio(name);
    } catch (const std::exception&) {
        throw std::invalid_argument("unknown ratio \"" + name +
                                    "\" (expected 1:1, 1:5, 1:10, or general-1:5)");
    }
}

core::Corpus load_corpus_dir(const std::string& dir) {
    const std::string posts = dir + "/posts.jsonl";
    const std::string users = dir + "/users.jsonl";
    if (!fs::exists(posts)) throw std::invalid_argument("missing corpus file: " + posts);
    if (!fs::exists(users)) throw std::invalid_argument("missing corpus file: " + users);
    auto corpus = core::load_corpus(posts, users);
    if (!corpus.warnings.empty())
        std::cerr << "corpus: " << corpus.warnings.size() << " warning(s), first: "
                  << corpus.warnings.front() << "\n";
    return corpus;
}

core::FeatureTable featurize_instances(const userfeat::FeatureContext& ctx,
                                       const datasets::LabeledDataset& ds) {
    core::FeatureTable table = core::make_table(core::SchemaId::ALL);
    table.rows.reserve(ds.instances.size());
    for (const auto& inst : ds.instances) {
        table.rows.push_back(ctx.instance_features(inst));
        table.labels.push_back(inst.label);
        table.hashtags.push_back(inst.hashtag);
        table.instance_ids.push_back(inst.instance_id);
    }
    return table;
}

std::vector<std::size_t> rows_for_ids(const core::FeatureTable& table,
                                      const std::vector<std::string>& ids, const char* what) {
    std::unordered_map<std::string, std::size_t> index;
    index.reserve(table.instance_ids.size());
    for (std::size_t i = 0; i < table.instance_ids.size(); ++i)
        index.emplace(table.instance_ids[i], i);
    std::vector<std::size_t> rows;
    rows.reserve(ids.size());
    for (const auto& id : ids) {
        auto it = index.find(id);
        if (it == index.end())
            throw std::runtime_error(std::string(what) + " instance \"" + id +
                                     "\" not present in the feature file");
        rows.push_back(it->second);
    }
    return rows;
}

ordered_json world_config_json(const synthgen::WorldConfig& c) {
    ordered_json j;
    j["n_users"] = c.n_users;
    j["n_hashtags"] = c.n_hashtags;
    j["posts_per_hashtag"] = c.posts_per_hashtag;
    j["history_length"] = c.history_length;
    j["attachment"] = c.attachment;
    j["vocab_size"] = c.vocab_size;
    j["ood_strict"] = c.ood_strict;
    j["alpha_follow"] = c.alpha_follow;
    j["alpha_interact"] = c.alpha_interact;
    j["alpha_activity"] = c.alpha_activity;
    j["beta_topic"] = c.beta_topic;
    j["beta_sentiment"] = c.beta_sentiment;
    j["base_rate"] = c.base_rate;
    j["exposure_nonfollower"] = c.exposure_nonfollower;
    j["seed"] = c.seed;
    return j;
}

// ------------------------------------------------------------- shared flags

struct GbdtFlags {
    int depth = 8;
    int rounds = 100;
    double lr = 0.3;
    int mcw = 1;
    double subsample = 1.0;
    double spw = 1.0;
    double reg_lambda = 1.0;
    double gamma = 0.0;
    int early_stop = 10;

    learners::GBDTParams params(std::uint64_t seed) const {
        learners::GBDTParams p;
        p.max_depth = depth;
        p.n_estimators = rounds;
        p.learning_rate = lr;
        p.min_child_weight = mcw;
        p.subsample = subsample;
        p.scale_pos_weight = spw;
        p.reg_lambda = reg_lambda;
        p.gamma = gamma;
        p.early_stopping_rounds = early_stop;
        p.seed = seed;
        return p;
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("--depth", depth, "tree depth");
        cmd->add_option("--rounds", rounds, "boosting rounds");
        cmd->add_option("--lr", lr, "boosting learning rate");
        cmd->add_option("--mcw", mcw, "min child weight");
        cmd->add_option("--subsample", subsample, "row subsample per round");
        cmd->add_option("--spw", spw, "positive class weight");
        cmd->add_option("--reg-lambda", reg_lambda, "L2 leaf penalty");
        cmd->add_option("--gamma", gamma, "min split gain");
        cmd->add_option("--early-stop", early_stop, "early stopping patience, 0 disables");
    }
};

struct MlpFlags {
    std::string hidden = "128,128,64";
    int batch = 40;
    int epochs = 200;
    int patience = 10;
    double lr = 0.001;

    learners::MlpParams params(std::uint64_t seed) const {
        learners::MlpParams p;
        p.hidden.clear();
        std::size_t start = 0;
        while (start <= hidden.size()) {
            const auto comma = hidden.find(',', start);
            const std::string tok =
                hidden.substr(start, comma == std::string::npos ? comma : comma - start);
            std::size_t used = 0;
            int v = 0;
            try {
                v = std::stoi(tok, &used);
            } catch (const std::exception&) {
                used = std::string::npos;
            }
            if (used != tok.size() || v <= 0)
                throw std::invalid_argument("bad --hidden layer size \"" + tok + "\"");
            p.hidden.push_back(v);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        p.batch_size = batch;
        p.max_epochs = epochs;
        p.patience = patience;
        p.learning_rate = lr;
        p.seed = seed;
        return p;
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("--hidden", hidden, "comma-separated hidden layer sizes");
        cmd->add_option("--batch", batch, "minibatch size");
        cmd->add_option("--epochs", epochs, "max training epochs");
        cmd->add_option("--patience", patience, "early stopping patience");
        cmd->add_option("--mlp-lr", lr, "Adam learning rate");
    }
};

// ----------------------------------------------------- model-file evaluation

struct LoadedModel {
    std::string path;
    bool is_tree = false;
    learners::GBDTModel tree;
    learners::MlpModel net;

    const std::vector<std::string>& feature_names() const {
        return is_tree ? tree.feature_names : net.feature_names;
    }
    std::uint64_t dict_hash() const { return is_tree ? tree.dictionary_hash : net.dictionary_hash; }
};

LoadedModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open model file: " + path);
    ordered_json j = ordered_json::parse(in);
    const std::string format = j.value("format", "");
    LoadedModel m;
    m.path = path;
    if (format == "repostlab-gbdt") {
        m.is_tree = true;
        m.tree = learners::read_gbdt_model(path);
    } else if (format == "repostlab-mlp") {
        m.net = learners::read_mlp_model(path);
    } else {
        throw std::runtime_error(path + ": unrecognized model format \"" + format + "\"");
    }
    return m;
}

core::SchemaId model_schema(const LoadedModel& m) {
    for (core::SchemaId id : {core::SchemaId::M, core::SchemaId::UP, core::SchemaId::UHA,
                              core::SchemaId::UHM, core::SchemaId::U, core::SchemaId::ALL})
        if (m.feature_names() == core::feature_dictionary(id)) return id;
    throw std::runtime_error(m.path + ": feature dictionary matches no known schema");
}

struct FoldOutcome {
    std::string group;
    double f1 = 0.0;
};

evalkit::ModelReport summarize_model(const std::string& name,
                                     const std::vector<FoldOutcome>& outcomes) {
    std::map<std::string, std::vector<double>> by_group;
    for (const auto& o : outcomes) by_group[o.group].push_back(o.f1);
    evalkit::ModelReport rep;
    rep.name = name;
    std::vector<double> mus, sigmas;
    for (const auto& [group, scores] : by_group) {
        const auto st = evalkit::mean_std(scores);
        rep.per_group.push_back({group, st.mu, st.sigma, scores.size()});
        mus.push_back(st.mu);
        sigmas.push_back(st.sigma);
    }
    const auto overall = evalkit::aggregate_scores(mus, sigmas);
    rep.overall_mu = overall.mu;
    rep.overall_sigma = overall.sigma;
    return rep;
}

std::vector<evalkit::Comparison> compare_outcomes(
    const std::vector<std::string>& names,
    const std::vector<std::vector<FoldOutcome>>& outcomes) {
    // Mirrors the experiment runner: paired on per-group means when the plan
    // has several groups, on raw fold scores otherwise.
    std::vector<evalkit::Comparison> out;
    if (names.size() < 2 || outcomes.empty()) return out;
    std::map<std::string, bool> groups;
    for (const auto& o : outcomes.front()) groups[o.group] = true;
    const bool grouped = groups.size() >= 2;
    std::vector<std::vector<double>> basis(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (grouped) {
            std::map<std::string, std::vector<double>> by_group;
            for (const auto& o : outcomes[i]) by_group[o.group].push_back(o.f1);
            for (const auto& [group, scores] : by_group)
                basis[i].push_back(evalkit::mean_std(scores).mu);
        } else {
            for (const auto& o : outcomes[i]) basis[i].push_back(o.f1);
        }
    }
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j) {
            evalkit::Comparison c;
            c.a = names[i];
            c.b = names[j];
            try {
                c.t_p = evalkit::paired_t_test(basis[i], basis[j]).p;
            } catch (const std::exception&) {
                c.t_p = std::numeric_limits<double>::quiet_NaN();
            }
            try {
                c.wilcoxon_p = evalkit::wilcoxon_signed_rank(basis[i], basis[j]).p;
            } catch (const std::exception&) {
                c.wilcoxon_p = std::numeric_limits<double>::quiet_NaN();
            }
            out.push_back(c);
        }
    return out;
}

// ---------------------------------------------------------------- commands

struct GlobalFlags {
    std::uint64_t seed = 1;
    int jobs = 1;
    std::string config;
};

void cmd_synth(const GlobalFlags& g, bool seed_given, const std::string& out_dir) {
    if (g.config.empty())
        throw std::invalid_argument("synth requires --config <world config file>");
    auto cfg = synthgen::load_world_config(g.config);
    if (seed_given) cfg.seed = g.seed;
    synthgen::validate_world_config(cfg);
    fs::create_directories(out_dir);

    auto world = synthgen::generate_world(cfg);
    synthgen::generate_cascades(world);
    synthgen::write_world(world, out_dir);
    const std::string cfg_echo = out_dir + "/world.cfg";
    {
        std::ofstream out(cfg_echo, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + cfg_echo);
        out << synthgen::serialize_world_config(cfg);
    }

    std::size_t events = 0;
    for (const auto& p : world.posts)
        if (p.post_type != core::PostType::original) ++events;

    Manifest m;
    m.command = "synth";
    m.config = world_config_json(cfg);
    m.add_input(g.config);
    m.add_output(out_dir + "/users.jsonl");
    m.add_output(out_dir + "/posts.jsonl");
    m.add_output(cfg_echo);
    ordered_json stats;
    stats["users"] = world.users.size();
    stats["posts"] = world.posts.size();
    stats["repost_events"] = events;
    m.config["stats"] = stats;
    m.write(out_dir + "/manifest.json");
    std::cout << "world: " << world.users.size() << " users, " << world.posts.size()
              << " posts, " << events << " repost events -> " << out_dir << "\n";
}

void cmd_build_dataset(const GlobalFlags& g, const std::string& corpus_dir,
                       const std::string& ratio, const std::string& out_path) {
    const auto tag = ratio_arg(ratio);
    auto corpus = load_corpus_dir(corpus_dir);
    userfeat::ContextOptions opts;
    opts.seed = g.seed;
    opts.jobs = g.jobs;
    opts.cache_dir = cache_dir_from_env();
    auto ctx = userfeat::FeatureContext::build_unique(corpus, opts);
    auto ds = datasets::build_dataset(*ctx, tag, g.seed);
    datasets::write_dataset(ds, out_path);

    Manifest m;
    m.command = "build-dataset";
    m.config["corpus"] = corpus_dir;
    m.config["ratio"] = datasets::ratio_name(tag);
    m.config["seed"] = g.seed;
    ordered_json stats;
    stats["positives"] = ds.positives;
    stats["instances"] = ds.instances.size();
    stats["dropped_short_pool"] = ds.dropped_short_pool;
    stats["dropped_random_space"] = ds.dropped_random_space;
    m.config["stats"] = stats;
    m.add_input(corpus_dir + "/posts.jsonl");
    m.add_input(corpus_dir + "/users.jsonl");
    m.add_output(out_path);
    m.write(out_path + ".manifest.json");
    std::cout << "dataset " << datasets::ratio_name(tag) << ": " << ds.positives
              << " positives, " << ds.instances.size() << " instances ("
              << ds.dropped_short_pool << " dropped on short pools) -> " << out_path << "\n";
}

void cmd_featurize(const GlobalFlags& g, const std::string& corpus_dir,
                   const std::string& dataset_path, const std::string& schema_name,
                   bool strict_causality, const std::string& out_path) {
    const auto schema = schema_arg(schema_name);
    auto corpus = load_corpus_dir(corpus_dir);
    if (!fs::exists(dataset_path))
        throw std::invalid_argument("missing dataset file: " + dataset_path);
    auto ds = datasets::read_dataset(dataset_path);
    userfeat::ContextOptions opts;
    opts.seed = g.seed;
    opts.jobs = g.jobs;
    opts.strict_causality = strict_causality;
    opts.cache_dir = cache_dir_from_env();
    auto ctx = userfeat::FeatureContext::build_unique(corpus, opts);
    auto table = featurize_instances(*ctx, ds);
    if (schema != core::SchemaId::ALL) table = table.slice(schema);
    core::write_csv(table, out_path);

    Manifest m;
    m.command = "featurize";
    m.config["corpus"] = corpus_dir;
    m.config["dataset"] = dataset_path;
    m.config["schema"] = core::schema_name(schema);
    m.config["seed"] = g.seed;
    m.config["jobs"] = g.jobs;
    m.config["strict_causality"] = strict_causality;
    m.config["rows"] = table.n_rows();
    m.config["columns"] = table.n_cols();
    m.config["dictionary_hash"] = hash_hex(core::dictionary_hash(schema));
    m.add_input(corpus_dir + "/posts.jsonl");
    m.add_input(corpus_dir + "/users.jsonl");
    m.add_input(dataset_path);
    m.add_output(out_path);
    m.write(out_path + ".manifest.json");
    std::cout << "features " << core::schema_name(schema) << ": " << table.n_rows()
              << " rows x " << table.n_cols() << " columns -> " << out_path << "\n";
}

struct SplitFlags {
    int repeats = datasets::kMcRepeats;
    double train_frac = datasets::kTrainFraction;
    double val_frac = datasets::kValFraction;
    std::string target;
    int subsets = datasets::kLohoSubsets;
    int windows = datasets::kTemporalWindows;
    int train_windows = datasets::kTemporalTrainWindows;
};

void cmd_split(const GlobalFlags& g, const std::string& dataset_path,
               const std::string& protocol, const SplitFlags& f, const std::string& out_path) {
    if (!fs::exists(dataset_path))
        throw std::invalid_argument("missing dataset file: " + dataset_path);
    auto ds = datasets::read_dataset(dataset_path);
    datasets::SplitPlan plan;
    if (protocol == "mixed-mc") {
        plan = datasets::split_monte_carlo(ds, f.repeats, f.train_frac, f.val_frac, g.seed);
    } else if (protocol == "perhash-mc") {
        plan = datasets::split_per_hashtag(ds, f.repeats, f.train_frac, f.val_frac, g.seed);
    } else if (protocol == "loho-ood") {
        plan = f.target.empty()
                   ? datasets::split_loho_all(ds, f.subsets, g.seed)
                   : datasets::split_leave_one_hashtag_out(ds, f.target, f.subsets, g.seed);
    } else if (protocol == "temporal") {
        plan = f.target.empty()
                   ? datasets::split_temporal_all(ds, f.windows, f.train_windows, g.seed)
                   : datasets::split_temporal(ds, f.target, f.windows, f.train_windows, g.seed);
    } else {
        throw std::invalid_argument("unknown protocol \"" + protocol +
                                    "\" (expected mixed-mc, perhash-mc, loho-ood, or temporal)");
    }
    datasets::write_split_plan(plan, out_path);
    for (const auto& note : plan.notes) std::cerr << "split: " << note << "\n";

    Manifest m;
    m.command = "split";
    m.config["dataset"] = dataset_path;
    m.config["protocol"] = plan.protocol;
    m.config["seed"] = g.seed;
    m.config["repeats"] = f.repeats;
    m.config["train_fraction"] = f.train_frac;
    m.config["val_fraction"] = f.val_frac;
    if (!f.target.empty()) m.config["target"] = f.target;
    m.config["subsets"] = f.subsets;
    m.config["windows"] = f.windows;
    m.config["train_windows"] = f.train_windows;
    m.config["folds"] = plan.folds.size();
    m.add_input(dataset_path);
    m.add_output(out_path);
    m.write(out_path + ".manifest.json");
    std::cout << "split " << plan.protocol << ": " << plan.folds.size() << " folds -> "
              << out_path << "\n";
}

void cmd_train(const GlobalFlags& g, const std::string& features_path,
               const std::string& split_path, int fold, const std::string& model_kind,
               const std::string& grid_ratio, const GbdtFlags& gf, const MlpFlags& mf,
               const std::string& out_path) {
    if (!fs::exists(features_path))
        throw std::invalid_argument("missing feature file: " + features_path);
    if (!fs::exists(split_path))
        throw std::invalid_argument("missing split plan: " + split_path);
    auto table = core::read_csv(features_path);
    auto plan = datasets::read_split_plan(split_path);
    if (fold < 0 || static_cast<std::size_t>(fold) >= plan.folds.size())
        throw std::invalid_argument("fold " + std::to_string(fold) + " out of range (plan has " +
                                    std::to_string(plan.folds.size()) + " folds)");
    const auto& f = plan.folds[static_cast<std::size_t>(fold)];
    auto dm = learners::from_table(table);
    auto train = learners::subset(dm, rows_for_ids(table, f.train, "train"));
    auto val = learners::subset(dm, rows_for_ids(table, f.val, "validation"));
    const bool has_val = !val.labels.empty();

    Manifest m;
    m.command = "train";
    m.config["features"] = features_path;
    m.config["split"] = split_path;
    m.config["fold"] = fold;
    m.config["model"] = model_kind;
    m.config["seed"] = g.seed;
    m.config["schema"] = core::schema_name(table.schema_id);
    m.config["train_rows"] = train.labels.size();
    m.config["val_rows"] = val.labels.size();

    if (model_kind == "gbdt") {
        auto params = gf.params(g.seed);
        if (!grid_ratio.empty()) {
            if (!has_val)
                throw std::invalid_argument("--grid needs a fold with a validation part");
            auto grid = learners::appendix_grid(ratio_arg(grid_ratio), g.seed);
            auto result = learners::grid_search(train, val, grid);
            params = result.best;
            m.config["grid"] = grid_ratio;
            m.config["grid_size"] = grid.size();
            m.config["grid_best_f1"] = result.best_f1;
        }
        auto model = learners::gbdt_train(train, params, has_val ? &val : nullptr);
        learners::write_gbdt_model(model, out_path);
        m.config["trees"] = model.trees.size();
        m.config["best_iteration"] = model.best_iteration;
        std::cout << "gbdt: " << model.trees.size() << " trees -> " << out_path << "\n";
    } else if (model_kind == "mlp") {
        if (!grid_ratio.empty())
            throw std::invalid_argument("--grid applies to the gbdt model only");
        auto model = learners::mlp_train(train, mf.params(g.seed), has_val ? &val : nullptr);
        learners::write_mlp_model(model, out_path);
        m.config["best_epoch"] = model.best_epoch;
        std::cout << "mlp: best epoch " << model.best_epoch << " -> " << out_path << "\n";
    } else {
        throw std::invalid_argument("unknown model \"" + model_kind +
                                    "\" (expected gbdt or mlp)");
    }
    m.add_input(features_path);
    m.add_input(split_path);
    m.add_output(out_path);
    m.write(out_path + ".manifest.json");
}

evalkit::ModelSpec parse_spec(const std::string& text, const GbdtFlags& gf, const MlpFlags& mf,
                              std::uint64_t seed) {
    const auto eq = text.find('=');
    const auto colon = text.find(':', eq == std::string::npos ? 0 : eq + 1);
    if (eq == std::string::npos || colon == std::string::npos || eq == 0)
        throw std::invalid_argument("bad --spec \"" + text + "\" (expected name=kind:SCHEMA)");
    evalkit::ModelSpec spec;
    spec.name = text.substr(0, eq);
    const std::string kind = text.substr(eq + 1, colon - eq - 1);
    spec.schema = schema_arg(text.substr(colon + 1));
    if (kind == "gbdt") {
        spec.kind = evalkit::LearnerKind::gbdt;
        spec.gbdt = gf.params(seed);
    } else if (kind == "mlp") {
        spec.kind = evalkit::LearnerKind::mlp;
        spec.mlp = mf.params(seed);
    } else {
        throw std::invalid_argument("bad --spec \"" + text + "\": unknown kind \"" + kind + "\"");
    }
    return spec;
}

void cmd_eval(const GlobalFlags& g, const std::string& features_path,
              const std::string& split_path, const std::vector<std::string>& spec_texts,
              const std::vector<std::string>& model_files, const std::string& name,
              const GbdtFlags& gf, const MlpFlags& mf, const std::string& predictions_path,
              const std::string& out_path) {
    if (spec_texts.empty() == model_files.empty())
        throw std::invalid_argument("eval needs either --spec entries or --model-file entries");
    if (!fs::exists(features_path))
        throw std::invalid_argument("missing feature file: " + features_path);
    if (!fs::exists(split_path))
        throw std::invalid_argument("missing split plan: " + split_path);
    auto table = core::read_csv(features_path);
    auto plan = datasets::read_split_plan(split_path);

    evalkit::EvalReport report;
    std::vector<evalkit::Prediction> predictions;
    if (!spec_texts.empty()) {
        std::vector<evalkit::ModelSpec> specs;
        for (const auto& text : spec_texts) specs.push_back(parse_spec(text, gf, mf, g.seed));
        for (const auto& spec : specs)
            if (spec.schema != table.schema_id && table.schema_id != core::SchemaId::ALL)
                throw std::runtime_error("spec \"" + spec.name + "\" wants schema " +
                                         core::schema_name(spec.schema) +
                                         " but the feature file holds " +
                                         core::schema_name(table.schema_id));
        report = evalkit::run_experiment(table, plan, specs, name,
                                         predictions_path.empty() ? nullptr : &predictions);
    } else {
        report.experiment = name;
        std::vector<std::string> names;
        std::vector<std::vector<FoldOutcome>> outcomes;
        std::map<core::SchemaId, core::FeatureTable> slices;
        std::map<core::SchemaId, learners::DMatrix> mats;
        for (const auto& path : model_files) {
            auto model = load_model_file(path);
            const auto schema = model_schema(model);
            if (table.schema_id != core::SchemaId::ALL && table.schema_id != schema)
                throw std::runtime_error(path + ": model feature dictionary (" +
                                         core::schema_name(schema) +
                                         ") does not match the feature file (" +
                                         core::schema_name(table.schema_id) + ")");
            auto st = slices.find(schema);
            if (st == slices.end()) {
                st = slices.emplace(schema, table.slice(schema)).first;
                mats.emplace(schema, learners::from_table(st->second));
            }
            const auto& sliced = st->second;
            const auto& dm = mats.at(schema);
            if (model.dict_hash() != dm.dictionary_hash)
                throw std::runtime_error(path + ": feature dictionary hash mismatch against " +
                                         features_path);
            const std::string model_name = fs::path(path).stem().string();
            std::vector<FoldOutcome> folds;
            for (std::size_t k = 0; k < plan.folds.size(); ++k) {
                const auto& fold = plan.folds[k];
                auto test = learners::subset(dm, rows_for_ids(sliced, fold.test, "test"));
                auto probs = model.is_tree ? learners::gbdt_predict(model.tree, test.rows)
                                           : learners::mlp_predict(model.net, test.rows);
                auto labels = evalkit::threshold_labels(probs);
                FoldOutcome o;
                o.group = fold.group.empty() ? std::string("all") : fold.group;
                o.f1 = evalkit::f1(test.labels, labels);
                folds.push_back(o);
                if (!predictions_path.empty())
                    for (std::size_t r = 0; r < probs.size(); ++r) {
                        evalkit::Prediction pred;
                        pred.model = model_name;
                        pred.fold = k;
                        pred.instance_id = fold.test[r];
                        pred.label = test.labels[r];
                        pred.prob = probs[r];
                        predictions.push_back(pred);
                    }
            }
            report.models.push_back(summarize_model(model_name, folds));
            names.push_back(model_name);
            outcomes.push_back(std::move(folds));
        }
        report.comparisons = compare_outcomes(names, outcomes);
    }

    evalkit::write_report(report, out_path);
    if (!predictions_path.empty()) evalkit::write_predictions_csv(predictions, predictions_path);
    std::cout << evalkit::render_report(report);

    Manifest m;
    m.command = "eval";
    m.config["features"] = features_path;
    m.config["split"] = split_path;
    m.config["experiment"] = name;
    m.config["seed"] = g.seed;
    if (!spec_texts.empty()) m.config["specs"] = spec_texts;
    if (!model_files.empty()) m.config["model_files"] = model_files;
    m.add_input(features_path);
    m.add_input(split_path);
    for (const auto& path : model_files) m.add_input(path);
    m.add_output(out_path);
    if (!predictions_path.empty()) m.add_output(predictions_path);
    m.write(out_path + ".manifest.json");
}

void cmd_importance(const std::string& model_path, const std::string& out_path) {
    if (!fs::exists(model_path))
        throw std::invalid_argument("missing model file: " + model_path);
    auto model = load_model_file(model_path);
    if (!model.is_tree)
        throw std::invalid_argument("importance requires a tree model, got an MLP: " +
                                    model_path);
    auto ranked = learners::feature_importance(model.tree);
    std::string text = "feature,weight\n";
    char buf[64];
    for (const auto& [feature, weight] : ranked) {
        std::snprintf(buf, sizeof(buf), "%.17g", weight);
        text += feature;
        text += ',';
        text += buf;
        text += '\n';
    }
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
    out.close();
    Manifest m;
    m.command = "importance";
    m.config["model"] = model_path;
    m.add_input(model_path);
    m.add_output(out_path);
    m.write(out_path + ".manifest.json");
    std::cout << ranked.size() << " features with splits -> " << out_path << "\n";
}

void cmd_report(const std::string& report_path, const std::string& format,
                const std::string& out_path) {
    if (!fs::exists(report_path))
        throw std::invalid_argument("missing report file: " + report_path);
    auto report = evalkit::read_report(report_path);
    if (report.models.empty())
        throw std::invalid_argument(report_path + ": report has no model results");
    std::string text;
    if (format == "text") {
        text = evalkit::render_report(report);
    } else if (format == "csv") {
        text = "model,group,mu,sigma,folds\n";
        char buf[96];
        for (const auto& model : report.models) {
            for (const auto& grp : model.per_group) {
                std::snprintf(buf, sizeof(buf), "%s,%s,%.17g,%.17g,%zu\n", model.name.c_str(),
                              grp.group.c_str(), grp.mu, grp.sigma, grp.folds);
                text += buf;
            }
            std::snprintf(buf, sizeof(buf), "%s,overall,%.17g,%.17g,%zu\n", model.name.c_str(),
                          model.overall_mu, model.overall_sigma,
                          static_cast<std::size_t>(0));
            text += buf;
        }
    } else {
        throw std::invalid_argument("unknown format \"" + format + "\" (expected text or csv)");
    }
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reposting-prediction laboratory"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kToolVersion);

    GlobalFlags g;
    auto* seed_opt = app.add_option("--seed", g.seed, "base random seed");
    app.add_option("--jobs", g.jobs, "worker cap for parallel stages")
        ->check(CLI::PositiveNumber);
    app.add_option("--config", g.config, "world configuration file (synth)");

    // synth
    auto* synth = app.add_subcommand("synth", "generate a synthetic corpus");
    std::string synth_out;
    synth->add_option("--out", synth_out, "output directory")->required();
    synth->callback([&] { cmd_synth(g, seed_opt->count() > 0, synth_out); });

    // build-dataset
    auto* build = app.add_subcommand("build-dataset", "construct labeled instances");
    std::string build_corpus, build_ratio = "1:5", build_out;
    build->add_option("--corpus", build_corpus, "corpus directory")->required();
    build->add_option("--ratio", build_ratio, "1:1, 1:5, 1:10, or general-1:5");
    build->add_option("--out", build_out, "output dataset file")->required();
    build->callback([&] { cmd_build_dataset(g, build_corpus, build_ratio, build_out); });

    // featurize
    auto* feat = app.add_subcommand("featurize", "emit the feature matrix for a dataset");
    std::string feat_corpus, feat_dataset, feat_schema = "ALL", feat_out;
    bool feat_strict = false;
    feat->add_option("--corpus", feat_corpus, "corpus directory")->required();
    feat->add_option("--dataset", feat_dataset, "instance file from build-dataset")->required();
    feat->add_option("--schema", feat_schema, "M, U-P, U-HA, U-HM, U, or ALL");
    feat->add_flag("--strict-causality", feat_strict,
                   "truncate user histories at each instance's event time");
    feat->add_option("--out", feat_out, "output CSV")->required();
    feat->callback([&] {
        cmd_featurize(g, feat_corpus, feat_dataset, feat_schema, feat_strict, feat_out);
    });

    // split
    auto* split = app.add_subcommand("split", "cut a dataset into evaluation folds");
    std::string split_dataset, split_protocol, split_out;
    SplitFlags sf;
    split->add_option("--dataset", split_dataset, "instance file")->required();
    split->add_option("--protocol", split_protocol,
                      "mixed-mc, perhash-mc, loho-ood, or temporal")->required();
    split->add_option("--out", split_out, "output plan file")->required();
    split->add_option("--repeats", sf.repeats, "Monte Carlo repeats");
    split->add_option("--train-frac", sf.train_frac, "train fraction");
    split->add_option("--val-frac", sf.val_frac, "validation fraction");
    split->add_option("--target", sf.target, "single hashtag for loho-ood/temporal");
    split->add_option("--subsets", sf.subsets, "training subsets per held-out hashtag");
    split->add_option("--windows", sf.windows, "temporal windows");
    split->add_option("--train-windows", sf.train_windows, "training windows per fold");
    split->callback([&] { cmd_split(g, split_dataset, split_protocol, sf, split_out); });

    // train
    auto* train = app.add_subcommand("train", "fit one model on one fold");
    std::string train_features, train_split, train_model = "gbdt", train_grid, train_out;
    int train_fold = 0;
    GbdtFlags train_gf;
    MlpFlags train_mf;
    train->add_option("--features", train_features, "feature CSV")->required();
    train->add_option("--split", train_split, "split plan")->required();
    train->add_option("--fold", train_fold, "fold index");
    train->add_option("--model", train_model, "gbdt or mlp");
    train->add_option("--grid", train_grid, "sweep the canonical grid for this ratio first");
    train->add_option("--out", train_out, "output model file")->required();
    train_gf.attach(train);
    train_mf.attach(train);
    train->callback([&] {
        cmd_train(g, train_features, train_split, train_fold, train_model, train_grid,
                  train_gf, train_mf, train_out);
    });

    // eval
    auto* eval = app.add_subcommand("eval", "score models across every fold of a plan");
    std::string eval_features, eval_split, eval_name = "experiment", eval_preds, eval_out;
    std::vector<std::string> eval_specs, eval_model_files;
    GbdtFlags eval_gf;
    MlpFlags eval_mf;
    eval->add_option("--features", eval_features, "feature CSV")->required();
    eval->add_option("--split", eval_split, "split plan")->required();
    eval->add_option("--spec", eval_specs, "model spec name=kind:SCHEMA (trains per fold)");
    eval->add_option("--model-file", eval_model_files, "trained model file (scores only)");
    eval->add_option("--name", eval_name, "experiment label for the report");
    eval->add_option("--predictions", eval_preds, "also write per-row probabilities CSV");
    eval->add_option("--out", eval_out, "output report JSON")->required();
    eval_gf.attach(eval);
    eval_mf.attach(eval);
    eval->callback([&] {
        cmd_eval(g, eval_features, eval_split, eval_specs, eval_model_files, eval_name,
                 eval_gf, eval_mf, eval_preds, eval_out);
    });

    // importance
    auto* imp = app.add_subcommand("importance", "rank features by accumulated split gain");
    std::string imp_model, imp_out;
    imp->add_option("--model", imp_model, "trained tree model file")->required();
    imp->add_option("--out", imp_out, "output CSV (stdout when omitted)");
    imp->callback([&] { cmd_importance(imp_model, imp_out); });

    // report
    auto* rep = app.add_subcommand("report", "render a stored evaluation report");
    std::string rep_report, rep_format = "text", rep_out;
    rep->add_option("--report", rep_report, "report JSON from eval")->required();
    rep->add_option("--format", rep_format, "text or csv");
    rep->add_option("--out", rep_out, "output file (stdout when omitted)");
    rep->callback([&] { cmd_report(rep_report, rep_format, rep_out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
