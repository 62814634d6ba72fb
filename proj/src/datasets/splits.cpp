#include "repostlab/datasets/splits.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "repostlab/util/hashing.hpp"
#include "repostlab/util/rng.hpp"

namespace repostlab::datasets {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string pair_key(const core::Instance& inst) {
    return inst.sender_id + '\x1f' + inst.recipient_id;
}

std::vector<std::string> ids_of(const std::vector<const core::Instance*>& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto* i : v) out.push_back(i->instance_id);
    return out;
}

// Removes train entries whose sender-recipient pair occurs in test.
std::size_t filter_leaked(std::vector<const core::Instance*>& train,
                          const std::vector<const core::Instance*>& test) {
    std::set<std::string> pairs;
    for (const auto* t : test) pairs.insert(pair_key(*t));
    std::vector<const core::Instance*> kept;
    kept.reserve(train.size());
    std::size_t removed = 0;
    for (const auto* t : train) {
        if (pairs.count(pair_key(*t)) > 0)
            ++removed;
        else
            kept.push_back(t);
    }
    train = std::move(kept);
    return removed;
}

void add_mc_folds(const std::vector<const core::Instance*>& all, int repeats,
                  double f_train, double f_val, const Rng& base, std::uint64_t salt,
                  const std::string& group, SplitPlan& plan) {
    const std::size_t n = all.size();
    const auto n_train = static_cast<std::size_t>(std::llround(f_train * static_cast<double>(n)));
    const auto n_val = static_cast<std::size_t>(std::llround(f_val * static_cast<double>(n)));
    if (n_train < 1 || n_val < 1 || n_train + n_val + 1 > n)
        throw std::runtime_error("dataset too small to split 63/7/30: " +
                                 std::to_string(n) + " instances in group " + group);

    const Rng scoped = base.derive(salt);
    for (int f = 0; f < repeats; ++f) {
        Rng rng = scoped.derive(static_cast<std::uint64_t>(f));
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = i;
        rng.shuffle(perm);

        std::vector<const core::Instance*> train, val, test;
        for (std::size_t i = 0; i < n; ++i) {
            const core::Instance* inst = all[perm[i]];
            if (i < n_train)
                train.push_back(inst);
            else if (i < n_train + n_val)
                val.push_back(inst);
            else
                test.push_back(inst);
        }
        const std::size_t removed = filter_leaked(train, test);
        if (removed > 0)
            plan.notes.push_back(group + " fold " + std::to_string(f) + ": removed " +
                                 std::to_string(removed) + " leaked train instances");
        Fold fold;
        fold.train = ids_of(train);
        fold.val = ids_of(val);
        fold.test = ids_of(test);
        fold.group = group;
        plan.folds.push_back(std::move(fold));
    }
}

}  // namespace

SplitPlan split_monte_carlo(const LabeledDataset& ds, int repeats, double train_fraction,
                            double val_fraction, std::uint64_t seed) {
    SplitPlan plan;
    plan.protocol = "mixed-mc";
    plan.seed = seed;
    std::vector<const core::Instance*> all;
    all.reserve(ds.instances.size());
    for (const auto& inst : ds.instances) all.push_back(&inst);
    add_mc_folds(all, repeats, train_fraction, val_fraction, make_seed_rng(seed),
                 fnv1a64("mixed"), "mixed", plan);
    return plan;
}

SplitPlan split_per_hashtag(const LabeledDataset& ds, int repeats, double train_fraction,
                            double val_fraction, std::uint64_t seed) {
    SplitPlan plan;
    plan.protocol = "perhash-mc";
    plan.seed = seed;
    const Rng base = make_seed_rng(seed);
    for (const auto& tag : dataset_hashtags(ds)) {
        std::vector<const core::Instance*> subset;
        for (const auto& inst : ds.instances)
            if (inst.hashtag == tag) subset.push_back(&inst);
        try {
            add_mc_folds(subset, repeats, train_fraction, val_fraction, base, fnv1a64(tag),
                         tag, plan);
        } catch (const std::runtime_error& e) {
            plan.notes.push_back(std::string("skipped hashtag ") + tag + ": " + e.what());
        }
    }
    if (plan.folds.empty())
        throw std::runtime_error("no hashtag large enough for per-hashtag splits");
    return plan;
}

SplitPlan split_leave_one_hashtag_out(const LabeledDataset& ds, const std::string& target,
                                      int subsets, std::uint64_t seed) {
    SplitPlan plan;
    plan.protocol = "loho-ood";
    plan.seed = seed;

    bool target_present = false;
    std::map<std::string, std::set<std::string>> pair_tags;
    for (const auto& inst : ds.instances) {
        if (inst.hashtag == target) target_present = true;
        pair_tags[pair_key(inst)].insert(inst.hashtag);
    }
    if (!target_present)
        throw std::runtime_error("target hashtag absent from dataset: " + target);

    std::vector<const core::Instance*> test, rest;
    std::size_t dropped = 0;
    for (const auto& inst : ds.instances) {
        if (pair_tags.at(pair_key(inst)).size() > 1) {
            ++dropped;
            continue;
        }
        (inst.hashtag == target ? test : rest).push_back(&inst);
    }
    if (dropped > 0)
        plan.notes.push_back("dropped " + std::to_string(dropped) +
                             " instances with cross-hashtag sender-recipient pairs");
    if (test.empty())
        throw std::runtime_error("no test instances left for hashtag: " + target);
    if (rest.empty())
        throw std::runtime_error("no training instances outside hashtag: " + target);

    Rng rng = make_seed_rng(seed).derive(fnv1a64(target));
    rng.shuffle(rest);

    const std::size_t n = rest.size();
    const std::size_t q = n / static_cast<std::size_t>(subsets);
    const std::size_t rem = n % static_cast<std::size_t>(subsets);
    std::vector<std::vector<const core::Instance*>> parts;
    std::size_t at = 0;
    for (int s = 0; s < subsets; ++s) {
        const std::size_t len = q + (static_cast<std::size_t>(s) < rem ? 1 : 0);
        parts.emplace_back(rest.begin() + static_cast<std::ptrdiff_t>(at),
                           rest.begin() + static_cast<std::ptrdiff_t>(at + len));
        at += len;
    }

    for (int s = 0; s < subsets; ++s) {
        std::vector<const core::Instance*> train;
        train.reserve(n);
        for (int o = 0; o < subsets; ++o)
            if (o != s) train.insert(train.end(), parts[o].begin(), parts[o].end());
        const std::size_t removed = filter_leaked(train, test);
        if (removed > 0)
            plan.notes.push_back(target + " fold " + std::to_string(s) + ": removed " +
                                 std::to_string(removed) + " leaked train instances");
        Fold fold;
        fold.train = ids_of(train);
        fold.val = ids_of(parts[s]);
        fold.test = ids_of(test);
        fold.group = target;
        plan.folds.push_back(std::move(fold));
    }
    return plan;
}

SplitPlan split_loho_all(const LabeledDataset& ds, int subsets, std::uint64_t seed) {
    SplitPlan plan;
    plan.protocol = "loho-ood";
    plan.seed = seed;
    for (const auto& tag : dataset_hashtags(ds)) {
        SplitPlan one = split_leave_one_hashtag_out(ds, tag, subsets, seed);
        for (auto& fold : one.folds) plan.folds.push_back(std::move(fold));
        for (auto& note : one.notes) plan.notes.push_back(std::move(note));
    }
    return plan;
}

SplitPlan split_temporal(const LabeledDataset& ds, const std::string& hashtag, int windows,
                         int train_windows, std::uint64_t seed) {
    SplitPlan plan;
    plan.protocol = "temporal";
    plan.seed = seed;
    const std::string group = hashtag.empty() ? "all" : hashtag;

    std::vector<const core::Instance*> subset;
    for (const auto& inst : ds.instances)
        if (hashtag.empty() || inst.hashtag == hashtag) subset.push_back(&inst);

    auto by_time = [](const core::Instance* a, const core::Instance* b) {
        if (a->event_time != b->event_time) return a->event_time < b->event_time;
        return a->instance_id < b->instance_id;
    };

    std::vector<const core::Instance*> positives;
    for (const auto* inst : subset)
        if (inst->label == 1) positives.push_back(inst);
    std::sort(positives.begin(), positives.end(), by_time);

    const std::size_t P = positives.size();
    const auto W = static_cast<std::size_t>(windows);
    if (P < W)
        throw std::runtime_error("temporal split needs at least " + std::to_string(windows) +
                                 " positives in " + group + ", have " + std::to_string(P));

    // Window cut ranks: equal positive counts, remainder in the last window,
    // then each cut slides forward over runs of equal timestamps so no
    // timestamp straddles a boundary.
    const std::size_t q = P / W;
    std::vector<std::size_t> ends;
    std::size_t start = 0;
    for (std::size_t w = 0; w < W; ++w) {
        std::size_t end = (w + 1 == W) ? P : std::min(start + q, P);
        if (w + 1 < W)
            while (end < P && end > 0 &&
                   positives[end]->event_time == positives[end - 1]->event_time)
                ++end;
        if (end <= start)
            throw std::runtime_error("not enough distinct positive timestamps for " +
                                     std::to_string(windows) + " windows in " + group);
        ends.push_back(end);
        start = end;
    }

    std::vector<std::int64_t> bounds;  // last positive timestamp per window
    for (std::size_t w = 0; w < W; ++w) bounds.push_back(positives[ends[w] - 1]->event_time);

    // Every instance lands in the first window whose bound covers it; equal
    // timestamps therefore stay in the earlier window.
    std::vector<std::vector<const core::Instance*>> window_members(W);
    for (const auto* inst : subset) {
        std::size_t w = W - 1;
        for (std::size_t k = 0; k < W; ++k) {
            if (inst->event_time <= bounds[k]) {
                w = k;
                break;
            }
        }
        window_members[w].push_back(inst);
    }

    const auto T = static_cast<std::size_t>(train_windows);
    for (std::size_t f = 0; f + T < W; ++f) {
        std::vector<const core::Instance*> train;
        for (std::size_t w = f; w < f + T; ++w)
            train.insert(train.end(), window_members[w].begin(), window_members[w].end());
        std::vector<const core::Instance*> test = window_members[f + T];
        std::sort(train.begin(), train.end(), by_time);
        std::sort(test.begin(), test.end(), by_time);

        const std::size_t removed = filter_leaked(train, test);
        if (removed > 0)
            plan.notes.push_back(group + " fold " + std::to_string(f) + ": removed " +
                                 std::to_string(removed) + " leaked train instances");

        const std::size_t n_val = train.size() / 10;
        std::vector<const core::Instance*> val(train.end() - static_cast<std::ptrdiff_t>(n_val),
                                               train.end());
        train.resize(train.size() - n_val);

        Fold fold;
        fold.train = ids_of(train);
        fold.val = ids_of(val);
        fold.test = ids_of(test);
        fold.group = group;
        plan.folds.push_back(std::move(fold));
    }
    return plan;
}

SplitPlan split_temporal_all(const LabeledDataset& ds, int windows, int train_windows,
                             std::uint64_t seed) {
    SplitPlan plan;
    plan.protocol = "temporal";
    plan.seed = seed;
    for (const auto& tag : dataset_hashtags(ds)) {
        try {
            SplitPlan one = split_temporal(ds, tag, windows, train_windows, seed);
            for (auto& fold : one.folds) plan.folds.push_back(std::move(fold));
            for (auto& note : one.notes) plan.notes.push_back(std::move(note));
        } catch (const std::runtime_error& e) {
            plan.notes.push_back(std::string("skipped hashtag ") + tag + ": " + e.what());
        }
    }
    if (plan.folds.empty())
        throw std::runtime_error("no hashtag has enough positives for temporal splits");
    return plan;
}

void write_split_plan(const SplitPlan& plan, const std::string& path) {
    ordered_json j;
    j["protocol"] = plan.protocol;
    j["seed"] = plan.seed;
    ordered_json folds = ordered_json::array();
    for (const auto& fold : plan.folds) {
        ordered_json f;
        if (!fold.group.empty()) f["group"] = fold.group;
        f["train"] = fold.train;
        f["val"] = fold.val;
        f["test"] = fold.test;
        folds.push_back(std::move(f));
    }
    j["folds"] = std::move(folds);

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write split plan: " + path);
    out << j.dump(2) << '\n';
}

SplitPlan read_split_plan(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read split plan: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw std::runtime_error("invalid split plan " + path + ": " + e.what());
    }
    SplitPlan plan;
    plan.protocol = j.at("protocol").get<std::string>();
    plan.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& f : j.at("folds")) {
        Fold fold;
        fold.group = f.value("group", std::string());
        fold.train = f.at("train").get<std::vector<std::string>>();
        fold.val = f.at("val").get<std::vector<std::string>>();
        fold.test = f.at("test").get<std::vector<std::string>>();
        plan.folds.push_back(std::move(fold));
    }
    return plan;
}

}  // namespace repostlab::datasets
