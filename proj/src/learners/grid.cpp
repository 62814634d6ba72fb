#include "repostlab/learners/grid.hpp"

#include <stdexcept>

#include "repostlab/evalkit/metrics.hpp"
#include "repostlab/util/rng.hpp"

namespace repostlab::learners {

std::vector<GBDTParams> appendix_grid(datasets::RatioTag ratio, std::uint64_t seed) {
    static const int depths[] = {6, 7, 8, 9, 10};
    static const double rates[] = {0.3, 0.35, 0.4};
    static const int rounds[] = {100, 150, 200};
    static const double child_weights[] = {1.0, 2.0, 3.0};
    static const double subsamples[] = {0.8, 0.9, 1.0};
    std::vector<double> pos_weights;
    switch (ratio) {
        case datasets::RatioTag::one_five:
            pos_weights = {1.0, 2.0, 3.0, 4.0, 5.0};
            break;
        case datasets::RatioTag::one_ten:
            pos_weights = {1.0, 3.25, 5.5, 7.75, 10.0};
            break;
        default:
            pos_weights = {1.0};
            break;
    }

    Rng base = make_seed_rng(seed);
    std::vector<GBDTParams> grid;
    std::uint64_t at = 0;
    for (int md : depths) {
        for (double lr : rates) {
            for (int ne : rounds) {
                for (double mcw : child_weights) {
                    for (double ss : subsamples) {
                        for (double spw : pos_weights) {
                            GBDTParams p;
                            p.max_depth = md;
                            p.learning_rate = lr;
                            p.n_estimators = ne;
                            p.min_child_weight = mcw;
                            p.subsample = ss;
                            p.scale_pos_weight = spw;
                            p.seed = base.derive(at++).seed();
                            grid.push_back(p);
                        }
                    }
                }
            }
        }
    }
    return grid;
}

GridResult grid_search(const DMatrix& train, const DMatrix& val,
                       const std::vector<GBDTParams>& grid) {
    if (grid.empty()) throw std::invalid_argument("grid_search: empty grid");
    GridResult result;
    result.table.reserve(grid.size());
    for (const auto& params : grid) {
        GBDTModel model = gbdt_train(train, params, &val);
        auto preds = evalkit::threshold_labels(gbdt_predict(model, val.rows));
        double score = evalkit::f1(val.labels, preds);
        result.table.push_back({params, score});
        if (score > result.best_f1) {
            result.best_f1 = score;
            result.best = params;
        }
    }
    return result;
}

}  // namespace repostlab::learners
