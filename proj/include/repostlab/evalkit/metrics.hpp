#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace repostlab::evalkit {

// Hard labels from probabilities: strictly above the threshold is positive,
// so an untrained model's exact 0.5 answers land in the negative class.
inline std::vector<int> threshold_labels(const std::vector<double>& probs,
                                         double threshold = 0.5) {
    std::vector<int> out;
    out.reserve(probs.size());
    for (double p : probs) out.push_back(p > threshold ? 1 : 0);
    return out;
}

// F1 of the positive class, 2TP / (2TP + FP + FN); defined as 0 when the
// model finds no true positives and either side is empty.
inline double f1(const std::vector<int>& labels, const std::vector<int>& preds) {
    if (labels.empty() || labels.size() != preds.size()) {
        throw std::invalid_argument("f1: empty input or label/prediction size mismatch");
    }
    std::size_t tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] != 0 && labels[i] != 1) throw std::invalid_argument("f1: labels must be 0 or 1");
        if (preds[i] != 0 && preds[i] != 1) throw std::invalid_argument("f1: predictions must be 0 or 1");
        if (preds[i] == 1 && labels[i] == 1) ++tp;
        if (preds[i] == 1 && labels[i] == 0) ++fp;
        if (preds[i] == 0 && labels[i] == 1) ++fn;
    }
    const std::size_t denom = 2 * tp + fp + fn;
    if (denom == 0) return 0.0;
    return 2.0 * static_cast<double>(tp) / static_cast<double>(denom);
}

}  // namespace repostlab::evalkit
