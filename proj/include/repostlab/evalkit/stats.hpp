#pragma once

#include <cstddef>
#include <vector>

namespace repostlab::evalkit {

struct Aggregate {
    double mu = 0.0;
    double sigma = 0.0;
};

// Mean and population standard deviation of raw scores.
Aggregate mean_std(const std::vector<double>& xs);

// Mixture of per-group score distributions: the grand mean of the group means
// and the square root of within-group plus between-group variance.  With
// equal group sizes this reproduces the pooled mean and population deviation
// of the underlying scores exactly.
Aggregate aggregate_scores(const std::vector<double>& mus, const std::vector<double>& sigmas);

struct TTestResult {
    double t = 0.0;
    int df = 0;
    double p = 0.0;  // NaN when the differences have zero variance
};

// Two-sided paired t test on matched score vectors.
TTestResult paired_t_test(const std::vector<double>& a, const std::vector<double>& b);

struct WilcoxonResult {
    double w_plus = 0.0;
    std::size_t n_used = 0;
    double p = 1.0;
    bool exact = false;
};

// Two-sided Wilcoxon signed-rank test with midranks for ties.  Zero
// differences are dropped; up to 20 surviving pairs the null distribution is
// enumerated exactly, beyond that a tie-corrected normal approximation with
// continuity correction is used.  Throws when every difference is zero.
WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b);

double normal_cdf(double z);

// Regularized incomplete beta function I_x(a, b) by Lentz's continued
// fraction; the t distribution's tail comes from it.
double incomplete_beta(double a, double b, double x);

struct CollinearityResult {
    double fraction = 0.0;          // |r| > threshold share of usable pairs
    std::size_t pairs_total = 0;    // usable feature pairs
    std::size_t pairs_high = 0;
    std::size_t pairs_skipped = 0;  // constant or too little overlap
};

// Pairwise Pearson correlations over rows, dropping rows with a missing value
// in either feature of a pair.
CollinearityResult collinearity_screen(const std::vector<std::vector<double>>& rows,
                                       double threshold = 0.7);

}  // namespace repostlab::evalkit
