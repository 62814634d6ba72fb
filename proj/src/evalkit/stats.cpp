#include "repostlab/evalkit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace repostlab::evalkit {

Aggregate mean_std(const std::vector<double>& xs) {
    if (xs.empty()) throw std::invalid_argument("mean_std: empty input");
    double mu = 0.0;
    for (double x : xs) mu += x;
    mu /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mu) * (x - mu);
    var /= static_cast<double>(xs.size());
    return {mu, std::sqrt(var)};
}

Aggregate aggregate_scores(const std::vector<double>& mus, const std::vector<double>& sigmas) {
    if (mus.empty() || mus.size() != sigmas.size()) {
        throw std::invalid_argument("aggregate_scores: empty input or size mismatch");
    }
    const double k = static_cast<double>(mus.size());
    double grand = 0.0;
    for (double mu : mus) grand += mu;
    grand /= k;
    double within = 0.0, between = 0.0;
    for (std::size_t i = 0; i < mus.size(); ++i) {
        within += sigmas[i] * sigmas[i];
        between += (mus[i] - grand) * (mus[i] - grand);
    }
    return {grand, std::sqrt(within / k + between / k)};
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double incomplete_beta(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0) throw std::invalid_argument("incomplete_beta: a and b must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    if (x > (a + 1.0) / (a + b + 2.0)) return 1.0 - incomplete_beta(b, a, 1.0 - x);

    const double lbeta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    const double front = std::exp(a * std::log(x) + b * std::log1p(-x) - lbeta);

    // Lentz's algorithm on the standard continued fraction.
    double f = 1.0, c = 1.0, d = 0.0;
    for (int i = 0; i <= 300; ++i) {
        int m = i / 2;
        double numerator;
        if (i == 0) {
            numerator = 1.0;
        } else if (i % 2 == 0) {
            numerator = m * (b - m) * x / ((a + 2.0 * m - 1.0) * (a + 2.0 * m));
        } else {
            numerator = -(a + m) * (a + b + m) * x / ((a + 2.0 * m) * (a + 2.0 * m + 1.0));
        }
        d = 1.0 + numerator * d;
        if (std::fabs(d) < 1e-30) d = 1e-30;
        d = 1.0 / d;
        c = 1.0 + numerator / c;
        if (std::fabs(c) < 1e-30) c = 1e-30;
        f *= c * d;
        if (std::fabs(1.0 - c * d) < 1e-14) break;
    }
    return front * (f - 1.0) / a;
}

TTestResult paired_t_test(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("paired_t_test: size mismatch");
    if (a.size() < 2) throw std::invalid_argument("paired_t_test: needs at least two pairs");
    const std::size_t n = a.size();
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = a[i] - b[i];
    double mean = 0.0;
    for (double v : d) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : d) ss += (v - mean) * (v - mean);
    const double var = ss / static_cast<double>(n - 1);

    TTestResult res;
    res.df = static_cast<int>(n) - 1;
    if (var <= 0.0) {
        res.t = mean == 0.0 ? 0.0
                            : std::copysign(std::numeric_limits<double>::infinity(), mean);
        res.p = std::numeric_limits<double>::quiet_NaN();
        return res;
    }
    res.t = mean / std::sqrt(var / static_cast<double>(n));
    const double df = static_cast<double>(res.df);
    res.p = incomplete_beta(df / 2.0, 0.5, df / (df + res.t * res.t));
    res.p = std::min(1.0, res.p);
    return res;
}

WilcoxonResult wilcoxon_signed_rank(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("wilcoxon_signed_rank: size mismatch");
    std::vector<double> d;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double diff = a[i] - b[i];
        if (diff != 0.0) d.push_back(diff);
    }
    if (d.empty()) throw std::runtime_error("wilcoxon_signed_rank: all differences are zero");

    const std::size_t n = d.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return std::fabs(d[x]) < std::fabs(d[y]);
    });
    std::vector<double> rank(n, 0.0);
    std::vector<std::size_t> tie_sizes;
    std::size_t at = 0;
    while (at < n) {
        std::size_t stop = at + 1;
        while (stop < n && std::fabs(d[order[stop]]) == std::fabs(d[order[at]])) ++stop;
        const double mid = 0.5 * static_cast<double>(at + 1 + stop);
        for (std::size_t k = at; k < stop; ++k) rank[order[k]] = mid;
        tie_sizes.push_back(stop - at);
        at = stop;
    }
    double w_plus = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (d[i] > 0.0) w_plus += rank[i];
    }

    WilcoxonResult res;
    res.w_plus = w_plus;
    res.n_used = n;
    if (n <= 20) {
        res.exact = true;
        // Subset-sum distribution over doubled ranks, which are integers.
        std::vector<std::int64_t> scaled(n);
        std::int64_t total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            scaled[i] = std::llround(2.0 * rank[i]);
            total += scaled[i];
        }
        std::vector<std::uint64_t> count(static_cast<std::size_t>(total) + 1, 0);
        count[0] = 1;
        std::int64_t reach = 0;
        for (std::size_t i = 0; i < n; ++i) {
            reach += scaled[i];
            for (std::int64_t s = reach; s >= scaled[i]; --s) {
                count[static_cast<std::size_t>(s)] +=
                    count[static_cast<std::size_t>(s - scaled[i])];
            }
        }
        const auto w_scaled = static_cast<std::size_t>(std::llround(2.0 * w_plus));
        std::uint64_t le = 0, ge = 0;
        for (std::size_t s = 0; s < count.size(); ++s) {
            if (s <= w_scaled) le += count[s];
            if (s >= w_scaled) ge += count[s];
        }
        const auto denom = static_cast<double>(std::uint64_t{1} << n);
        res.p = std::min(1.0, 2.0 * static_cast<double>(std::min(le, ge)) / denom);
    } else {
        res.exact = false;
        const double nn = static_cast<double>(n);
        const double mean = nn * (nn + 1.0) / 4.0;
        double var = nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0;
        for (std::size_t t : tie_sizes) {
            const double tt = static_cast<double>(t);
            var -= (tt * tt * tt - tt) / 48.0;
        }
        if (var <= 0.0) throw std::runtime_error("wilcoxon_signed_rank: degenerate rank variance");
        const double shift = std::max(0.0, std::fabs(w_plus - mean) - 0.5);
        const double z = shift / std::sqrt(var);
        res.p = std::min(1.0, 2.0 * (1.0 - normal_cdf(z)));
    }
    return res;
}

CollinearityResult collinearity_screen(const std::vector<std::vector<double>>& rows,
                                       double threshold) {
    CollinearityResult res;
    if (rows.empty()) return res;
    const std::size_t m = rows[0].size();
    for (const auto& row : rows) {
        if (row.size() != m) throw std::invalid_argument("collinearity_screen: ragged rows");
    }
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = j + 1; k < m; ++k) {
            double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
            std::size_t cnt = 0;
            for (const auto& row : rows) {
                const double x = row[j], y = row[k];
                if (std::isnan(x) || std::isnan(y)) continue;
                sx += x;
                sy += y;
                sxx += x * x;
                syy += y * y;
                sxy += x * y;
                ++cnt;
            }
            if (cnt < 2) {
                ++res.pairs_skipped;
                continue;
            }
            const double nn = static_cast<double>(cnt);
            const double vx = sxx - sx * sx / nn;
            const double vy = syy - sy * sy / nn;
            if (vx <= 0.0 || vy <= 0.0) {
                ++res.pairs_skipped;
                continue;
            }
            const double r = (sxy - sx * sy / nn) / std::sqrt(vx * vy);
            ++res.pairs_total;
            if (std::fabs(r) > threshold) ++res.pairs_high;
        }
    }
    if (res.pairs_total > 0) {
        res.fraction = static_cast<double>(res.pairs_high) / static_cast<double>(res.pairs_total);
    }
    return res;
}

}  // namespace repostlab::evalkit
