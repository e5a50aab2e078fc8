#include "lowfreq/stats.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lowfreq/error.hpp"

namespace lowfreq {

namespace {

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }
double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Null distribution of the U statistic: counts[u] = number of rank
/// configurations of n1 items among n1+n2 with U == u. Built by the
/// standard recurrence f(m, n, u) = f(m-1, n, u - n) + f(m, n-1, u),
/// iterated over n so memory stays (m+1) x (m*n+1).
std::vector<double> u_null_distribution(std::size_t n1, std::size_t n2) {
    const std::size_t m = n1;
    const std::size_t u_max = n1 * n2;
    std::vector<std::vector<double>> current(m + 1, std::vector<double>(u_max + 1, 0.0));
    for (std::size_t mm = 0; mm <= m; ++mm) current[mm][0] = 1.0;  // n = 0
    for (std::size_t n = 1; n <= n2; ++n) {
        std::vector<std::vector<double>> next(m + 1, std::vector<double>(u_max + 1, 0.0));
        next[0][0] = 1.0;
        for (std::size_t mm = 1; mm <= m; ++mm) {
            for (std::size_t u = 0; u <= mm * n; ++u) {
                double ways = current[mm][u];  // f(mm, n-1, u)
                if (u >= n) ways += next[mm - 1][u - n];
                next[mm][u] = ways;
            }
        }
        current = std::move(next);
    }
    return current[m];
}

}  // namespace

double percentile(std::vector<double> values, double q) {
    if (values.empty()) raise(ErrorKind::TooFewItems, "percentile of empty set");
    std::sort(values.begin(), values.end());
    const double h = q * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= values.size()) return values.back();
    const double frac = h - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

BootstrapCI bootstrap_ci(std::size_t n_items,
                         const std::function<double(const std::vector<std::size_t>&)>& statistic,
                         double alpha, int n_resamples, std::uint64_t seed) {
    if (n_items < 2) raise(ErrorKind::TooFewItems, "bootstrap needs at least two items");
    if (!(alpha > 0.0) || alpha >= 1.0) raise(ErrorKind::InvalidParameter, "alpha must be in (0,1)");
    if (n_resamples < 1) raise(ErrorKind::InvalidParameter, "n_resamples must be >= 1");

    BootstrapCI ci;
    ci.alpha = alpha;
    ci.n_resamples = n_resamples;
    ci.seed = seed;

    std::vector<std::size_t> identity(n_items);
    for (std::size_t i = 0; i < n_items; ++i) identity[i] = i;
    ci.point = statistic(identity);

    std::vector<double> stats(static_cast<std::size_t>(n_resamples));
    std::vector<std::size_t> indices(n_items);
    for (int r = 0; r < n_resamples; ++r) {
        // independent stream per resample: parallel and serial runs agree
        std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(r))));
        std::uniform_int_distribution<std::size_t> pick(0, n_items - 1);
        for (std::size_t i = 0; i < n_items; ++i) indices[i] = pick(rng);
        stats[static_cast<std::size_t>(r)] = statistic(indices);
    }
    ci.low = percentile(stats, alpha / 2.0);
    ci.high = percentile(std::move(stats), 1.0 - alpha / 2.0);
    return ci;
}

BootstrapCI bootstrap_ci_mean(std::span<const double> values, double alpha, int n_resamples,
                              std::uint64_t seed) {
    return bootstrap_ci(
        values.size(),
        [&values](const std::vector<std::size_t>& idx) {
            double sum = 0.0;
            for (std::size_t i : idx) sum += values[i];
            return sum / static_cast<double>(idx.size());
        },
        alpha, n_resamples, seed);
}

UTestResult mann_whitney_u(std::span<const double> a, std::span<const double> b,
                           Alternative alternative) {
    if (a.empty() || b.empty()) raise(ErrorKind::TooFewItems, "both samples must be non-empty");
    const std::size_t n1 = a.size();
    const std::size_t n2 = b.size();

    // midranks over the pooled sample
    struct Tagged { double value; bool from_a; };
    std::vector<Tagged> pooled;
    pooled.reserve(n1 + n2);
    for (double v : a) pooled.push_back({v, true});
    for (double v : b) pooled.push_back({v, false});
    std::sort(pooled.begin(), pooled.end(),
              [](const Tagged& x, const Tagged& y) { return x.value < y.value; });

    double rank_sum_a = 0.0;
    double tie_term = 0.0;
    bool has_ties = false;
    std::size_t i = 0;
    while (i < pooled.size()) {
        std::size_t j = i;
        while (j < pooled.size() && pooled[j].value == pooled[i].value) ++j;
        const double t = static_cast<double>(j - i);
        if (t > 1.0) {
            has_ties = true;
            tie_term += t * t * t - t;
        }
        const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) {
            if (pooled[k].from_a) rank_sum_a += midrank;
        }
        i = j;
    }
    const double u = rank_sum_a - static_cast<double>(n1) * (static_cast<double>(n1) + 1.0) / 2.0;

    UTestResult result;
    result.u = u;
    result.n1 = n1;
    result.n2 = n2;
    result.alternative = alternative;

    const double nn = static_cast<double>(n1) * static_cast<double>(n2);
    if (!has_ties && std::min(n1, n2) <= 8) {
        result.exact = true;
        const std::vector<double> counts =
            n1 <= n2 ? u_null_distribution(n1, n2) : u_null_distribution(n2, n1);
        double total = 0.0;
        for (double c : counts) total += c;
        // U is an integer here; tail sums over the exact distribution
        const auto u_int = static_cast<std::size_t>(std::llround(u));
        double ge = 0.0, le = 0.0;
        for (std::size_t uu = 0; uu < counts.size(); ++uu) {
            if (uu >= u_int) ge += counts[uu];
            if (uu <= u_int) le += counts[uu];
        }
        const double p_greater = ge / total;
        const double p_less = le / total;
        switch (alternative) {
            case Alternative::greater: result.p = p_greater; break;
            case Alternative::less: result.p = p_less; break;
            case Alternative::two_sided:
                result.p = std::min(1.0, 2.0 * std::min(p_greater, p_less));
                break;
        }
        return result;
    }

    const double n = static_cast<double>(n1 + n2);
    const double mean = nn / 2.0;
    double variance = nn / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
    if (variance <= 0.0) {
        // every value tied: the test carries no information
        result.p = alternative == Alternative::two_sided ? 1.0 : 0.5;
        return result;
    }
    const double sigma = std::sqrt(variance);
    const double p_greater = normal_sf((u - mean - 0.5) / sigma);
    const double p_less = normal_cdf((u - mean + 0.5) / sigma);
    switch (alternative) {
        case Alternative::greater: result.p = p_greater; break;
        case Alternative::less: result.p = p_less; break;
        case Alternative::two_sided:
            result.p = std::min(1.0, 2.0 * std::min(p_greater, p_less));
            break;
    }
    return result;
}

}  // namespace lowfreq
