#pragma once

#include <cstdint>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace lowfreq {

struct BootstrapCI {
    double point = 0.0;
    double low = 0.0;
    double high = 0.0;
    double alpha = 0.05;
    int n_resamples = 1000;
    std::uint64_t seed = 0;
};

enum class Alternative { greater, less, two_sided };

struct UTestResult {
    double u = 0.0;  // U statistic for the first sample (ties count 1/2)
    double p = 1.0;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    Alternative alternative = Alternative::greater;
    bool exact = false;
};

/// Empirical percentile with linear interpolation (values need not be
/// sorted; q in [0, 1]).
double percentile(std::vector<double> values, double q);

/// Percentile bootstrap over item indices: the statistic receives the
/// resampled index multiset and must be defined on any non-empty resample.
/// The random stream is split per resample index, so a given (seed,
/// n_items, n_resamples) always yields the same interval regardless of
/// evaluation order. Throws TooFewItems for fewer than two items.
BootstrapCI bootstrap_ci(std::size_t n_items,
                         const std::function<double(const std::vector<std::size_t>&)>& statistic,
                         double alpha = 0.05, int n_resamples = 1000, std::uint64_t seed = 0);

/// Convenience wrapper: bootstrap CI for the mean of a value vector.
BootstrapCI bootstrap_ci_mean(std::span<const double> values, double alpha = 0.05,
                              int n_resamples = 1000, std::uint64_t seed = 0);

/// Mann-Whitney U test. U = sum over pairs of [a_i > b_j] + 1/2*[a_i == b_j].
/// Exact p by null-distribution enumeration when min(n1, n2) <= 8 and there
/// are no ties; otherwise the normal approximation with tie-corrected
/// variance and continuity correction.
UTestResult mann_whitney_u(std::span<const double> a, std::span<const double> b,
                           Alternative alternative = Alternative::greater);

}  // namespace lowfreq
