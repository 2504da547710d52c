#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace curh::stats {

double mean(std::span<const double> v);

// Sample standard deviation (n-1 denominator). 0 for fewer than two values.
double sample_std(std::span<const double> v);

// (v - mean) / sample_std, elementwise. All zeros when the std is 0.
std::vector<double> zscores(std::span<const double> v);

// Quantile with linear interpolation between closest ranks: rank = q*(n-1).
// Input must be sorted ascending, non-empty. q in [0, 1].
double percentile_sorted(std::span<const double> sorted, double q);

struct LinearFit {
    std::size_t n = 0;
    std::optional<double> pearson_r; // absent when either variance is zero
    std::optional<double> slope;     // absent when x has zero variance
    std::optional<double> intercept;
};

// Pearson correlation and OLS line. r uses a single square root,
// r = Sxy / sqrt(Sxx * Syy), and is clamped to [-1, 1].
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

struct Summary {
    std::size_t count = 0;
    double mean = 0, std = 0, min = 0, q25 = 0, median = 0, q75 = 0, max = 0;
};

Summary summarize(std::span<const double> v);

} // namespace curh::stats
