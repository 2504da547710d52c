#include "curh/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace curh::stats {

double mean(std::span<const double> v) {
    if (v.empty()) return 0.0;
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_std(std::span<const double> v) {
    if (v.size() < 2) return 0.0;
    const double m = mean(v);
    double ss = 0.0;
    for (double x : v) {
        const double d = x - m;
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

std::vector<double> zscores(std::span<const double> v) {
    std::vector<double> out(v.size(), 0.0);
    const double sd = sample_std(v);
    if (sd == 0.0) return out;
    const double m = mean(v);
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = (v[i] - m) / sd;
    return out;
}

double percentile_sorted(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw std::invalid_argument("percentile of empty vector");
    if (q <= 0.0) return sorted.front();
    if (q >= 1.0) return sorted.back();
    const double rank = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(rank);
    const double frac = rank - static_cast<double>(lo);
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
    LinearFit fit;
    fit.n = x.size();
    if (x.size() != y.size() || x.size() < 2) return fit;
    const double mx = mean(x), my = mean(y);
    double sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx > 0.0) {
        fit.slope = sxy / sxx;
        fit.intercept = my - *fit.slope * mx;
    }
    if (sxx > 0.0 && syy > 0.0) {
        fit.pearson_r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    }
    return fit;
}

Summary summarize(std::span<const double> v) {
    Summary s;
    s.count = v.size();
    if (v.empty()) return s;
    std::vector<double> sorted(v.begin(), v.end());
    std::sort(sorted.begin(), sorted.end());
    s.mean = mean(v);
    s.std = sample_std(v);
    s.min = sorted.front();
    s.q25 = percentile_sorted(sorted, 0.25);
    s.median = percentile_sorted(sorted, 0.50);
    s.q75 = percentile_sorted(sorted, 0.75);
    s.max = sorted.back();
    return s;
}

} // namespace curh::stats
