#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace wwrt {

inline double logit(double p) { return std::log(p / (1.0 - p)); }
inline double logistic(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    double e = std::exp(x);
    return e / (1.0 + e);
}

double normal_quantile(double p);

inline double normal_logpdf(double x, double mean, double sd) {
    static const double half_log_2pi = 0.9189385332046727;
    double z = (x - mean) / sd;
    return -half_log_2pi - std::log(sd) - 0.5 * z * z;
}

// Empirical quantile with linear interpolation between order statistics
// (the type-7 rule). Sorts a copy.
double sample_quantile(std::vector<double> values, double p);

inline double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double variance_of(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

inline double median_of(std::vector<double> v) { return sample_quantile(std::move(v), 0.5); }

} // namespace wwrt
