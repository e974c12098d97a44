#include "wwrt/sim/shedding.hpp"

#include <cmath>
#include <stdexcept>

namespace wwrt::sim {

SheddingProfile::SheddingProfile(std::vector<double> knot_days, std::vector<double> knot_log10)
    : days_(std::move(knot_days)), values_(std::move(knot_log10)) {
    if (days_.size() < 2 || days_.size() != values_.size())
        throw std::invalid_argument("SheddingProfile: need >= 2 matching knots");
    for (std::size_t i = 1; i < days_.size(); ++i)
        if (!(days_[i] > days_[i - 1]))
            throw std::invalid_argument("SheddingProfile: knot days must be increasing");
    for (double v : values_)
        if (!std::isfinite(v)) throw std::invalid_argument("SheddingProfile: non-finite knot");
    if (!(days_.back() > 0.0))
        throw std::invalid_argument("SheddingProfile: support must extend past 0");

    // Natural cubic spline second derivatives (tridiagonal solve).
    const std::size_t n = days_.size();
    second_deriv_.assign(n, 0.0);
    if (n > 2) {
        std::vector<double> u(n, 0.0);
        for (std::size_t i = 1; i + 1 < n; ++i) {
            double sig = (days_[i] - days_[i - 1]) / (days_[i + 1] - days_[i - 1]);
            double p = sig * second_deriv_[i - 1] + 2.0;
            second_deriv_[i] = (sig - 1.0) / p;
            double rhs = (values_[i + 1] - values_[i]) / (days_[i + 1] - days_[i]) -
                         (values_[i] - values_[i - 1]) / (days_[i] - days_[i - 1]);
            u[i] = (6.0 * rhs / (days_[i + 1] - days_[i - 1]) - sig * u[i - 1]) / p;
        }
        for (std::size_t i = n - 2; i >= 1; --i)
            second_deriv_[i] = second_deriv_[i] * second_deriv_[i + 1] + u[i];
    }
}

SheddingProfile SheddingProfile::default_profile() {
    return SheddingProfile(
        {0.0, 2.0, 4.0, 6.0, 9.0, 12.0, 16.0, 20.0, 24.0, 29.0},
        {2.0, 4.6, 5.6, 6.0, 5.7, 5.1, 4.2, 3.2, 2.0, 0.3});
}

double SheddingProfile::operator()(double s) const {
    if (!std::isfinite(s)) throw std::invalid_argument("SheddingProfile: non-finite argument");
    if (s < days_.front() || s > days_.back()) return 0.0;

    std::size_t hi = 1;
    while (hi + 1 < days_.size() && days_[hi] < s) ++hi;
    const std::size_t lo = hi - 1;
    const double h = days_[hi] - days_[lo];
    const double a = (days_[hi] - s) / h;
    const double b = (s - days_[lo]) / h;
    double y = a * values_[lo] + b * values_[hi] +
               ((a * a * a - a) * second_deriv_[lo] + (b * b * b - b) * second_deriv_[hi]) *
                   (h * h) / 6.0;
    return std::max(y, 0.0);
}

} // namespace wwrt::sim
