#pragma once

#include <cstddef>
#include <vector>

namespace wwrt::sim {

// Mean log10 genome concentration shed as a function of days since
// infectious onset. Natural cubic spline through the knots, clipped at 0
// from below; zero contribution outside [0, t_max]. With two knots the
// natural spline reduces to linear interpolation.
class SheddingProfile {
public:
    SheddingProfile(std::vector<double> knot_days, std::vector<double> knot_log10);

    // Knot table shipped as the default: rises over the first six days to a
    // peak and decays monotonically towards zero by day 29. Placeholder
    // shape, not literature values; override from config for real analyses.
    static SheddingProfile default_profile();

    double operator()(double days_since_onset) const;
    double t_max() const { return days_.back(); }
    const std::vector<double>& knot_days() const { return days_; }
    const std::vector<double>& knot_values() const { return values_; }

private:
    std::vector<double> days_;
    std::vector<double> values_;
    std::vector<double> second_deriv_;
};

} // namespace wwrt::sim
