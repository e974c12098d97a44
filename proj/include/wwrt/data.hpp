#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace wwrt {

// One wastewater replicate measurement: copies/mL at a (possibly irregular)
// day offset from the model epoch.
struct WastewaterObs {
    double time = 0.0;
    int replicate = 0;
    double concentration = 0.0;
};

// Weekly case count for the interval (week_end - 7, week_end]; tests is the
// total diagnostic-test count for the same interval when available.
struct CaseObs {
    int week = 0; // 1-based index; week_end = 7 * week
    double count = 0.0;
    double tests = 0.0;
    bool has_tests = false;

    double week_end() const { return 7.0 * week; }
};

struct ObservationSet {
    std::vector<WastewaterObs> wastewater; // sorted by (time, replicate)
    std::vector<CaseObs> cases;            // sorted by week

    void validate(double horizon = std::numeric_limits<double>::infinity()) const {
        for (const auto& w : wastewater) {
            if (!(w.concentration > 0.0) || !std::isfinite(w.concentration))
                throw std::invalid_argument("ObservationSet: concentrations must be positive");
            if (w.time > horizon)
                throw std::invalid_argument("ObservationSet: wastewater time beyond horizon");
        }
        for (const auto& c : cases) {
            if (c.count < 0.0 || !std::isfinite(c.count))
                throw std::invalid_argument("ObservationSet: case counts must be >= 0");
            if (c.week_end() > horizon + 7.0)
                throw std::invalid_argument("ObservationSet: case week beyond horizon");
        }
    }
};

} // namespace wwrt
