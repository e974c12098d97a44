#pragma once

#include <functional>
#include <vector>

namespace wwrt {

struct NelderMeadResult {
    std::vector<double> point;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Downhill simplex minimization. The simplex starts at `start` with one
// vertex displaced by `step[i]` along each coordinate; stops when the
// simplex value spread falls below tol.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> start, std::vector<double> step,
                             double tol = 1e-8, int max_iter = 500);

} // namespace wwrt
