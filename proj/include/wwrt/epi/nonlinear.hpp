#pragma once

#include "wwrt/epi/types.hpp"

namespace wwrt::epi {

// Fixed-step RK4 integration of the nonlinear S-variants (seir_c, seirr,
// seirr_c) under a piecewise-constant beta schedule (beta = R0 * nu).
// Integration substeps never straddle a changepoint or an output point;
// max_step defaults to 0.1 day.
std::vector<CompartmentState> solve_nonlinear(const CompartmentState& init,
                                              const StepSeries& beta_schedule,
                                              const RateParams& params, double population,
                                              const std::vector<double>& grid,
                                              double max_step = 0.1);

} // namespace wwrt::epi
