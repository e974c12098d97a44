#pragma once

#include <Eigen/Dense>

#include "wwrt/epi/types.hpp"

namespace wwrt::epi {

// Generator of the linear EIRR system for a fixed alpha, state order
// (E, I, R1, R2). The I column carries the immigration rate alpha, so total
// mass grows whenever alpha > 0; the other columns sum to zero.
Eigen::Matrix4d build_eirr_generator(double alpha, const RateParams& params);

// Linear generators for the bookkeeping variants. eirr_c appends a
// cumulative-incidence row dC/dt = gamma*E; eir_c is (E, I, R, C) with
// dR/dt = nu*I and the same C row.
Eigen::MatrixXd build_linear_generator(StateVariant variant, double alpha, const RateParams& params);

// exp(V*dt). Eigendecomposition with the analytically known spectrum;
// falls back to scaling-and-squaring Pade when eigenvalues nearly collide
// (the closed-form entries have removable singularities there).
Eigen::MatrixXd linear_propagator(StateVariant variant, double alpha, const RateParams& params,
                                  double dt);

// exp(V*dt) * state for a caller-supplied generator. Output clamped at 0
// from below (tiny negative round-off only).
CompartmentState propagate_linear(const CompartmentState& state, const Eigen::MatrixXd& generator,
                                  double dt);

// Sequential closed-form propagation of a piecewise-constant alpha schedule
// over an output grid. Every changepoint must lie on the grid.
std::vector<CompartmentState> solve_piecewise(const CompartmentState& init,
                                              const AlphaSchedule& schedule,
                                              const RateParams& params,
                                              const std::vector<double>& grid);

} // namespace wwrt::epi
