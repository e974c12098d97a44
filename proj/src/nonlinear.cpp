#include "wwrt/epi/nonlinear.hpp"

#include <array>
#include <cmath>

namespace wwrt::epi {

namespace {

// dy/dt for the S-variants; beta constant within a substep.
void derivatives(StateVariant v, const RateParams& p, double beta, double n,
                 const std::vector<double>& y, std::vector<double>& dy) {
    const double s = y[0];
    const double e = y[1];
    const double i = y[2];
    const double infections = beta * i * s / n;
    const double onsets = p.gamma * e;
    const double recoveries = p.nu * i;
    dy[0] = -infections;
    dy[1] = infections - onsets;
    dy[2] = onsets - recoveries;
    switch (v) {
    case StateVariant::seir_c:
        dy[3] = recoveries;
        dy[4] = onsets;
        break;
    case StateVariant::seirr:
        dy[3] = recoveries - p.eta * y[3];
        dy[4] = p.eta * y[3];
        break;
    case StateVariant::seirr_c:
        dy[3] = recoveries - p.eta * y[3];
        dy[4] = p.eta * y[3];
        dy[5] = onsets;
        break;
    default:
        throw std::logic_error("derivatives: not a nonlinear variant");
    }
}

} // namespace

std::vector<CompartmentState> solve_nonlinear(const CompartmentState& init,
                                              const StepSeries& beta_schedule,
                                              const RateParams& params, double population,
                                              const std::vector<double>& grid, double max_step) {
    params.validate();
    beta_schedule.validate();
    init.require_finite_nonnegative();
    if (init.variant != StateVariant::seir_c && init.variant != StateVariant::seirr &&
        init.variant != StateVariant::seirr_c)
        throw std::invalid_argument("solve_nonlinear: variant must carry an S compartment");
    if (!(population > 0.0)) throw std::invalid_argument("solve_nonlinear: population must be > 0");
    if (!(max_step > 0.0) || max_step > 0.1 + 1e-12)
        throw std::invalid_argument("solve_nonlinear: step must be in (0, 0.1]");
    if (grid.size() < 2) throw std::invalid_argument("solve_nonlinear: grid needs >= 2 points");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("solve_nonlinear: grid must be strictly increasing");

    const std::size_t dim = init.counts.size();
    std::vector<double> y = init.counts;
    std::vector<double> k1(dim), k2(dim), k3(dim), k4(dim), tmp(dim);

    std::vector<CompartmentState> out;
    out.reserve(grid.size());
    out.push_back(init);

    for (std::size_t g = 1; g < grid.size(); ++g) {
        double t = grid[g - 1];
        const double t_end = grid[g];
        while (t < t_end - 1e-12) {
            // Stop at the next changepoint so beta stays constant over a step.
            double stop = t_end;
            for (double cp : beta_schedule.times)
                if (cp > t + 1e-12 && cp < stop) stop = cp;
            const double span = stop - t;
            const std::size_t nsub = static_cast<std::size_t>(std::ceil(span / max_step - 1e-12));
            const double h = span / static_cast<double>(nsub);
            const double beta = beta_schedule.at(t);
            for (std::size_t s = 0; s < nsub; ++s) {
                derivatives(init.variant, params, beta, population, y, k1);
                for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
                derivatives(init.variant, params, beta, population, tmp, k2);
                for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
                derivatives(init.variant, params, beta, population, tmp, k3);
                for (std::size_t i = 0; i < dim; ++i) tmp[i] = y[i] + h * k3[i];
                derivatives(init.variant, params, beta, population, tmp, k4);
                for (std::size_t i = 0; i < dim; ++i)
                    y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            }
            t = stop;
        }
        CompartmentState st = init;
        for (std::size_t i = 0; i < dim; ++i) {
            if (y[i] < -1e-9)
                throw std::runtime_error("solve_nonlinear: compartment went negative");
            st.counts[i] = std::max(y[i], 0.0);
        }
        out.push_back(std::move(st));
    }
    return out;
}

} // namespace wwrt::epi
