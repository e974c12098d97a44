#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace wwrt::epi {

// Exit rates of the latent (gamma), infectious (nu) and shedding-recovered
// (eta) stages, in 1/days.
struct RateParams {
    double gamma = 0.0;
    double nu = 0.0;
    double eta = 0.0;

    void validate() const {
        if (!(gamma > 0.0) || !std::isfinite(gamma) || !(nu > 0.0) || !std::isfinite(nu) ||
            !(eta > 0.0) || !std::isfinite(eta))
            throw std::invalid_argument("RateParams: rates must be strictly positive and finite");
    }
};

enum class StateVariant {
    eirr,        // (E, I, R1, R2)
    eirr_c,      // (E, I, R1, R2, C) with cumulative E->I transitions
    eir_c,       // (E, I, R, C)
    seir_c,      // (S, E, I, R, C)
    seirr,       // (S, E, I, R1, R2)
    seirr_c,     // (S, E, I, R1, R2, C)
};

std::size_t state_dim(StateVariant v);
const std::vector<std::string>& state_names(StateVariant v);

// Compartment counts at one time point; layout given by the variant tag.
struct CompartmentState {
    StateVariant variant = StateVariant::eirr;
    std::vector<double> counts;

    CompartmentState() = default;
    CompartmentState(StateVariant v, std::vector<double> c) : variant(v), counts(std::move(c)) {
        if (counts.size() != state_dim(v))
            throw std::invalid_argument("CompartmentState: count vector does not match variant");
    }

    double total() const {
        double s = 0.0;
        for (double x : counts) s += x;
        return s;
    }
    void require_finite_nonnegative() const {
        for (double x : counts)
            if (!std::isfinite(x) || x < 0.0)
                throw std::invalid_argument("CompartmentState: entries must be finite and >= 0");
    }
};

// Piecewise-constant reproduction number (or, for S-models, basic
// reproduction number) over an ordered changepoint grid. values[i] applies
// on [times[i], times[i+1]).
struct StepSeries {
    std::vector<double> times;
    std::vector<double> values;

    void validate() const {
        if (times.empty() || times.size() != values.size())
            throw std::invalid_argument("StepSeries: times/values size mismatch or empty");
        for (std::size_t i = 1; i < times.size(); ++i)
            if (!(times[i] > times[i - 1]))
                throw std::invalid_argument("StepSeries: times must be strictly increasing");
        for (double v : values)
            if (!(v > 0.0) || !std::isfinite(v))
                throw std::invalid_argument("StepSeries: values must be strictly positive");
    }

    double at(double t) const {
        // Last segment whose start is <= t; before the first changepoint the
        // first value applies.
        std::size_t i = 0;
        while (i + 1 < times.size() && times[i + 1] <= t) ++i;
        return values[i];
    }
};

using RtTrajectory = StepSeries;

// alpha_t = R_t * nu on the same grid.
struct AlphaSchedule {
    StepSeries steps;

    static AlphaSchedule from_rt(const RtTrajectory& rt, double nu) {
        if (!(nu > 0.0)) throw std::invalid_argument("AlphaSchedule: nu must be positive");
        rt.validate();
        AlphaSchedule s;
        s.steps.times = rt.times;
        s.steps.values.reserve(rt.values.size());
        for (double r : rt.values) s.steps.values.push_back(r * nu);
        return s;
    }
};

// R_t = alpha_t / nu.
inline double effective_r(double alpha, double nu) {
    if (!(nu > 0.0)) throw std::invalid_argument("effective_r: nu must be positive");
    if (!(alpha >= 0.0)) throw std::invalid_argument("effective_r: alpha must be >= 0");
    return alpha / nu;
}

// R_t = (beta/nu) * S/N for models that carry the susceptible compartment.
inline double seir_effective_r(double beta, double nu, double S, double N) {
    if (!(nu > 0.0)) throw std::invalid_argument("seir_effective_r: nu must be positive");
    if (!(N > 0.0)) throw std::invalid_argument("seir_effective_r: N must be positive");
    if (!(S >= 0.0 && S <= N)) throw std::invalid_argument("seir_effective_r: S outside [0,N]");
    return beta / nu * S / N;
}

} // namespace wwrt::epi
