#include "wwrt/sim/observe.hpp"

#include "wwrt/math/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace wwrt::sim {

double population_concentration(const EventLog& log, const SheddingProfile& profile, double t,
                                double sd_log10, std::uint64_t seed) {
    if (!(sd_log10 >= 0.0)) throw std::invalid_argument("population_concentration: sd < 0");
    if (t < log.start_time() || t > log.horizon())
        throw std::invalid_argument("population_concentration: time outside simulated window");

    static const double ln10 = std::log(10.0);
    Rng rng(seed);
    double total = 0.0;
    for (std::size_t idx : log.shedding_at(t)) {
        const double s = t - log.individuals()[idx].onset;
        if (s < 0.0 || s > profile.t_max()) continue;
        const double mu = profile(s);
        total += std::exp(ln10 * rng.normal(mu, sd_log10));
    }
    return total / static_cast<double>(log.population());
}

std::vector<double> population_concentration_series(const EventLog& log,
                                                    const SheddingProfile& profile,
                                                    const std::vector<double>& times,
                                                    double sd_log10, std::uint64_t seed) {
    std::vector<double> out;
    out.reserve(times.size());
    for (std::size_t k = 0; k < times.size(); ++k)
        out.push_back(population_concentration(log, profile, times[k], sd_log10,
                                               split_seed(seed, k)));
    return out;
}

ObservationSet synthesize_wastewater(const std::vector<double>& times,
                                     const std::vector<double>& true_conc, double rho, double tau,
                                     double df, int n_replicates,
                                     const std::vector<double>& sample_times,
                                     std::uint64_t seed) {
    if (times.size() != true_conc.size())
        throw std::invalid_argument("synthesize_wastewater: series size mismatch");
    if (!(rho > 0.0) || !(tau >= 0.0) || !(df > 0.0))
        throw std::invalid_argument("synthesize_wastewater: rho > 0, tau >= 0, df > 0 required");
    if (n_replicates < 1)
        throw std::invalid_argument("synthesize_wastewater: need >= 1 replicate");

    Rng rng(seed);
    ObservationSet out;
    out.wastewater.reserve(sample_times.size() * static_cast<std::size_t>(n_replicates));
    for (double t : sample_times) {
        double truth = -1.0;
        for (std::size_t k = 0; k < times.size(); ++k)
            if (std::abs(times[k] - t) < 1e-9) { truth = true_conc[k]; break; }
        if (truth < 0.0)
            throw std::invalid_argument("synthesize_wastewater: sample time not in series");
        if (!(truth > 0.0))
            throw std::invalid_argument("synthesize_wastewater: true concentration must be > 0");
        const double location = std::log(truth) + std::log(rho);
        for (int j = 1; j <= n_replicates; ++j) {
            const double logx = (tau == 0.0) ? location : rng.student_t(df, location, tau);
            out.wastewater.push_back({t, j, std::exp(logx)});
        }
    }
    return out;
}

ObservationSet synthesize_cases(const EventLog& log, double psi, double phi, int n_weeks,
                                std::uint64_t seed) {
    if (!(psi > 0.0 && psi <= 1.0))
        throw std::invalid_argument("synthesize_cases: psi must be in (0,1]");
    if (!(phi > 0.0)) throw std::invalid_argument("synthesize_cases: phi must be > 0");
    if (n_weeks < 1) throw std::invalid_argument("synthesize_cases: need >= 1 week");

    Rng rng(seed);
    ObservationSet out;
    out.cases.reserve(static_cast<std::size_t>(n_weeks));
    for (int u = 1; u <= n_weeks; ++u) {
        const double t_u = static_cast<double>(log.onsets_between(7.0 * (u - 1), 7.0 * u));
        CaseObs obs;
        obs.week = u;
        obs.count = static_cast<double>(rng.neg_binomial(t_u * psi, phi));
        out.cases.push_back(obs);
    }
    return out;
}

} // namespace wwrt::sim
