#pragma once

#include <cstdint>
#include <vector>

#include "wwrt/data.hpp"
#include "wwrt/sim/events.hpp"
#include "wwrt/sim/shedding.hpp"

namespace wwrt::sim {

// Realized population-level genome concentration at time t: sum over
// individuals in I or R1 of 10^Normal(mu(t - onset), sd_log10), divided by
// the population size. Individuals past the profile support contribute
// nothing. sd_log10 = 0 gives the deterministic 10^mu sum.
double population_concentration(const EventLog& log, const SheddingProfile& profile, double t,
                                double sd_log10, std::uint64_t seed);

// Daily concentration series over the given times; day k uses the stream
// split_seed(seed, k).
std::vector<double> population_concentration_series(const EventLog& log,
                                                    const SheddingProfile& profile,
                                                    const std::vector<double>& times,
                                                    double sd_log10, std::uint64_t seed);

// Noisy replicate concentrations around a true concentration series:
// log X = log(true_conc) + log(rho) + tau * T_df, replicates i.i.d.
// tau = 0 and/or df = +inf give the degenerate/normal limits.
ObservationSet synthesize_wastewater(const std::vector<double>& times,
                                     const std::vector<double>& true_conc, double rho, double tau,
                                     double df, int n_replicates,
                                     const std::vector<double>& sample_times, std::uint64_t seed);

// Weekly observed cases O_u ~ NegBin(T_u * psi, phi) where T_u counts E->I
// transitions in ((u-1)*7, u*7].
ObservationSet synthesize_cases(const EventLog& log, double psi, double phi, int n_weeks,
                                std::uint64_t seed);

} // namespace wwrt::sim
