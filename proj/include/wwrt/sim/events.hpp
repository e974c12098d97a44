#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "wwrt/epi/types.hpp"

namespace wwrt::sim {

// Configuration of one stochastic SEIRR run. Times are on the observation
// scale: day 0 is the day before the first sample, the warm-up occupies
// [-warmup, 0). R0 changepoints may therefore carry negative times; the
// first value applies from the start of the simulation.
struct SimConfig {
    long population = 0;
    long initial_e = 0;
    long initial_i = 0;
    std::vector<std::pair<double, double>> r0_schedule; // (time, R0 >= 0)
    epi::RateParams rates;
    double warmup = 0.0;
    double horizon = 0.0;
    std::uint64_t seed = 0;

    void validate() const;
    double beta_at(double t) const; // R0(t) * nu
};

// Full transition history of one infected individual. All future times are
// drawn when the individual is infected, so records extend past the horizon.
// Seed individuals start at -warmup; initial-I seeds have onset equal to
// their (unobserved) infection time.
struct IndividualRecord {
    double infection = 0.0;
    double onset = 0.0;
    double recovery = 0.0;
    double stop = 0.0;
};

class EventLog {
public:
    EventLog(long population, double warmup, double horizon,
             std::vector<IndividualRecord> individuals);

    long population() const { return population_; }
    double warmup() const { return warmup_; }
    double horizon() const { return horizon_; }
    double start_time() const { return -warmup_; }
    const std::vector<IndividualRecord>& individuals() const { return individuals_; }

    // (S, E, I, R1, R2) at time t, reconstructed from the per-individual
    // records; always sums to the population.
    std::array<double, 5> counts_at(double t) const;

    // Number of E->I transitions in (t_lo, t_hi].
    long onsets_between(double t_lo, double t_hi) const;

    // Individuals currently shedding (in I or R1) at t, as indices into
    // individuals().
    std::vector<std::size_t> shedding_at(double t) const;

    // Population not yet in R2 at time t (the paper's P).
    double population_not_removed(double t) const;

private:
    long population_ = 0;
    double warmup_ = 0.0;
    double horizon_ = 0.0;
    std::vector<IndividualRecord> individuals_;
    // Sorted copies of each transition column for O(log n) count queries.
    std::vector<double> sorted_infection_, sorted_onset_, sorted_recovery_, sorted_stop_;
};

// Event-driven SEIRR simulation: every newly infected individual receives
// its full future transition schedule (Exp(gamma), Exp(nu), Exp(eta)
// increments) at infection time; the next event is the earliest pending
// transition, candidate infection (total rate beta*s*i/N) or R0 changepoint.
EventLog simulate_epidemic(const SimConfig& config);

} // namespace wwrt::sim
