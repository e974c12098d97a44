#include "wwrt/sim/events.hpp"

#include "wwrt/math/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace wwrt::sim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

long count_leq(const std::vector<double>& sorted, double t) {
    return static_cast<long>(std::upper_bound(sorted.begin(), sorted.end(), t) - sorted.begin());
}
} // namespace

void SimConfig::validate() const {
    if (population <= 0) throw std::invalid_argument("SimConfig: population must be positive");
    if (initial_e < 0 || initial_i < 0 || initial_e + initial_i > population)
        throw std::invalid_argument("SimConfig: initial E+I must fit in the population");
    rates.validate();
    if (r0_schedule.empty()) throw std::invalid_argument("SimConfig: empty R0 schedule");
    for (std::size_t k = 0; k < r0_schedule.size(); ++k) {
        if (!(r0_schedule[k].second >= 0.0) || !std::isfinite(r0_schedule[k].second))
            throw std::invalid_argument("SimConfig: R0 values must be finite and >= 0");
        if (k > 0 && !(r0_schedule[k].first > r0_schedule[k - 1].first))
            throw std::invalid_argument("SimConfig: schedule times must be increasing");
    }
    if (warmup < 0.0 || !(horizon > 0.0))
        throw std::invalid_argument("SimConfig: warmup must be >= 0 and horizon > 0");
}

double SimConfig::beta_at(double t) const {
    std::size_t i = 0;
    while (i + 1 < r0_schedule.size() && r0_schedule[i + 1].first <= t) ++i;
    return r0_schedule[i].second * rates.nu;
}

EventLog::EventLog(long population, double warmup, double horizon,
                   std::vector<IndividualRecord> individuals)
    : population_(population), warmup_(warmup), horizon_(horizon),
      individuals_(std::move(individuals)) {
    sorted_infection_.reserve(individuals_.size());
    sorted_onset_.reserve(individuals_.size());
    sorted_recovery_.reserve(individuals_.size());
    sorted_stop_.reserve(individuals_.size());
    for (const auto& r : individuals_) {
        if (!(r.infection <= r.onset && r.onset <= r.recovery && r.recovery <= r.stop))
            throw std::invalid_argument("EventLog: transition times out of order");
        sorted_infection_.push_back(r.infection);
        sorted_onset_.push_back(r.onset);
        sorted_recovery_.push_back(r.recovery);
        sorted_stop_.push_back(r.stop);
    }
    std::sort(sorted_infection_.begin(), sorted_infection_.end());
    std::sort(sorted_onset_.begin(), sorted_onset_.end());
    std::sort(sorted_recovery_.begin(), sorted_recovery_.end());
    std::sort(sorted_stop_.begin(), sorted_stop_.end());
}

std::array<double, 5> EventLog::counts_at(double t) const {
    const double infected = static_cast<double>(count_leq(sorted_infection_, t));
    const double onset = static_cast<double>(count_leq(sorted_onset_, t));
    const double recovered = static_cast<double>(count_leq(sorted_recovery_, t));
    const double stopped = static_cast<double>(count_leq(sorted_stop_, t));
    return {static_cast<double>(population_) - infected, infected - onset, onset - recovered,
            recovered - stopped, stopped};
}

long EventLog::onsets_between(double t_lo, double t_hi) const {
    return count_leq(sorted_onset_, t_hi) - count_leq(sorted_onset_, t_lo);
}

std::vector<std::size_t> EventLog::shedding_at(double t) const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < individuals_.size(); ++k)
        if (individuals_[k].onset <= t && t < individuals_[k].stop) out.push_back(k);
    return out;
}

double EventLog::population_not_removed(double t) const {
    return static_cast<double>(population_) - static_cast<double>(count_leq(sorted_stop_, t));
}

EventLog simulate_epidemic(const SimConfig& config) {
    config.validate();
    Rng rng(config.seed);

    const double start = -config.warmup;
    const double end = config.horizon;
    const double n = static_cast<double>(config.population);

    std::vector<IndividualRecord> records;
    records.reserve(static_cast<std::size_t>(config.initial_e + config.initial_i) + 64);

    using Event = std::pair<double, std::size_t>; // (time, individual)
    auto cmp = [](const Event& a, const Event& b) { return a.first > b.first; };
    std::priority_queue<Event, std::vector<Event>, decltype(cmp)> onsets(cmp), recoveries(cmp),
        stops(cmp);

    long s = config.population - config.initial_e - config.initial_i;
    long e = 0, i = 0, r1 = 0;

    auto admit = [&](double infection, bool already_infectious) {
        IndividualRecord rec;
        rec.infection = infection;
        if (already_infectious) {
            rec.onset = infection;
        } else {
            rec.onset = infection + rng.exponential(config.rates.gamma);
        }
        rec.recovery = rec.onset + rng.exponential(config.rates.nu);
        rec.stop = rec.recovery + rng.exponential(config.rates.eta);
        const std::size_t idx = records.size();
        records.push_back(rec);
        if (already_infectious) {
            ++i;
        } else {
            ++e;
            onsets.emplace(rec.onset, idx);
        }
        recoveries.emplace(rec.recovery, idx);
        stops.emplace(rec.stop, idx);
    };

    for (long k = 0; k < config.initial_e; ++k) admit(start, false);
    for (long k = 0; k < config.initial_i; ++k) admit(start, true);

    double t = start;
    while (e + i + r1 > 0) {
        const double beta = config.beta_at(t);
        const double rate = beta * static_cast<double>(s) * static_cast<double>(i) / n;
        const double next_infection =
            (s > 0 && i > 0 && rate > 0.0) ? t + rng.exponential(rate) : kInf;
        const double next_onset = onsets.empty() ? kInf : onsets.top().first;
        const double next_recovery = recoveries.empty() ? kInf : recoveries.top().first;
        const double next_stop = stops.empty() ? kInf : stops.top().first;
        double next_cp = kInf;
        for (const auto& [cp_time, cp_value] : config.r0_schedule)
            if (cp_time > t) { next_cp = cp_time; break; }

        const double tn =
            std::min({next_infection, next_onset, next_recovery, next_stop, next_cp});
        if (tn > end) break;
        t = tn;

        if (tn == next_infection) {
            --s;
            admit(t, false);
        } else if (tn == next_onset) {
            onsets.pop();
            --e;
            ++i;
        } else if (tn == next_recovery) {
            recoveries.pop();
            --i;
            ++r1;
        } else if (tn == next_stop) {
            stops.pop();
            --r1;
        }
        // Changepoint: no state change; the rate is rebuilt next iteration.
    }

    return EventLog(config.population, config.warmup, config.horizon, std::move(records));
}

} // namespace wwrt::sim
