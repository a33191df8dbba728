#pragma once

#include <cstdint>

#include "onoffq/model.hpp"

namespace onoffq {

/// Horizon and replication plan of a simulation run.
struct SimConfig {
    std::uint64_t seed = 1;
    enum class Horizon { cycles, time };
    /// Regeneration cycles (for (M,N)-policies) or simulated time units per
    /// replication.
    Horizon horizon_kind = Horizon::cycles;
    double horizon = 10000;
    /// Cycles or time units discarded before measurement starts.
    double warmup = 0;
    int replications = 1;
};

struct SimReport {
    double mean = 0;            ///< estimated long-run cost rate
    double ci_half_width = 0;   ///< 95% confidence half-width
    double holding_rate = 0;
    double running_rate = 0;
    double switching_rate = 0;
    double cycles = 0;          ///< regeneration cycles observed (all replications)
    double time = 0;            ///< measured simulated time (all replications)
    std::uint64_t seed = 0;
    int replications = 0;
    bool few_cycles_warning = false;  ///< fewer than 10 cycles observed
};

/// Event-driven Monte Carlo estimate of the long-run average cost under a
/// stationary policy.  (M,N)-policies use the regenerative estimator with
/// cycles delimited by switch-on epochs; other policies a time average with
/// warmup.  Replications run in parallel, each on its own random stream, and
/// are always reduced in replication order, so reports are bit-identical for
/// a given config regardless of thread count.
SimReport simulate_policy(const ModelParams& p, const StationaryPolicy& pol,
                          const SimConfig& cfg);

/// Serial reference implementation of simulate_policy; produces bit-identical
/// reports.
SimReport simulate_policy_serial(const ModelParams& p, const StationaryPolicy& pol,
                                 const SimConfig& cfg);

struct BusyPeriodEstimate {
    double mean = 0;
    double ci_half_width = 0;  ///< 95%
    long replications = 0;
};

/// Monte Carlo mean time for the all-on system to empty from `start_count`
/// customers.
BusyPeriodEstimate simulate_busy_period(const ModelParams& p, long start_count, long replications,
                                        std::uint64_t seed);

/// Serial reference implementation of simulate_busy_period.
BusyPeriodEstimate simulate_busy_period_serial(const ModelParams& p, long start_count,
                                               long replications, std::uint64_t seed);

namespace detail {
/// Upper 97.5% Student-t quantile for small degrees of freedom, 1.96 beyond
/// the tabulated range.
double student_t_975(long dof);
}  // namespace detail

}  // namespace onoffq
