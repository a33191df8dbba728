#pragma once

#include <vector>

#include "onoffq/model.hpp"
#include "onoffq/tolerances.hpp"

namespace onoffq {

/// Continuous-time discount rate, > 0 wherever a discounted quantity is
/// evaluated.
struct DiscountRate {
    double alpha = 0;
};

/// Count level at which switching on becomes preferable to waiting, for
/// policies that never switch a running system off:
/// (mu + alpha) * (c + alpha * s1) / (h * mu).  Strictly increasing in alpha
/// with limit c/h as alpha drops to 0.
double activation_threshold(const ModelParams& p, DiscountRate r);

/// Smallest integer count at or above activation_threshold (its ceiling).
long activation_level(const ModelParams& p, DiscountRate r);

/// floor(c/h + 1): above this count, keeping the system on is average-optimal,
/// which is what makes the finite reduction possible.
long reduction_level(const ModelParams& p);

/// Expected total discounted cost of the policy that always runs the system,
/// started in state s.
double always_on_value(const ModelParams& p, DiscountRate r, const State& s);

/// Expected total discounted cost of the never-on policy started off with i
/// customers.
double passive_value(const ModelParams& p, DiscountRate r, long i);

/// Value at (i, off) of the best policy that never switches a running system
/// off.  For i >= activation_level this is s1 plus the always-on value at
/// (i, on); below it, the cost of waiting for the count to reach the level.
double full_service_value_off(const ModelParams& p, DiscountRate r, long i);

/// Expected busy periods of the all-on M/M/inf queue.  b[i] is the expected
/// time to first empty the system starting from i customers; b[0] = 0 and b is
/// strictly increasing from i = 1 on.
struct BusyPeriodTable {
    double rho = 0;
    double lambda = 0;
    std::vector<double> b;  ///< b[0..L]

    long truncation() const noexcept { return static_cast<long>(b.size()) - 1; }
};

/// Busy periods B_0..B_L.  The factorial-weighted tail factors are summed
/// through a cancellation-free all-positive recurrence; see level_return_time.
BusyPeriodTable busy_periods(const ModelParams& p, long levels,
                             const Tolerances& tol = default_tolerances());

/// Expected time between an arrival that sees i customers and the next
/// departure that leaves i customers behind (all servers on).  Equals
/// B_{i+1} - B_i; computed directly from the convergent series
/// (1/lambda) * sum_{k>=0} rho^{k+1} / ((i+1)(i+2)...(i+1+k)).
double level_return_time(const ModelParams& p, long i,
                         const Tolerances& tol = default_tolerances());

/// Time-average number of customers in the system under a (0,N)-policy.
double zero_n_mean_queue(const ModelParams& p, long N,
                         const Tolerances& tol = default_tolerances());

/// Long-run average cost of the (0,N)-policy.
double zero_n_average_cost(const ModelParams& p, long N,
                           const Tolerances& tol = default_tolerances());

/// Finite search bound for the best (0,N)-policy: the smallest N >= c/h with
/// N(N+1)/(2 lambda) >= (s0+s1)/h.  Beyond it the (0,N) cost is strictly
/// increasing in N.
long zero_n_search_bound(const ModelParams& p);

struct BestZeroN {
    long switch_on_level = 1;  ///< N*
    double average_cost = 0;   ///< v at N*
};

/// Exhaustive minimum of zero_n_average_cost over N = 1..zero_n_search_bound,
/// ties broken toward smaller N.
BestZeroN best_zero_n(const ModelParams& p, const Tolerances& tol = default_tolerances());

}  // namespace onoffq
