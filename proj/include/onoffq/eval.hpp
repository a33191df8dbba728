#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "onoffq/closed_forms.hpp"
#include "onoffq/model.hpp"
#include "onoffq/tolerances.hpp"

namespace onoffq {

/// Expected time and accumulated cost of the all-on birth-death process until
/// the count first drops to `floor_level`, for every start count up to `top`.
/// t and g are indexed by (i - floor_level); t[0] = g[0] = 0.
struct FirstPassageSolution {
    long floor_level = 0;
    long top = 0;  ///< truncation level of the linear system
    std::vector<double> t;
    std::vector<double> g;

    double time_to_floor(long i) const { return t.at(static_cast<std::size_t>(i - floor_level)); }
    double cost_to_floor(long i) const { return g.at(static_cast<std::size_t>(i - floor_level)); }
};

/// Solves the first-passage recursions on levels floor_level..top as a
/// tridiagonal system.  The time system is closed at the top with the exact
/// analytic level-return tail; the cost system with a reflecting top.  Both
/// are re-solved with the truncation span doubled and must agree to
/// tols.truncation_rel on every level up to start_max, else InternalError.
FirstPassageSolution first_passage(const ModelParams& p, long floor_level, long start_max,
                                   const Tolerances& tols = default_tolerances());

/// Exact long-run average cost of the (M,N)-policy by renewal-reward over one
/// off/on cycle.  Independent of the initial state.
double evaluate_mn_exact(const ModelParams& p, long switch_off_level, long switch_on_level,
                         const Tolerances& tols = default_tolerances());

/// Exact long-run average cost shared by every n-full-service policy.
double evaluate_full_service_exact(const ModelParams& p);

/// Converged solution of the discounted optimality equation on the clamped
/// grid {0..truncation} x {off,on}.
struct DiscountedSolution {
    ModelParams params;
    double alpha = 0;
    long truncation = 0;        ///< values at counts >= truncation are clamped
    long activation = 0;        ///< ceil of the activation threshold
    long switch_off_level = 0;  ///< largest running count where off is weakly better; -1 if none
    long switch_on_level = 0;   ///< smallest idle count above it where on is weakly better
    std::vector<std::array<double, 2>> value;  ///< value[i][status]
    long sweeps = 0;
    double final_change = 0;

    /// One-step lookahead value of taking `a` in state s under the converged
    /// values (the two branches of the optimality equation).
    double action_value(const State& s, Action a) const;
};

/// Gauss-Seidel value iteration on the embedded discrete-time equation,
/// started from the always-on upper bound and clamped to it at counts >=
/// truncation; sweeps alternate direction until the sup-norm change per
/// sweep pair is below tol.
DiscountedSolution solve_discounted(const ModelParams& p, DiscountRate r, double tol,
                                    const Tolerances& tols = default_tolerances());

/// value[i][status] table as CSV, one row per count.
void dump_values_csv(const DiscountedSolution& sol, std::ostream& os);

}  // namespace onoffq
