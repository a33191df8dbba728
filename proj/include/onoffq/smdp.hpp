#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "onoffq/closed_forms.hpp"
#include "onoffq/model.hpp"
#include "onoffq/tolerances.hpp"

namespace onoffq {

/// Quantities that fold the infinite tail above the reduction level into the
/// top boundary rows of the finite process.
struct BoundaryQuantities {
    /// Expected excursion time T at the top level (arrival seeing n*-1
    /// customers until a departure leaves n*-1 behind).
    double excursion_time = 0;
    /// Expected visit counts to the on-levels n*-1, n*, ... within one loop
    /// from (n*-1, on) back to itself; m[0] = 1.
    std::vector<double> visit_counts;
    /// Expected cost of one loop from (n*-1, on) back to itself under action
    /// on: sum over levels of visit count times per-visit cost.
    double loop_cost = 0;
    /// Expected cost from n* customers (running) until the count first drops
    /// to n*-1.
    double excursion_cost = 0;
};

struct SmdpTransition {
    int state = 0;  ///< destination state index
    double prob = 0;
};

struct SmdpRow {
    double sojourn = 0;  ///< expected time in the state under this action
    double cost = 0;     ///< expected one-step cost
    std::vector<SmdpTransition> next;
};

/// Finite semi-Markov decision process on {0..n*-1} x {off,on} with the tail
/// above n*-1 aggregated exactly into the top rows.  Immutable once built; all
/// boundary series are evaluated at construction.
struct SmdpInstance {
    ModelParams params;
    long reduction_level = 0;  ///< n*; states run over counts 0..n*-1
    BoundaryQuantities boundary;
    /// rows[state_index(i, delta)][action]
    std::vector<std::array<SmdpRow, 2>> rows;

    int state_index(long i, int delta) const noexcept { return static_cast<int>(2 * i + delta); }
    State state_of(int index) const noexcept { return State{index / 2, index % 2}; }
    std::size_t num_states() const noexcept { return rows.size(); }
};

/// Visit counts, excursion time and the loop/excursion cost series for the
/// top boundary.  The cost series stops only when the current term is below
/// tol times the accumulated sum AND the level index is past the decay onset
/// n* + rho + 10*sqrt(rho+1); the visit counts grow until the level passes
/// rho, so stopping on the relative criterion alone would bias the sum.
BoundaryQuantities boundary_quantities(const ModelParams& p, double tol,
                                       const Tolerances& tols = default_tolerances());

/// Builds the finite SMDP for validated parameters.
SmdpInstance build_smdp(const ModelParams& p, const Tolerances& tols = default_tolerances());

/// Diagnostic dump: one CSV row per (state, action, next-state) with
/// probability, sojourn time and one-step cost.
void dump_smdp_csv(const SmdpInstance& s, std::ostream& os);

}  // namespace onoffq
