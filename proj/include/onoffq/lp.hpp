#pragma once

#include <iosfwd>
#include <utility>
#include <vector>

#include "onoffq/model.hpp"
#include "onoffq/simplex.hpp"
#include "onoffq/smdp.hpp"

namespace onoffq {

/// One occupation-measure variable x_{z,a} with its objective coefficient and
/// sparse constraint column.
struct LpColumn {
    int state = 0;
    int action = 0;
    double cost = 0;
    /// (row, coefficient); row < num_flow_rows is the flow-balance row of that
    /// state, row == num_flow_rows is the normalization row.
    std::vector<std::pair<int, double>> entries;
};

/// Average-cost occupation-measure LP over an SmdpInstance: one flow-balance
/// row per state, one normalization row, all variables nonnegative.
struct LpProblem {
    int num_flow_rows = 0;
    std::vector<LpColumn> columns;  ///< ordered by (state, action)
    std::vector<double> rhs;        ///< zeros, then 1 for the normalization row
    /// The flow rows sum to zero, so one of them is redundant; this one is
    /// skipped when the solver builds its square basis.
    int redundant_flow_row = -1;

    int column_index(int state, int action) const noexcept { return 2 * state + action; }
    int num_rows() const noexcept { return num_flow_rows + 1; }
};

LpProblem assemble_lp(const SmdpInstance& s);

struct LpSolution {
    std::vector<double> x;  ///< per column, ordered as LpProblem::columns
    double objective = 0;
    std::vector<int> basis;
    bool is_basic = false;   ///< at most one positive action per state
    double max_residual = 0; ///< over all rows, the redundant one included
    long iterations = 0;
    bool used_bland = false;
};

/// Solves the LP with the in-repo revised simplex.  Infeasibility or
/// unboundedness indicate an assembly bug and raise InternalError.
LpSolution solve_lp(const LpProblem& lp, const SimplexOptions& opt = {},
                    const Tolerances& tols = default_tolerances());

/// Average-optimal policy and value.  The value is the same for every initial
/// state.
struct AverageSolution {
    StationaryPolicy policy;
    double average_cost = 0;
    /// True when every n-full-service policy is average-optimal; the stored
    /// policy is then the 0-full-service representative.
    bool any_full_service = false;
    long lp_iterations = 0;
    double lp_residual = 0;
};

/// Reads the optimal policy off the basic solution's support: a positive
/// on-measure at (0,on) means full service; otherwise the switch-off level is
/// the lowest state kept off while running, and the switch-on level the
/// lowest off-state with positive on-measure (falling back to the reduction
/// level).
AverageSolution extract_policy(const LpSolution& sol, const SmdpInstance& s,
                               const Tolerances& tols = default_tolerances());

/// End-to-end pipeline: build the finite process, assemble and solve the LP,
/// extract the policy.
AverageSolution solve_average(const ModelParams& p, const SimplexOptions& opt = {},
                              const Tolerances& tols = default_tolerances());

/// Writes the problem in LP interchange format for external verification.
void dump_lp(const LpProblem& lp, std::ostream& os);

}  // namespace onoffq
