#pragma once

#include <Eigen/Dense>
#include <vector>

namespace onoffq {

struct SimplexOptions {
    double pivot_tol = 1e-10;   ///< smallest pivot magnitude accepted in the ratio test
    double cost_tol = 1e-9;     ///< reduced-cost threshold for optimality
    double feas_tol = 1e-9;     ///< phase-1 objective below this counts as feasible
    long max_iterations = 100000;
    /// Iterations without objective improvement before Bland's rule engages.
    long stall_limit = 50;
    /// Basis inverse is recomputed from scratch this often.
    long refactor_every = 64;
};

enum class SimplexStatus { optimal, infeasible, unbounded, iteration_limit };

struct SimplexResult {
    SimplexStatus status = SimplexStatus::iteration_limit;
    Eigen::VectorXd x;       ///< primal solution (original columns)
    double objective = 0;
    std::vector<int> basis;  ///< basic column indices, one per (kept) row
    long iterations = 0;
    double max_residual = 0; ///< max |A x - b| over the rows passed in
    bool used_bland = false;
};

/// Two-phase revised simplex for  min c^T x  s.t.  A x = b, x >= 0.
///
/// Dense with an explicitly maintained basis inverse, refactorized
/// periodically through an LU decomposition.  Dantzig pricing until the
/// objective stalls, then Bland's rule, which guarantees termination on
/// degenerate problems.  Rows of A must be linearly independent; redundant
/// rows detected during phase 1 are dropped internally.
SimplexResult revised_simplex(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                              const Eigen::VectorXd& c, const SimplexOptions& opt = {});

}  // namespace onoffq
