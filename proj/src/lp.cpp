#include "onoffq/lp.hpp"

#include <cmath>
#include <map>
#include <ostream>

namespace onoffq {

LpProblem assemble_lp(const SmdpInstance& s) {
    LpProblem lp;
    lp.num_flow_rows = static_cast<int>(s.num_states());
    lp.rhs.assign(static_cast<std::size_t>(lp.num_rows()), 0.0);
    lp.rhs.back() = 1.0;
    lp.columns.reserve(2 * s.num_states());

    for (int z = 0; z < lp.num_flow_rows; ++z) {
        for (int a = 0; a <= 1; ++a) {
            const auto& row = s.rows[static_cast<std::size_t>(z)][static_cast<std::size_t>(a)];
            LpColumn col;
            col.state = z;
            col.action = a;
            col.cost = row.cost;
            std::map<int, double> coeff;
            coeff[z] += 1.0;
            for (const auto& tr : row.next) coeff[tr.state] -= tr.prob;
            for (const auto& [r, v] : coeff)
                if (v != 0.0) col.entries.emplace_back(r, v);
            col.entries.emplace_back(lp.num_flow_rows, row.sojourn);
            lp.columns.push_back(std::move(col));
        }
    }

    // Each column's flow coefficients sum to zero (the transition rows are
    // stochastic), so the flow rows are linearly dependent and one can carry
    // the others.  Verify, then mark the last one as the redundant row.
    for (const auto& col : lp.columns) {
        double flow_sum = 0;
        for (const auto& [r, v] : col.entries)
            if (r < lp.num_flow_rows) flow_sum += v;
        if (std::abs(flow_sum) > 1e-12)
            throw InternalError("LP assembly: flow coefficients of a column do not cancel");
    }
    lp.redundant_flow_row = lp.num_flow_rows - 1;
    return lp;
}

LpSolution solve_lp(const LpProblem& lp, const SimplexOptions& opt, const Tolerances& tols) {
    const int all_rows = lp.num_rows();
    const int kept_rows = all_rows - 1;
    const int n = static_cast<int>(lp.columns.size());

    // Row map skipping the redundant flow row.
    std::vector<int> row_of(static_cast<std::size_t>(all_rows), -1);
    int rr = 0;
    for (int r = 0; r < all_rows; ++r)
        if (r != lp.redundant_flow_row) row_of[static_cast<std::size_t>(r)] = rr++;

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(kept_rows, n);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(kept_rows);
    Eigen::VectorXd c(n);
    for (int r = 0; r < all_rows; ++r)
        if (row_of[static_cast<std::size_t>(r)] >= 0)
            b(row_of[static_cast<std::size_t>(r)]) = lp.rhs[static_cast<std::size_t>(r)];
    for (int j = 0; j < n; ++j) {
        const auto& col = lp.columns[static_cast<std::size_t>(j)];
        c(j) = col.cost;
        for (const auto& [r, v] : col.entries) {
            const int mapped = row_of[static_cast<std::size_t>(r)];
            if (mapped >= 0) A(mapped, j) += v;
        }
    }

    const SimplexResult res = revised_simplex(A, b, c, opt);
    switch (res.status) {
        case SimplexStatus::optimal:
            break;
        case SimplexStatus::infeasible:
            throw InternalError("average-cost LP reported infeasible; the assembly is broken");
        case SimplexStatus::unbounded:
            throw InternalError("average-cost LP reported unbounded; the assembly is broken");
        case SimplexStatus::iteration_limit:
            throw InternalError("simplex iteration cap exceeded on the average-cost LP");
    }

    LpSolution sol;
    sol.x.assign(res.x.data(), res.x.data() + n);
    sol.objective = res.objective;
    sol.basis = res.basis;
    sol.iterations = res.iterations;
    sol.used_bland = res.used_bland;

    // Residuals over every row, the dropped one included.
    double max_resid = 0;
    std::vector<double> lhs(static_cast<std::size_t>(all_rows), 0.0);
    for (int j = 0; j < n; ++j)
        for (const auto& [r, v] : lp.columns[static_cast<std::size_t>(j)].entries)
            lhs[static_cast<std::size_t>(r)] += v * sol.x[static_cast<std::size_t>(j)];
    for (int r = 0; r < all_rows; ++r)
        max_resid = std::max(max_resid, std::abs(lhs[static_cast<std::size_t>(r)] -
                                                 lp.rhs[static_cast<std::size_t>(r)]));
    sol.max_residual = max_resid;
    if (max_resid > tols.lp_feasibility)
        throw InternalError("LP solution violates feasibility beyond tolerance");

    sol.is_basic = true;
    for (int z = 0; z < lp.num_flow_rows; ++z) {
        const bool on0 = sol.x[static_cast<std::size_t>(lp.column_index(z, 0))] > tols.lp_support;
        const bool on1 = sol.x[static_cast<std::size_t>(lp.column_index(z, 1))] > tols.lp_support;
        if (on0 && on1) sol.is_basic = false;
    }
    if (!sol.is_basic)
        throw InternalError("LP solution is not basic: two positive actions at one state");
    return sol;
}

AverageSolution extract_policy(const LpSolution& sol, const SmdpInstance& s,
                               const Tolerances& tols) {
    const long n_star = s.reduction_level;
    auto positive = [&](long i, int delta, int action) {
        const int col = 2 * s.state_index(i, delta) + action;
        return sol.x[static_cast<std::size_t>(col)] > tols.lp_support;
    };

    AverageSolution out{StationaryPolicy(FullServicePolicy{0}), sol.objective, false,
                        sol.iterations, sol.max_residual};

    if (positive(0, 1, 1)) {
        out.any_full_service = true;  // every n-full-service policy is optimal
        return out;
    }

    long switch_on = n_star;
    for (long i = 1; i < n_star; ++i) {
        if (positive(i, 0, 1)) {
            switch_on = i;
            break;
        }
    }

    long switch_off = 0;
    if (!positive(0, 1, 0)) {
        switch_off = -1;
        for (long i = 1; i < n_star; ++i) {
            if (positive(i, 1, 0)) {
                switch_off = i;
                break;
            }
        }
        if (switch_off < 0)
            throw InternalError(
                "no positive switch-off measure found although (0,on) carries none; "
                "the solution support contradicts positive recurrence");
    }

    if (!(switch_off < switch_on))
        throw InternalError("extracted switch levels are not ordered");
    out.policy = StationaryPolicy(MnPolicy{switch_off, switch_on});
    return out;
}

AverageSolution solve_average(const ModelParams& p, const SimplexOptions& opt,
                              const Tolerances& tols) {
    validate_params(p);
    const SmdpInstance s = build_smdp(p, tols);
    const LpProblem lp = assemble_lp(s);
    const LpSolution sol = solve_lp(lp, opt, tols);
    return extract_policy(sol, s, tols);
}

void dump_lp(const LpProblem& lp, std::ostream& os) {
    auto var = [](const LpColumn& c) {
        return "x_" + std::to_string(c.state / 2) + "_" + std::to_string(c.state % 2) + "_" +
               std::to_string(c.action);
    };
    os << "Minimize\n obj:";
    for (const auto& col : lp.columns) os << " + " << col.cost << ' ' << var(col);
    os << "\nSubject To\n";
    for (int r = 0; r < lp.num_rows(); ++r) {
        os << (r < lp.num_flow_rows ? " flow_" + std::to_string(r) : std::string(" norm")) << ':';
        for (const auto& col : lp.columns)
            for (const auto& [row, v] : col.entries)
                if (row == r) os << (v >= 0 ? " + " : " - ") << std::abs(v) << ' ' << var(col);
        os << " = " << lp.rhs[static_cast<std::size_t>(r)] << '\n';
    }
    os << "Bounds\n";
    for (const auto& col : lp.columns) os << ' ' << var(col) << " >= 0\n";
    os << "End\n";
}

}  // namespace onoffq
