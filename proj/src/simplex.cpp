#include "onoffq/simplex.hpp"

#include <cmath>
#include <limits>

#include "onoffq/model.hpp"

namespace onoffq {

namespace {

// State of one simplex run over [A | I]: original columns first, one
// artificial identity column per row after them.
struct Tableau {
    Eigen::MatrixXd a;  // original columns only
    Eigen::VectorXd b;
    long m = 0;
    long n = 0;
    std::vector<int> basis;       // one entry per row; j >= n means artificial j-n
    std::vector<char> in_basis;   // size n + m
    Eigen::MatrixXd binv;
    Eigen::VectorXd xb;
    const SimplexOptions* opt = nullptr;

    Eigen::VectorXd column(int j) const {
        if (j < n) return a.col(j);
        Eigen::VectorXd e = Eigen::VectorXd::Zero(m);
        e(j - static_cast<int>(n)) = 1.0;
        return e;
    }

    void refactor() {
        Eigen::MatrixXd basis_mat(m, m);
        for (long k = 0; k < m; ++k) basis_mat.col(k) = column(basis[static_cast<std::size_t>(k)]);
        binv = Eigen::PartialPivLU<Eigen::MatrixXd>(basis_mat).inverse();
        xb = binv * b;
        for (long k = 0; k < m; ++k)
            if (xb(k) < 0) xb(k) = 0;
    }

    // Swap entering column j into basis row r; u = binv * column(j).
    void pivot(long r, int j, const Eigen::VectorXd& u) {
        const double piv = u(r);
        Eigen::RowVectorXd row_r = binv.row(r) / piv;
        for (long k = 0; k < m; ++k) {
            if (k == r) continue;
            binv.row(k) -= u(k) * row_r;
        }
        binv.row(r) = row_r;
        in_basis[static_cast<std::size_t>(basis[static_cast<std::size_t>(r)])] = 0;
        in_basis[static_cast<std::size_t>(j)] = 1;
        basis[static_cast<std::size_t>(r)] = j;
    }
};

struct PhaseOutcome {
    SimplexStatus status = SimplexStatus::optimal;
    long iterations = 0;
    bool used_bland = false;
};

// Minimizes `cost` from the installed basic feasible solution.  Only columns
// j < allowed_cols may enter; artificials can leave but never re-enter.
PhaseOutcome run_phase(Tableau& t, const Eigen::VectorXd& cost, long allowed_cols,
                       long iteration_budget) {
    const auto& opt = *t.opt;
    PhaseOutcome out;
    bool bland = false;
    long stall = 0;
    double last_obj = std::numeric_limits<double>::infinity();

    auto objective = [&] {
        double v = 0;
        for (long k = 0; k < t.m; ++k) v += cost(t.basis[static_cast<std::size_t>(k)]) * t.xb(k);
        return v;
    };

    for (long iter = 0; iter < iteration_budget; ++iter) {
        if (iter > 0 && iter % opt.refactor_every == 0) t.refactor();

        Eigen::VectorXd cb(t.m);
        for (long k = 0; k < t.m; ++k) cb(k) = cost(t.basis[static_cast<std::size_t>(k)]);
        const Eigen::RowVectorXd y = cb.transpose() * t.binv;

        int entering = -1;
        double best = -opt.cost_tol;
        for (int j = 0; j < allowed_cols; ++j) {
            if (t.in_basis[static_cast<std::size_t>(j)]) continue;
            const double d = cost(j) - y.dot(t.a.col(j));
            if (bland) {
                if (d < -opt.cost_tol) { entering = j; break; }
            } else if (d < best) {
                best = d;
                entering = j;
            }
        }
        if (entering < 0) {
            out.iterations = iter;
            out.status = SimplexStatus::optimal;
            out.used_bland = bland;
            return out;
        }

        const Eigen::VectorXd u = t.binv * t.a.col(entering);
        long leave = -1;
        double theta = 0;
        for (long k = 0; k < t.m; ++k) {
            if (u(k) <= opt.pivot_tol) continue;
            const double ratio = t.xb(k) / u(k);
            if (leave < 0 || ratio < theta - 1e-15 ||
                (ratio <= theta + 1e-15 &&
                 t.basis[static_cast<std::size_t>(k)] < t.basis[static_cast<std::size_t>(leave)])) {
                leave = k;
                theta = ratio;
            }
        }
        if (leave < 0) {
            out.iterations = iter;
            out.status = SimplexStatus::unbounded;
            out.used_bland = bland;
            return out;
        }

        t.xb -= theta * u;
        t.xb(leave) = theta;
        for (long k = 0; k < t.m; ++k)
            if (t.xb(k) < 0) t.xb(k) = 0;  // clip roundoff
        t.pivot(leave, entering, u);

        if (!bland) {
            const double obj = objective();
            if (obj < last_obj - 1e-13 * (1.0 + std::abs(last_obj))) {
                stall = 0;
            } else if (++stall >= opt.stall_limit) {
                bland = true;  // anti-cycling from here on
            }
            last_obj = obj;
        }
    }
    out.iterations = iteration_budget;
    out.status = SimplexStatus::iteration_limit;
    out.used_bland = bland;
    return out;
}

}  // namespace

SimplexResult revised_simplex(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                              const Eigen::VectorXd& c, const SimplexOptions& opt) {
    Tableau t;
    t.a = A;
    t.b = b;
    t.m = A.rows();
    t.n = A.cols();
    t.opt = &opt;
    for (long r = 0; r < t.m; ++r) {
        if (t.b(r) < 0) {
            t.b(r) = -t.b(r);
            t.a.row(r) = -t.a.row(r);
        }
    }

    SimplexResult res;
    res.x = Eigen::VectorXd::Zero(t.n);

    // Phase 1: artificial basis, minimize the artificial mass.
    t.basis.resize(static_cast<std::size_t>(t.m));
    t.in_basis.assign(static_cast<std::size_t>(t.n + t.m), 0);
    for (long r = 0; r < t.m; ++r) {
        t.basis[static_cast<std::size_t>(r)] = static_cast<int>(t.n + r);
        t.in_basis[static_cast<std::size_t>(t.n + r)] = 1;
    }
    t.binv = Eigen::MatrixXd::Identity(t.m, t.m);
    t.xb = t.b;

    Eigen::VectorXd phase1_cost = Eigen::VectorXd::Zero(t.n + t.m);
    phase1_cost.tail(t.m).setOnes();
    auto p1 = run_phase(t, phase1_cost, t.n, opt.max_iterations);
    res.iterations = p1.iterations;
    res.used_bland = p1.used_bland;
    if (p1.status != SimplexStatus::optimal) {
        res.status = p1.status;
        return res;
    }
    double artificial_mass = 0;
    for (long k = 0; k < t.m; ++k)
        if (t.basis[static_cast<std::size_t>(k)] >= t.n) artificial_mass += t.xb(k);
    if (artificial_mass > opt.feas_tol) {
        res.status = SimplexStatus::infeasible;
        return res;
    }

    // Pivot leftover zero-level artificials out of the basis.  A row in which
    // no original column can pivot would mean linearly dependent constraint
    // rows, which callers are required to remove beforehand.
    for (long r = 0; r < t.m; ++r) {
        if (t.basis[static_cast<std::size_t>(r)] < t.n) continue;
        int pivot_col = -1;
        Eigen::VectorXd u;
        for (int j = 0; j < t.n; ++j) {
            if (t.in_basis[static_cast<std::size_t>(j)]) continue;
            u = t.binv * t.a.col(j);
            if (std::abs(u(r)) > opt.pivot_tol) { pivot_col = j; break; }
        }
        if (pivot_col < 0)
            throw InternalError("simplex: constraint rows are rank deficient");
        t.pivot(r, pivot_col, u);
        t.xb(r) = 0;
    }

    // Phase 2 over the original columns.
    t.refactor();
    Eigen::VectorXd phase2_cost = Eigen::VectorXd::Zero(t.n + t.m);
    phase2_cost.head(t.n) = c;
    const long budget = opt.max_iterations - res.iterations;
    auto p2 = run_phase(t, phase2_cost, t.n, budget > 0 ? budget : 1);
    res.iterations += p2.iterations;
    res.used_bland = res.used_bland || p2.used_bland;
    if (p2.status != SimplexStatus::optimal) {
        res.status = p2.status;
        return res;
    }

    t.refactor();  // clean accumulated drift before reporting
    res.status = SimplexStatus::optimal;
    res.basis = t.basis;
    for (long k = 0; k < t.m; ++k) {
        const int j = t.basis[static_cast<std::size_t>(k)];
        if (j < t.n) res.x(j) = std::max(0.0, t.xb(k));
    }
    res.objective = c.dot(res.x);
    res.max_residual = (A * res.x - b).cwiseAbs().maxCoeff();
    return res;
}

}  // namespace onoffq
