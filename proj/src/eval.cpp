#include "onoffq/eval.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace onoffq {

namespace {

long tail_margin_level(const ModelParams& p) {
    const double rho = p.rho();
    return static_cast<long>(std::ceil(rho + 12.0 * std::sqrt(rho + 1.0)));
}

// Thomas solve of the first-passage system on levels floor+1..top for both
// right-hand sides (unit time and holding+running cost rates).  The top row
// closes the time system with the exact analytic tail t_top - t_{top-1} =
// level_return_time(top-1) and the cost system with a reflecting top.
void solve_passage(const ModelParams& p, long floor_level, long top, const Tolerances& tols,
                   std::vector<double>& t, std::vector<double>& g) {
    const long n = top - floor_level;
    std::vector<double> diag(static_cast<std::size_t>(n)), super(static_cast<std::size_t>(n)),
        sub(static_cast<std::size_t>(n)), rt(static_cast<std::size_t>(n)),
        rg(static_cast<std::size_t>(n));
    for (long k = 0; k + 1 < n; ++k) {
        const double i = static_cast<double>(floor_level + 1 + k);
        diag[static_cast<std::size_t>(k)] = p.lambda + i * p.mu;
        sub[static_cast<std::size_t>(k)] = k > 0 ? -i * p.mu : 0.0;  // t at the floor is zero
        super[static_cast<std::size_t>(k)] = -p.lambda;
        rt[static_cast<std::size_t>(k)] = 1.0;
        rg[static_cast<std::size_t>(k)] = p.h * i + p.c;
    }
    const double dtop = static_cast<double>(top);
    diag[static_cast<std::size_t>(n - 1)] = 1.0;
    sub[static_cast<std::size_t>(n - 1)] = -1.0;
    super[static_cast<std::size_t>(n - 1)] = 0.0;
    rt[static_cast<std::size_t>(n - 1)] = level_return_time(p, top - 1, tols);
    rg[static_cast<std::size_t>(n - 1)] = (p.h * dtop + p.c) / (dtop * p.mu);

    for (long k = 1; k < n; ++k) {
        const double w = sub[static_cast<std::size_t>(k)] / diag[static_cast<std::size_t>(k - 1)];
        diag[static_cast<std::size_t>(k)] -= w * super[static_cast<std::size_t>(k - 1)];
        rt[static_cast<std::size_t>(k)] -= w * rt[static_cast<std::size_t>(k - 1)];
        rg[static_cast<std::size_t>(k)] -= w * rg[static_cast<std::size_t>(k - 1)];
    }
    t.assign(static_cast<std::size_t>(n + 1), 0.0);
    g.assign(static_cast<std::size_t>(n + 1), 0.0);
    t[static_cast<std::size_t>(n)] = rt[static_cast<std::size_t>(n - 1)] / diag[static_cast<std::size_t>(n - 1)];
    g[static_cast<std::size_t>(n)] = rg[static_cast<std::size_t>(n - 1)] / diag[static_cast<std::size_t>(n - 1)];
    for (long k = n - 2; k >= 0; --k) {
        t[static_cast<std::size_t>(k + 1)] =
            (rt[static_cast<std::size_t>(k)] - super[static_cast<std::size_t>(k)] * t[static_cast<std::size_t>(k + 2)]) /
            diag[static_cast<std::size_t>(k)];
        g[static_cast<std::size_t>(k + 1)] =
            (rg[static_cast<std::size_t>(k)] - super[static_cast<std::size_t>(k)] * g[static_cast<std::size_t>(k + 2)]) /
            diag[static_cast<std::size_t>(k)];
    }
}

}  // namespace

FirstPassageSolution first_passage(const ModelParams& p, long floor_level, long start_max,
                                   const Tolerances& tols) {
    if (floor_level < 0) throw ValidationError("floor_level", "first-passage floor must be >= 0");
    if (start_max < floor_level)
        throw ValidationError("start_max", "start range must reach the floor");

    const long top1 = std::max(start_max, tail_margin_level(p)) + 40;
    const long top2 = floor_level + 2 * (top1 - floor_level);

    std::vector<double> t1, g1;
    solve_passage(p, floor_level, top1, tols, t1, g1);
    FirstPassageSolution fine;
    fine.floor_level = floor_level;
    fine.top = top2;
    solve_passage(p, floor_level, top2, tols, fine.t, fine.g);

    for (long i = floor_level; i <= start_max; ++i) {
        const std::size_t k = static_cast<std::size_t>(i - floor_level);
        const double dt = std::abs(fine.t[k] - t1[k]);
        const double dg = std::abs(fine.g[k] - g1[k]);
        if (dt > tols.truncation_rel * std::max(1.0, std::abs(fine.t[k])) ||
            dg > tols.truncation_rel * std::max(1.0, std::abs(fine.g[k])))
            throw InternalError("first-passage truncation is unstable; a larger level span is needed");
    }
    return fine;
}

double evaluate_mn_exact(const ModelParams& p, long switch_off_level, long switch_on_level,
                         const Tolerances& tols) {
    if (switch_off_level < 0)
        throw ValidationError("switch_off_level", "(M,N)-policy requires M >= 0");
    if (switch_on_level <= switch_off_level)
        throw ValidationError("switch_on_level", "(M,N)-policy requires N > M");
    const double m = static_cast<double>(switch_off_level);
    const double n = static_cast<double>(switch_on_level);

    const FirstPassageSolution fp = first_passage(p, switch_off_level, switch_on_level, tols);
    // One cycle: arrivals climb the idle system from M to N, then the running
    // system drains back to M.
    const double off_holding = p.h * (n * (n - 1) - m * (m - 1)) / (2 * p.lambda);
    const double cycle_cost =
        off_holding + p.s1 + fp.cost_to_floor(switch_on_level) + p.s0;
    const double cycle_time = (n - m) / p.lambda + fp.time_to_floor(switch_on_level);
    return cycle_cost / cycle_time;
}

double evaluate_full_service_exact(const ModelParams& p) { return p.h * p.rho() + p.c; }

double DiscountedSolution::action_value(const State& s, Action a) const {
    const double i = static_cast<double>(s.count);
    const auto v = [&](long idx, int status) {
        return value[static_cast<std::size_t>(std::min(idx, truncation))][static_cast<std::size_t>(status)];
    };
    if (a == Action::on) {
        const double rate = alpha + params.lambda + i * params.mu;
        double r = (s.status == 0 ? params.s1 : 0.0) + (params.h * i + params.c) / rate +
                   params.lambda / rate * v(s.count + 1, 1);
        if (s.count > 0) r += i * params.mu / rate * v(s.count - 1, 1);
        return r;
    }
    const double rate = alpha + params.lambda;
    return (s.status == 1 ? params.s0 : 0.0) + params.h * i / rate +
           params.lambda / rate * v(s.count + 1, 0);
}

DiscountedSolution solve_discounted(const ModelParams& p, DiscountRate r, double tol,
                                    const Tolerances& tols) {
    if (!(r.alpha > 0)) throw ValidationError("alpha", "discount rate must be > 0");
    if (!(tol > 0)) throw ValidationError("tol", "stopping tolerance must be > 0");
    validate_params(p);

    DiscountedSolution sol;
    sol.params = p;
    sol.alpha = r.alpha;
    sol.activation = activation_level(p, r);
    sol.truncation = std::max(sol.activation, tail_margin_level(p)) + 40;
    const long L = sol.truncation;
    sol.value.resize(static_cast<std::size_t>(L) + 1);
    for (long i = 0; i <= L; ++i) {
        sol.value[static_cast<std::size_t>(i)][0] = always_on_value(p, r, State{i, 0});
        sol.value[static_cast<std::size_t>(i)][1] = always_on_value(p, r, State{i, 1});
    }

    auto& v = sol.value;
    const double a = r.alpha;
    const double off_rate = a + p.lambda;
    // In-place sweeps from the always-on upper bound; values only decrease.
    // The clamp at L stays fixed, a valid upper bound on the true values.
    const long max_sweeps = 4'000'000;
    long sweeps = 0;
    double change = 0;
    auto update = [&](long i) {
        const std::size_t k = static_cast<std::size_t>(i);
        const double di = static_cast<double>(i);
        const double rate = a + p.lambda + di * p.mu;
        double on_branch = (p.h * di + p.c) / rate + p.lambda / rate * v[k + 1][1];
        if (i > 0) on_branch += di * p.mu / rate * v[k - 1][1];
        const double off_branch = p.h * di / off_rate + p.lambda / off_rate * v[k + 1][0];
        // Ties keep the current status.
        const double new_on = on_branch <= p.s0 + off_branch ? on_branch : p.s0 + off_branch;
        const double new_off = off_branch <= p.s1 + on_branch ? off_branch : p.s1 + on_branch;
        change = std::max({change, std::abs(new_on - v[k][1]), std::abs(new_off - v[k][0])});
        v[k][1] = new_on;
        v[k][0] = new_off;
    };
    while (sweeps < max_sweeps) {
        change = 0;
        for (long i = L - 1; i >= 0; --i) update(i);
        ++sweeps;
        for (long i = 0; i < L; ++i) update(i);
        ++sweeps;
        if (change < tol) break;
    }
    sol.sweeps = sweeps;
    sol.final_change = change;
    if (change >= tol)
        throw InternalError("discounted value iteration hit the sweep cap; sup-change " +
                            std::to_string(change) + " after " + std::to_string(sweeps) +
                            " sweeps at alpha " + std::to_string(a));

    sol.switch_off_level = -1;
    for (long i = 0; i < L; ++i)
        if (sol.action_value(State{i, 1}, Action::off) <= sol.action_value(State{i, 1}, Action::on))
            sol.switch_off_level = i;
    sol.switch_on_level = -1;
    for (long i = sol.switch_off_level + 1; i < L; ++i) {
        if (sol.action_value(State{i, 0}, Action::on) <= sol.action_value(State{i, 0}, Action::off)) {
            sol.switch_on_level = i;
            break;
        }
    }
    if (sol.switch_on_level < 0)
        throw InternalError("no switch-on level found below the truncation; grid too short");
    return sol;
}

void dump_values_csv(const DiscountedSolution& sol, std::ostream& os) {
    os << "count,value_off,value_on\n";
    for (long i = 0; i <= sol.truncation; ++i)
        os << i << ',' << sol.value[static_cast<std::size_t>(i)][0] << ','
           << sol.value[static_cast<std::size_t>(i)][1] << '\n';
}

}  // namespace onoffq
