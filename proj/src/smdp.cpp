#include "onoffq/smdp.hpp"

#include <cmath>
#include <ostream>

namespace onoffq {

BoundaryQuantities boundary_quantities(const ModelParams& p, double tol, const Tolerances& tols) {
    if (!(tol > 0)) throw ValidationError("tol", "boundary series tolerance must be > 0");
    const long n_star = reduction_level(p);
    const long top = n_star - 1;
    const double rho = p.rho();
    const double decay_onset = static_cast<double>(n_star) + rho + 10.0 * std::sqrt(rho + 1.0);

    BoundaryQuantities q;
    q.excursion_time = level_return_time(p, top, tols);

    double m = 1.0;  // visit count at the top level itself
    q.visit_counts.push_back(m);
    double loop_cost = m * (p.h * static_cast<double>(top) + p.c) / (p.lambda + static_cast<double>(top) * p.mu);
    long i = top;
    for (std::uint64_t iter = 0;; ++iter) {
        if (iter >= tols.series_max_terms)
            throw InternalError("boundary visit-count series did not converge within the term cap");
        // m_{i+1}/m_i = [lambda/(lambda+i mu)] * [(lambda+(i+1) mu)/((i+1) mu)]
        m *= p.lambda * (p.lambda + static_cast<double>(i + 1) * p.mu) /
             ((p.lambda + static_cast<double>(i) * p.mu) * static_cast<double>(i + 1) * p.mu);
        ++i;
        q.visit_counts.push_back(m);
        const double term = m * (p.h * static_cast<double>(i) + p.c) / (p.lambda + static_cast<double>(i) * p.mu);
        loop_cost += term;
        if (term < tol * loop_cost && static_cast<double>(i) > decay_onset) break;
    }
    q.loop_cost = loop_cost;
    q.excursion_cost = (1.0 + static_cast<double>(top) * p.mu / p.lambda) * loop_cost -
                       (p.h * static_cast<double>(top) + p.c) / p.lambda;
    return q;
}

SmdpInstance build_smdp(const ModelParams& p, const Tolerances& tols) {
    validate_params(p);
    SmdpInstance s;
    s.params = p;
    s.reduction_level = reduction_level(p);
    s.boundary = boundary_quantities(p, tols.series_rel, tols);

    const long n_star = s.reduction_level;
    const long top = n_star - 1;
    s.rows.resize(static_cast<std::size_t>(2 * n_star));

    for (long i = 0; i < n_star; ++i) {
        for (int delta = 0; delta <= 1; ++delta) {
            auto& row = s.rows[static_cast<std::size_t>(s.state_index(i, delta))];
            const double switch_on = delta == 0 ? p.s1 : 0.0;
            const double switch_off = delta == 1 ? p.s0 : 0.0;
            const double di = static_cast<double>(i);

            if (i < top) {
                // Interior rows follow the raw jump chain.
                auto& off = row[0];
                off.sojourn = 1.0 / p.lambda;
                off.cost = switch_off + p.h * di * off.sojourn;
                off.next = {{s.state_index(i + 1, 0), 1.0}};

                auto& on = row[1];
                const double rate = p.lambda + di * p.mu;
                on.sojourn = 1.0 / rate;
                on.cost = switch_on + (p.h * di + p.c) * on.sojourn;
                if (i > 0) on.next.push_back({s.state_index(i - 1, 1), di * p.mu / rate});
                on.next.push_back({s.state_index(i + 1, 1), p.lambda / rate});
            } else {
                // Top rows absorb the excursion above the reduction level.
                const double rate = p.lambda + di * p.mu;
                auto& on = row[1];
                on.sojourn = p.lambda / rate * (1.0 / p.lambda + s.boundary.excursion_time);
                on.cost = switch_on + s.boundary.loop_cost;
                if (i > 0) on.next.push_back({s.state_index(i - 1, 1), di * p.mu / rate});
                on.next.push_back({s.state_index(i, 1), p.lambda / rate});

                auto& off = row[0];
                off.sojourn = 1.0 / p.lambda + s.boundary.excursion_time;
                off.cost = switch_off + p.h * di / p.lambda + p.s1 + s.boundary.excursion_cost;
                off.next = {{s.state_index(i, 1), 1.0}};
            }
        }
    }

    // Frozen-instance sanity: rows must be stochastic with positive sojourns.
    for (const auto& state_rows : s.rows) {
        for (const auto& row : state_rows) {
            double total = 0;
            for (const auto& t : row.next) total += t.prob;
            if (std::abs(total - 1.0) > tols.row_stochastic)
                throw InternalError("assembled transition row is not stochastic");
            if (!(row.sojourn > 0)) throw InternalError("assembled sojourn time is not positive");
        }
    }
    return s;
}

void dump_smdp_csv(const SmdpInstance& s, std::ostream& os) {
    os << "count,status,action,next_count,next_status,prob,sojourn,cost\n";
    for (int z = 0; z < static_cast<int>(s.num_states()); ++z) {
        const State st = s.state_of(z);
        for (int a = 0; a <= 1; ++a) {
            const auto& row = s.rows[static_cast<std::size_t>(z)][static_cast<std::size_t>(a)];
            for (const auto& t : row.next) {
                const State nx = s.state_of(t.state);
                os << st.count << ',' << st.status << ',' << a << ',' << nx.count << ',' << nx.status
                   << ',' << t.prob << ',' << row.sojourn << ',' << row.cost << '\n';
            }
        }
    }
}

}  // namespace onoffq
