#include "onoffq/closed_forms.hpp"

#include <algorithm>
#include <cmath>

namespace onoffq {

namespace {

void require_positive_alpha(DiscountRate r) {
    if (!(r.alpha > 0)) throw ValidationError("alpha", "discount rate must be > 0");
}

}  // namespace

namespace detail {

// r_i = (i!/rho^i) * sum_{j>i} rho^j/j! = sum_{m>=1} rho^m * i!/(i+m)!
//
// The naive product of i!/rho^i (huge) with the exponentially small tail of
// e^rho cancels catastrophically; this form is all-positive and each term
// follows from the previous one by a single multiplication with rho/(i+m),
// so the terms decay at least geometrically once m > rho.
double busy_tail_series(long i, double rho, const Tolerances& tol) {
    double term = rho / static_cast<double>(i + 1);
    double sum = term;
    for (std::uint64_t m = 2; m <= tol.series_max_terms; ++m) {
        term *= rho / static_cast<double>(i + static_cast<long>(m));
        sum += term;
        if (term < tol.series_rel * sum || term < tol.series_abs) return sum;
    }
    throw InternalError("busy-period tail series did not converge within the term cap");
}

}  // namespace detail

double activation_threshold(const ModelParams& p, DiscountRate r) {
    require_positive_alpha(r);
    return (p.mu + r.alpha) * (p.c + r.alpha * p.s1) / (p.h * p.mu);
}

long activation_level(const ModelParams& p, DiscountRate r) {
    return static_cast<long>(std::ceil(activation_threshold(p, r)));
}

long reduction_level(const ModelParams& p) {
    return static_cast<long>(std::floor(p.c / p.h + 1.0));
}

double always_on_value(const ModelParams& p, DiscountRate r, const State& s) {
    require_positive_alpha(r);
    const double a = r.alpha;
    return (1 - s.status) * p.s1 + p.h * static_cast<double>(s.count) / (p.mu + a) +
           p.h * p.lambda / (a * (p.mu + a)) + p.c / a;
}

double passive_value(const ModelParams& p, DiscountRate r, long i) {
    require_positive_alpha(r);
    return p.h * static_cast<double>(i) / r.alpha + p.h * p.lambda / (r.alpha * r.alpha);
}

double full_service_value_off(const ModelParams& p, DiscountRate r, long i) {
    require_positive_alpha(r);
    const double a = r.alpha;
    const long n = activation_level(p, r);
    if (i >= n) return p.s1 + always_on_value(p, r, State{i, 1});
    const double beta = p.lambda / (p.lambda + a);
    double sum = 0;
    double pow_beta = 1;
    for (long k = 0; k < n - i; ++k) {
        sum += pow_beta * p.h * static_cast<double>(i + k) / (p.lambda + a);
        pow_beta *= beta;
    }
    return sum + pow_beta * (p.s1 + always_on_value(p, r, State{n, 1}));
}

BusyPeriodTable busy_periods(const ModelParams& p, long levels, const Tolerances& tol) {
    if (levels < 1) throw ValidationError("levels", "busy-period table needs at least one level");
    const double rho = p.rho();
    BusyPeriodTable table;
    table.rho = rho;
    table.lambda = p.lambda;
    table.b.resize(static_cast<std::size_t>(levels) + 1);
    table.b[0] = 0.0;
    table.b[1] = std::expm1(rho) / p.lambda;
    for (long i = 2; i <= levels; ++i)
        table.b[static_cast<std::size_t>(i)] =
            table.b[static_cast<std::size_t>(i) - 1] + detail::busy_tail_series(i - 1, rho, tol) / p.lambda;
    return table;
}

double level_return_time(const ModelParams& p, long i, const Tolerances& tol) {
    if (i < 0) throw ValidationError("i", "level must be >= 0");
    return detail::busy_tail_series(i, p.rho(), tol) / p.lambda;
}

namespace {

double mean_queue_from_b(const ModelParams& p, long N, double bN) {
    const double dN = static_cast<double>(N);
    return p.rho() + (dN - 1) / 2 * (dN / (dN + p.lambda * bN));
}

double zero_n_cost_from_b(const ModelParams& p, long N, double bN) {
    return p.h * mean_queue_from_b(p, N, bN) +
           (p.s0 + p.s1 + p.c * bN) / (static_cast<double>(N) / p.lambda + bN);
}

}  // namespace

double zero_n_mean_queue(const ModelParams& p, long N, const Tolerances& tol) {
    if (N < 1) throw ValidationError("N", "(0,N)-policy requires N >= 1");
    return mean_queue_from_b(p, N, busy_periods(p, N, tol).b.back());
}

double zero_n_average_cost(const ModelParams& p, long N, const Tolerances& tol) {
    if (N < 1) throw ValidationError("N", "(0,N)-policy requires N >= 1");
    return zero_n_cost_from_b(p, N, busy_periods(p, N, tol).b.back());
}

long zero_n_search_bound(const ModelParams& p) {
    long n = std::max<long>(1, static_cast<long>(std::ceil(p.c / p.h)));
    const double target = (p.s0 + p.s1) / p.h;
    while (static_cast<double>(n) * static_cast<double>(n + 1) / (2 * p.lambda) < target) ++n;
    return n;
}

BestZeroN best_zero_n(const ModelParams& p, const Tolerances& tol) {
    const long bound = zero_n_search_bound(p);
    // One shared busy-period table; v(N) only needs B_N.
    const BusyPeriodTable table = busy_periods(p, bound, tol);
    BestZeroN best{1, 0};
    bool have = false;
    for (long N = 1; N <= bound; ++N) {
        const double v = zero_n_cost_from_b(p, N, table.b[static_cast<std::size_t>(N)]);
        if (!have || v < best.average_cost) {
            best = {N, v};
            have = true;
        }
    }
    return best;
}

}  // namespace onoffq
