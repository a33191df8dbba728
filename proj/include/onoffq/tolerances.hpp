#pragma once

#include <cstdint>

namespace onoffq {

// Central home for every numerical tolerance and truncation constant.  The
// defaults are used throughout the library; callers that need different
// values pass an adjusted copy.
struct Tolerances {
    /// Relative truncation threshold for all-positive series.
    double series_rel = 1e-14;
    /// Absolute floor below which a series term always stops the summation.
    double series_abs = 1e-30;
    /// Cap on series terms; exceeding it signals a parameter pathology.
    std::uint64_t series_max_terms = 1'000'000;

    /// Row-stochasticity check on assembled transition rows.
    double row_stochastic = 1e-12;
    /// Acceptable residual on LP constraints at the solution.
    double lp_feasibility = 1e-9;
    /// Threshold above which an occupation-measure entry counts as positive.
    double lp_support = 1e-9;

    /// Relative agreement required when a quantity is computed two ways.
    double identity_rel = 1e-8;
    /// Relative movement allowed when a truncation level is doubled.
    double truncation_rel = 1e-8;
};

inline const Tolerances& default_tolerances() {
    static const Tolerances t{};
    return t;
}

}  // namespace onoffq
