#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace onoffq {

/// Thrown when model parameters violate a sign assumption.  `field()` names
/// the offending parameter.
class ValidationError : public std::runtime_error {
public:
    ValidationError(std::string field, const std::string& what)
        : std::runtime_error(what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Thrown when an internal consistency check fails.  Indicates a bug in the
/// assembly or the solver, not bad user input.
class InternalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Cost and rate parameters of a controlled M/M/inf instance.
///
/// Requirements (see validate_params): lambda, mu, h, c > 0; s0, s1 >= 0 with
/// s0 + s1 > 0.  The running cost c is already net of the idling cost.
struct ModelParams {
    double lambda = 0;  ///< arrival rate (customers per unit time)
    double mu = 0;      ///< service rate of an individual server
    double h = 0;       ///< holding cost rate per customer per unit time
    double c = 0;       ///< running cost rate per unit time while on
    double s0 = 0;      ///< switch-off cost
    double s1 = 0;      ///< switch-on cost

    /// Offered load.  Derived, never stored.
    double rho() const noexcept { return lambda / mu; }
};

/// Returns `p` unchanged if every sign condition holds, otherwise throws
/// ValidationError naming the first violated field.
ModelParams validate_params(const ModelParams& p);

enum class Action : int { off = 0, on = 1 };

/// State of the controlled queue: the number of customers and the on/off
/// status in effect at the last jump epoch.
struct State {
    long count = 0;  ///< i >= 0
    int status = 0;  ///< 0 = off, 1 = on

    friend bool operator==(const State&, const State&) = default;
};

/// (M,N)-policy: switch the running system off when the count drops to
/// `switch_off_level` (M); switch the idle system on when the count reaches
/// `switch_on_level` (N > M).
struct MnPolicy {
    long switch_off_level = 0;
    long switch_on_level = 1;
};

/// n-full-service policy: never switch a running system off; switch the idle
/// system on as soon as the count is >= `activation_level` (n).
struct FullServicePolicy {
    long activation_level = 0;
};

/// Explicit action table on the count prefix [0, cutoff), plus the mandatory
/// all-on tail for counts >= cutoff.
struct TablePolicy {
    long cutoff = 0;
    std::vector<Action> when_off;  ///< action at (i, 0), i < cutoff
    std::vector<Action> when_on;   ///< action at (i, 1), i < cutoff
};

/// A deterministic stationary policy in one of the three finitely
/// representable forms.  Immutable after construction.
class StationaryPolicy {
public:
    StationaryPolicy(MnPolicy p);           // NOLINT(google-explicit-constructor)
    StationaryPolicy(FullServicePolicy p);  // NOLINT(google-explicit-constructor)
    StationaryPolicy(TablePolicy p);        // NOLINT(google-explicit-constructor)

    Action action(const State& s) const;

    bool is_mn() const noexcept { return std::holds_alternative<MnPolicy>(kind_); }
    bool is_full_service() const noexcept { return std::holds_alternative<FullServicePolicy>(kind_); }
    const MnPolicy& as_mn() const { return std::get<MnPolicy>(kind_); }
    const FullServicePolicy& as_full_service() const { return std::get<FullServicePolicy>(kind_); }

    /// Human-readable form, e.g. "(4,39)-policy" or "3-full-service".
    std::string describe() const;

private:
    std::variant<MnPolicy, FullServicePolicy, TablePolicy> kind_;
};

/// Action prescribed by `pol` in state `s`.
Action policy_action(const StationaryPolicy& pol, const State& s);

}  // namespace onoffq
