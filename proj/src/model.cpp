#include "onoffq/model.hpp"

#include <sstream>

namespace onoffq {

namespace {

[[noreturn]] void fail(const char* field, const std::string& condition) {
    throw ValidationError(field, "parameter validation failed: " + condition);
}

}  // namespace

ModelParams validate_params(const ModelParams& p) {
    if (!(p.lambda > 0)) fail("lambda", "lambda > 0 required");
    if (!(p.mu > 0)) fail("mu", "mu > 0 required");
    if (!(p.h > 0)) fail("h", "h > 0 required");
    if (!(p.c > 0)) fail("c", "c > 0 required");
    if (!(p.s0 >= 0)) fail("s0", "s0 >= 0 required");
    if (!(p.s1 >= 0)) fail("s1", "s1 >= 0 required");
    if (!(p.s0 + p.s1 > 0)) fail("s0", "s0 + s1 > 0 required");
    return p;
}

StationaryPolicy::StationaryPolicy(MnPolicy p) : kind_(p) {
    if (p.switch_off_level < 0)
        throw ValidationError("switch_off_level", "(M,N)-policy requires M >= 0");
    if (p.switch_on_level <= p.switch_off_level)
        throw ValidationError("switch_on_level", "(M,N)-policy requires N > M");
}

StationaryPolicy::StationaryPolicy(FullServicePolicy p) : kind_(p) {
    if (p.activation_level < 0)
        throw ValidationError("activation_level", "full-service policy requires n >= 0");
}

StationaryPolicy::StationaryPolicy(TablePolicy p) : kind_(std::move(p)) {
    const auto& t = std::get<TablePolicy>(kind_);
    if (t.cutoff < 0) throw ValidationError("cutoff", "table cutoff must be >= 0");
    if (t.when_off.size() != static_cast<std::size_t>(t.cutoff) ||
        t.when_on.size() != static_cast<std::size_t>(t.cutoff))
        throw ValidationError("cutoff", "table rows must cover exactly [0, cutoff)");
}

Action StationaryPolicy::action(const State& s) const {
    struct Visitor {
        const State& s;
        Action operator()(const MnPolicy& p) const {
            if (s.status == 1) return s.count > p.switch_off_level ? Action::on : Action::off;
            return s.count >= p.switch_on_level ? Action::on : Action::off;
        }
        Action operator()(const FullServicePolicy& p) const {
            if (s.status == 1) return Action::on;
            return s.count >= p.activation_level ? Action::on : Action::off;
        }
        Action operator()(const TablePolicy& p) const {
            if (s.count >= p.cutoff) return Action::on;  // mandatory all-on tail
            return s.status == 1 ? p.when_on[static_cast<std::size_t>(s.count)]
                                 : p.when_off[static_cast<std::size_t>(s.count)];
        }
    };
    return std::visit(Visitor{s}, kind_);
}

std::string StationaryPolicy::describe() const {
    std::ostringstream os;
    if (is_mn()) {
        const auto& p = as_mn();
        os << "(" << p.switch_off_level << "," << p.switch_on_level << ")-policy";
    } else if (is_full_service()) {
        os << as_full_service().activation_level << "-full-service";
    } else {
        os << "table-policy(cutoff=" << std::get<TablePolicy>(kind_).cutoff << ")";
    }
    return os.str();
}

Action policy_action(const StationaryPolicy& pol, const State& s) { return pol.action(s); }

}  // namespace onoffq
