#include "vatgame/coalition.hpp"

#include <algorithm>

namespace vatgame {

Event event_of(EvasionVariant variant) {
    switch (variant) {
    case EvasionVariant::LT1: return Event::EvadeLT1;
    case EvasionVariant::LT2: return Event::EvadeLT2;
    case EvasionVariant::WT: return Event::EvadeWT;
    }
    return Event::EvadeWT;
}

std::string_view to_string(EvasionVariant variant) {
    switch (variant) {
    case EvasionVariant::LT1: return "LT1";
    case EvasionVariant::LT2: return "LT2";
    case EvasionVariant::WT: return "WT";
    }
    return "?";
}

double coalition_payoff(Event event, double gamma, const TaxPolicy& policy,
                        const TransactionEndowments& te, SanctionBaseMode mode) {
    const PayoffVector pv = expected_payoff(Scenario::TaxWithDeductions,
                                            AuditRegime::bayesian(gamma), event, policy, te, mode);
    return pv.buyer + pv.seller;
}

ThresholdLine theta_frontier(EvasionVariant variant, const TaxPolicy& policy,
                             const TransactionEndowments& te, SanctionBaseMode mode) {
    TaxPolicy at_zero = policy;
    at_zero.theta = 0.0;
    TaxPolicy at_one = policy;
    at_one.theta = 1.0;

    // Comply is gamma-free; evasion is theta-free.
    const double comply0 = coalition_payoff(Event::Comply, 0.0, at_zero, te, mode);
    const double comply1 = coalition_payoff(Event::Comply, 0.0, at_one, te, mode);
    const double per_theta = comply1 - comply0;
    if (per_theta == 0.0) {
        throw InvalidParameter("deduction has no effect: x_O*(1 + v*delta) = 0");
    }

    const Event evade = event_of(variant);
    const double evade0 = coalition_payoff(evade, 0.0, policy, te, mode);
    const double evade1 = coalition_payoff(evade, 1.0, policy, te, mode);

    return {(evade0 - comply0) / per_theta, (evade1 - evade0) / per_theta, variant, mode};
}

ThresholdResult gamma_for_compliance_without_deductions(EvasionVariant variant,
                                                        const TaxPolicy& policy,
                                                        const TransactionEndowments& te,
                                                        SanctionBaseMode mode) {
    const ThresholdLine line = theta_frontier(variant, policy, te, mode);
    if (line.intercept <= 0.0) return ThresholdResult::of(0.0);
    if (line.slope == 0.0) return ThresholdResult::undefined();
    return ThresholdResult::of(-line.intercept / line.slope);
}

std::vector<Event> coalition_best_event(double gamma, const TaxPolicy& policy,
                                        const TransactionEndowments& te,
                                        SanctionBaseMode mode) {
    double values[std::size(kStrategicEvents)];
    for (std::size_t i = 0; i < std::size(kStrategicEvents); ++i) {
        values[i] = coalition_payoff(kStrategicEvents[i], gamma, policy, te, mode);
    }
    const double best = *std::max_element(std::begin(values), std::end(values));
    const double tol = tie_tolerance(te);

    std::vector<Event> out;
    for (std::size_t i = 0; i < std::size(kStrategicEvents); ++i) {
        if (best - values[i] <= tol) out.push_back(kStrategicEvents[i]);
    }
    return out;
}

} // namespace vatgame
