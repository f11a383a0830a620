#include "vatgame/dominance.hpp"

#include <cmath>

namespace vatgame {

double agent_payoff(Agent agent, const PayoffVector& pv) {
    return agent == Agent::Buyer ? pv.buyer : pv.seller;
}

Preference compare(Agent agent, Event first, Event second, Scenario scenario,
                   const AuditRegime& regime, const TaxPolicy& policy,
                   const TransactionEndowments& te, SanctionBaseMode mode) {
    const double a = agent_payoff(agent, expected_payoff(scenario, regime, first, policy, te, mode));
    const double b =
        agent_payoff(agent, expected_payoff(scenario, regime, second, policy, te, mode));
    const double margin = a - b;
    if (std::abs(margin) <= tie_tolerance(te)) return {Preference::Kind::Indifferent, margin};
    return {margin > 0.0 ? Preference::Kind::FirstStrict : Preference::Kind::SecondStrict, margin};
}

ThresholdResult seller_tax_threshold(const TaxPolicy& p, const TransactionEndowments& te) {
    const double value_added = te.x_O - te.x_I;
    if (value_added == 0.0) return ThresholdResult::undefined();
    if (te.x_I == 0.0) return ThresholdResult::of(0.0);
    return ThresholdResult::of(p.v * te.x_I / value_added);
}

ThresholdResult vat_rate_threshold(const TaxPolicy& p, const TransactionEndowments& te) {
    if (te.x_I == 0.0) return ThresholdResult::always();
    return ThresholdResult::of(p.t_S * (te.x_O - te.x_I) / te.x_I);
}

ThresholdResult buyer_theta_threshold(const AuditRegime& regime, const TaxPolicy& p) {
    const double g = regime.gamma();
    const double vd = p.v * p.delta;
    return ThresholdResult::of((vd - g * p.v * (1.0 + p.s_V)) / (1.0 + vd));
}

ThresholdResult buyer_gamma_threshold(const TaxPolicy& p) {
    return ThresholdResult::of(1.0 / (1.0 + p.s_V));
}

ThresholdResult seller_gamma_threshold_ewt(const TaxPolicy& p, const TransactionEndowments& te) {
    if (te.x_O == 0.0) return ThresholdResult::undefined();
    return ThresholdResult::of((te.x_O - te.x_I) / (te.x_O * (1.0 + p.s_yS)));
}

ThresholdResult seller_gamma_threshold_elt2(const TaxPolicy& p,
                                            const TransactionEndowments& te) {
    const double sanction_base = p.t_S * te.x_O;
    if (sanction_base == 0.0) return ThresholdResult::undefined();
    const double gain = p.t_S * (te.x_O - te.x_I) - p.v * te.x_I;
    if (gain < 0.0) return ThresholdResult::never();
    return ThresholdResult::of(gain / (sanction_base * (1.0 + p.s_yS)));
}

std::vector<Event> dominant_events(Agent agent, Scenario scenario, const AuditRegime& regime,
                                   const TaxPolicy& policy, const TransactionEndowments& te,
                                   SanctionBaseMode mode) {
    std::vector<Event> out;
    for (Event candidate : kStrategicEvents) {
        bool beaten = false;
        for (Event rival : kStrategicEvents) {
            if (rival == candidate) continue;
            auto pref = compare(agent, candidate, rival, scenario, regime, policy, te, mode);
            if (pref.kind == Preference::Kind::SecondStrict) {
                beaten = true;
                break;
            }
        }
        if (!beaten) out.push_back(candidate);
    }
    return out;
}

std::string_view to_string(Agent a) { return a == Agent::Buyer ? "Buyer" : "Seller"; }

std::string_view to_string(Preference::Kind k) {
    switch (k) {
    case Preference::Kind::FirstStrict: return "FirstStrict";
    case Preference::Kind::SecondStrict: return "SecondStrict";
    case Preference::Kind::Indifferent: return "Indifferent";
    }
    return "?";
}

} // namespace vatgame
