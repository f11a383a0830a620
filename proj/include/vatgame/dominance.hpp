#pragma once

#include <vector>

#include "vatgame/model.hpp"

namespace vatgame {

enum class Agent { Buyer, Seller };

struct Preference {
    enum class Kind { FirstStrict, SecondStrict, Indifferent };
    Kind kind;
    double margin; // payoff(first) - payoff(second)
};

/// A closed-form bound on one parameter, or a sentinel when the bound does
/// not exist. Sentinels describe the stated inequality: AlwaysSatisfied means
/// it holds for every admissible value, NeverSatisfied for none.
struct ThresholdResult {
    enum class Kind { Value, AlwaysSatisfied, NeverSatisfied, Undefined };
    Kind kind = Kind::Undefined;
    double value = 0.0;
    bool feasible_in_unit_interval = false;

    static ThresholdResult of(double v) { return {Kind::Value, v, v >= 0.0 && v <= 1.0}; }
    static ThresholdResult always() { return {Kind::AlwaysSatisfied, 0.0, false}; }
    static ThresholdResult never() { return {Kind::NeverSatisfied, 0.0, false}; }
    static ThresholdResult undefined() { return {Kind::Undefined, 0.0, false}; }

    bool has_value() const { return kind == Kind::Value; }
};

double agent_payoff(Agent agent, const PayoffVector& pv);

Preference compare(Agent agent, Event first, Event second, Scenario scenario,
                   const AuditRegime& regime, const TaxPolicy& policy,
                   const TransactionEndowments& te,
                   SanctionBaseMode mode = SanctionBaseMode::Corrected);

// Seller, Comply vs EvadeLT2 without audit: evasion pays when
// t_S > v*x_I/(x_O - x_I).
ThresholdResult seller_tax_threshold(const TaxPolicy& policy, const TransactionEndowments& te);

// Same comparison seen from the VAT rate: evasion pays when
// v < t_S*(x_O - x_I)/x_I. No input cost means it always pays.
ThresholdResult vat_rate_threshold(const TaxPolicy& policy, const TransactionEndowments& te);

// Buyer complies under deductions when
// theta > (v*delta - gamma*v*(1 + s_V))/(1 + v*delta).
// NoAudit and CertainAudit are the gamma = 0 and gamma = 1 cases.
ThresholdResult buyer_theta_threshold(const AuditRegime& regime, const TaxPolicy& policy);

// Buyer complies without deductions when gamma > 1/(1 + s_V).
ThresholdResult buyer_gamma_threshold(const TaxPolicy& policy);

// Seller prefers Comply to EvadeWT when gamma > (x_O - x_I)/(x_O*(1 + s_yS)).
ThresholdResult seller_gamma_threshold_ewt(const TaxPolicy& policy,
                                           const TransactionEndowments& te);

// Seller prefers Comply to EvadeLT2 when
// gamma*t_S*x_O*(1 + s_yS) > t_S*(x_O - x_I) - v*x_I.
ThresholdResult seller_gamma_threshold_elt2(const TaxPolicy& policy,
                                            const TransactionEndowments& te);

/// Every strategic event (Comply, EvadeLT1, EvadeLT2, EvadeWT) that the agent
/// weakly prefers to all others, in that canonical order.
std::vector<Event> dominant_events(Agent agent, Scenario scenario, const AuditRegime& regime,
                                   const TaxPolicy& policy, const TransactionEndowments& te,
                                   SanctionBaseMode mode = SanctionBaseMode::Corrected);

std::string_view to_string(Agent a);
std::string_view to_string(Preference::Kind k);

} // namespace vatgame
