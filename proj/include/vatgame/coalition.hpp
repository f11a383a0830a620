#pragma once

#include <vector>

#include "vatgame/dominance.hpp"
#include "vatgame/model.hpp"

namespace vatgame {

/// The seller evasion strategy a coalition frontier is drawn against.
enum class EvasionVariant { LT1, LT2, WT };

inline constexpr EvasionVariant kEvasionVariants[] = {EvasionVariant::LT1, EvasionVariant::LT2,
                                                      EvasionVariant::WT};

Event event_of(EvasionVariant variant);
std::string_view to_string(EvasionVariant variant);

/// theta(gamma) = intercept + slope*gamma. Above the line the buyer-seller
/// coalition weakly prefers compliance with deductions to `variant`.
struct ThresholdLine {
    double intercept = 0.0;
    double slope = 0.0;
    EvasionVariant variant = EvasionVariant::LT1;
    SanctionBaseMode mode = SanctionBaseMode::Corrected;

    double at(double gamma) const { return intercept + slope * gamma; }
};

/// Summed buyer and seller expected payoff in the deductions scenario.
/// Comply uses `policy.theta`; evasion payoffs do not depend on it.
double coalition_payoff(Event event, double gamma, const TaxPolicy& policy,
                        const TransactionEndowments& te,
                        SanctionBaseMode mode = SanctionBaseMode::Corrected);

/// Rebuilt from coalition payoffs at theta in {0, 1} and gamma in {0, 1}.
/// Both are affine, so four evaluations pin the line exactly.
/// Throws InvalidParameter when x_O*(1 + v*delta) = 0.
ThresholdLine theta_frontier(EvasionVariant variant, const TaxPolicy& policy,
                             const TransactionEndowments& te,
                             SanctionBaseMode mode = SanctionBaseMode::Corrected);

/// The audit probability at which theta = 0 already suffices.
ThresholdResult gamma_for_compliance_without_deductions(
    EvasionVariant variant, const TaxPolicy& policy, const TransactionEndowments& te,
    SanctionBaseMode mode = SanctionBaseMode::Corrected);

/// Argmax of coalition_payoff over the strategic events, ties in canonical order.
std::vector<Event> coalition_best_event(double gamma, const TaxPolicy& policy,
                                        const TransactionEndowments& te,
                                        SanctionBaseMode mode = SanctionBaseMode::Corrected);

} // namespace vatgame
