#pragma once

// Test-only oracles. Each payoff is written out term by term, one equation
// per event, without sharing any code with src/model.cpp.

#include <cmath>
#include <random>

#include "vatgame/model.hpp"

namespace vatgame::test {

inline TaxPolicy appendix_policy() {
    TaxPolicy p;
    p.t_S = 0.24;
    p.t_B = 0.33;
    p.v = 0.22;
    p.delta = 1.0;
    p.theta = 0.10;
    p.s_V = 0.3;
    p.s_yS = 0.3;
    return p;
}

inline TransactionEndowments appendix_endowments() { return {10000.0, 5000.0, 10000.0, 20000.0}; }

inline TaxPolicy section6_policy() { return appendix_policy(); }

inline TransactionEndowments section6_endowments() { return {100.0, 50.0, 10000.0, 20000.0}; }

inline PayoffVector hand_payoff(Scenario sc, bool audited, Event ev, const TaxPolicy& p,
                                const TransactionEndowments& t) {
    const double tS = p.t_S, tB = p.t_B, v = p.v, d = p.delta, th = p.theta;
    const double sV = p.s_V, sy = p.s_yS;
    const double xO = t.x_O, xI = t.x_I, yS = t.y_S, yB = t.y_B;

    if (sc == Scenario::NoTaxes) return {yB - xO, yS + xO - xI, 0.0};

    if (ev == Event::Comply && sc == Scenario::TaxWithDeductions) {
        return {(1 - tB) * yB - xO * (1 + d * v) + th * xO * (1 + d * v),
                (1 - tS) * (yS + xO - xI),
                tS * (yS + xO - xI) + tB * yB - th * xO * (1 + d * v) + xO * d * v};
    }
    if (ev == Event::Comply) {
        return {(1 - tB) * yB - xO * (1 + v), (1 - tS) * (yS + xO - xI),
                tB * yB + tS * (yS + xO - xI) + v * xO};
    }
    if (ev == Event::EvadeLTAppendix) {
        return {(1 - tB) * yB - xO, (1 - tS) * (yS - xI) + xO - v * xI,
                tB * yB + tS * (yS - xI) + v * xI};
    }
    if (!audited) {
        switch (ev) {
        case Event::EvadeLT1:
            return {(1 - tB) * yB - xO, (1 - tS) * (yS - xI * (1 + v)) + xO,
                    tS * (yS - xI * (1 + v)) + tB * yB + v * xI};
        case Event::EvadeLT2:
            return {(1 - tB) * yB - xO, (1 - tS) * yS - xI * (1 + v) + xO,
                    tB * yB + tS * yS + v * xI};
        default:
            return {(1 - tB) * yB - xO, (1 - tS) * yS + xO - xI, tS * yS + tB * yB};
        }
    }
    switch (ev) {
    case Event::EvadeLT1:
        return {(1 - tB) * yB - xO * (1 + v * (1 + sV)),
                (1 - tS) * (yS - xI * (1 + v)) + xO - xO * tS * (1 + sy),
                tB * yB + xO * v * (1 + sV) + tS * (yS - xI * (1 + v)) + xO * tS * (1 + sy) +
                    v * xI};
    case Event::EvadeLT2:
        return {(1 - tB) * yB - xO * (1 + v * (1 + sV)),
                (1 - tS) * yS - xI * (1 + v) + xO - xO * tS * (1 + sy),
                tB * yB + xO * v * (1 + sV) + tS * yS + v * xI + xO * tS * (1 + sy)};
    default:
        return {(1 - tB) * yB - xO * (1 + v * (1 + sV)), (1 - tS) * yS + xO * (1 - tS * (1 + sy)) - xI,
                tB * yB + xO * v * (1 + sV) + tS * yS + tS * xO * (1 + sy)};
    }
}

// Coalition frontiers worked out by hand from the payoffs above:
// comply - evade = x_O(1 + v delta) theta - numerator + gamma * sanction.
struct HandLine {
    double intercept;
    double slope;
};

inline HandLine hand_frontier(Event ev, const TaxPolicy& p, const TransactionEndowments& t,
                              bool literal) {
    const double per_theta = t.x_O * (1 + p.v * p.delta);
    const double buyer_sanction = (literal ? 1.0 : t.x_O) * p.v * (1 + p.s_V);
    const double seller_sanction = p.t_S * t.x_O * (1 + p.s_yS);
    double num = 0.0;
    switch (ev) {
    case Event::EvadeLT1:
        num = t.x_O * p.delta * p.v + p.t_S * t.x_O - (1 - p.t_S) * p.v * t.x_I;
        break;
    case Event::EvadeLT2:
        num = t.x_O * (p.t_S + p.delta * p.v) - t.x_I * (p.t_S + p.v);
        break;
    default:
        num = p.t_S * (t.x_O - t.x_I) + t.x_O * p.delta * p.v;
        break;
    }
    return {num / per_theta, -(buyer_sanction + seller_sanction) / per_theta};
}

/// Random admissible parameters, independent of the library's draw generator.
struct RandomCase {
    TaxPolicy policy;
    TransactionEndowments te;
};

inline RandomCase random_case(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> rate(0.0, 0.9);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> sanction(0.0, 2.0);
    std::uniform_real_distribution<double> logv(0.0, 6.0);
    RandomCase c;
    c.policy.t_S = rate(rng);
    c.policy.t_B = rate(rng);
    c.policy.v = rate(rng);
    c.policy.delta = unit(rng);
    c.policy.theta = unit(rng);
    c.policy.s_V = sanction(rng);
    c.policy.s_yS = sanction(rng);
    c.te.x_O = std::pow(10.0, logv(rng));
    c.te.x_I = c.te.x_O * unit(rng) * 1.2; // sometimes above x_O
    c.te.y_S = std::pow(10.0, logv(rng));
    c.te.y_B = std::pow(10.0, logv(rng));
    return c;
}

inline bool close_rel(double a, double b, double scale, double rel) {
    return std::abs(a - b) <= rel * scale;
}

} // namespace vatgame::test
