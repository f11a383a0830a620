#include "vatgame/model.hpp"

#include <cctype>
#include <cmath>
#include <string>

namespace vatgame {

namespace {

void require_finite(double value, const char* name) {
    if (!std::isfinite(value)) {
        throw NonFiniteInput(std::string("non-finite value for ") + name);
    }
}

void require_range(double value, double lo, double hi, bool hi_open, const char* name) {
    require_finite(value, name);
    bool ok = value >= lo && (hi_open ? value < hi : value <= hi);
    if (!ok) {
        throw InvalidParameter(std::string(name) + " = " + std::to_string(value) +
                               " outside its admissible range");
    }
}

void require_nonnegative(double value, const char* name) {
    require_finite(value, name);
    if (value < 0.0) {
        throw InvalidParameter(std::string(name) + " must be nonnegative");
    }
}

bool is_evasion(Event e) {
    return e == Event::EvadeLT1 || e == Event::EvadeLT2 || e == Event::EvadeWT ||
           e == Event::EvadeLTAppendix;
}

struct Outcome {
    double buyer;
    double seller;
    RevenueBreakdown gov;
};

Outcome untaxed(const TransactionEndowments& te) {
    return {te.y_B - te.x_O, te.y_S + te.x_O - te.x_I, {}};
}

Outcome compute(Scenario scenario, AuditState audit, Event event, const TaxPolicy& p,
                const TransactionEndowments& te) {
    p.validate();
    te.validate();
    if (!is_defined(scenario, audit, event)) {
        throw UndefinedEvent(std::string(to_string(event)) + " is not defined under " +
                             std::string(to_string(scenario)) +
                             (audit == AuditState::Audited ? " (audited)" : " (not audited)"));
    }

    if (scenario == Scenario::NoTaxes) return untaxed(te);

    const double net_buyer_income = (1.0 - p.t_B) * te.y_B;
    Outcome out{};
    out.gov.buyer_income_tax = p.t_B * te.y_B;

    switch (event) {
    case Event::Comply:
        out.seller = (1.0 - p.t_S) * (te.y_S + te.x_O - te.x_I);
        out.gov.seller_income_tax = p.t_S * (te.y_S + te.x_O - te.x_I);
        if (scenario == Scenario::TaxWithDeductions) {
            const double documented = te.x_O * (1.0 + p.delta * p.v);
            out.buyer = net_buyer_income - documented + p.theta * documented;
            out.gov.buyer_income_tax -= p.theta * documented;
            out.gov.vat = te.x_O * p.delta * p.v;
        } else {
            out.buyer = net_buyer_income - te.x_O * (1.0 + p.v);
            out.gov.vat = p.v * te.x_O;
        }
        return out;

    case Event::EvadeLT1:
        // Input cost including its VAT is deducted from taxable income.
        out.seller = (1.0 - p.t_S) * (te.y_S - te.x_I * (1.0 + p.v)) + te.x_O;
        out.gov.seller_income_tax = p.t_S * (te.y_S - te.x_I * (1.0 + p.v));
        out.gov.vat = p.v * te.x_I;
        break;

    case Event::EvadeLT2:
        // Input cost borne without any tax shield.
        out.seller = (1.0 - p.t_S) * te.y_S - te.x_I * (1.0 + p.v) + te.x_O;
        out.gov.seller_income_tax = p.t_S * te.y_S;
        out.gov.vat = p.v * te.x_I;
        break;

    case Event::EvadeWT:
        out.seller = (1.0 - p.t_S) * te.y_S + te.x_O - te.x_I;
        out.gov.seller_income_tax = p.t_S * te.y_S;
        break;

    case Event::EvadeLTAppendix:
        // Input cost deducted from taxable income, input VAT not recovered.
        out.seller = (1.0 - p.t_S) * (te.y_S - te.x_I) + te.x_O - p.v * te.x_I;
        out.gov.seller_income_tax = p.t_S * (te.y_S - te.x_I);
        out.gov.vat = p.v * te.x_I;
        break;
    }

    out.buyer = net_buyer_income - te.x_O;
    if (audit == AuditState::Audited) {
        const double vat_sanction = te.x_O * p.v * (1.0 + p.s_V);
        const double income_sanction = te.x_O * p.t_S * (1.0 + p.s_yS);
        out.buyer -= vat_sanction;
        out.seller -= income_sanction;
        out.gov.vat_sanction = vat_sanction;
        out.gov.income_tax_sanction = income_sanction;
    }
    return out;
}

std::string lower_alnum(std::string_view text) {
    std::string out;
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    return out;
}

} // namespace

void TaxPolicy::validate() const {
    require_range(t_S, 0.0, 1.0, true, "t_S");
    require_range(t_B, 0.0, 1.0, true, "t_B");
    require_range(v, 0.0, 1.0, true, "v");
    require_range(delta, 0.0, 1.0, false, "delta");
    require_range(theta, 0.0, 1.0, false, "theta");
    require_nonnegative(s_V, "s_V");
    require_nonnegative(s_yS, "s_yS");
}

void TransactionEndowments::validate() const {
    require_nonnegative(x_O, "x_O");
    require_nonnegative(x_I, "x_I");
    require_nonnegative(y_S, "y_S");
    require_nonnegative(y_B, "y_B");
}

AuditRegime AuditRegime::bayesian(double gamma) {
    require_range(gamma, 0.0, 1.0, false, "gamma");
    return AuditRegime(Kind::Bayesian, gamma);
}

bool is_defined(Scenario scenario, AuditState audit, Event event) {
    if (event != Event::EvadeLTAppendix) return true;
    return scenario == Scenario::Tax && audit == AuditState::NotAudited;
}

PayoffVector payoff_event(Scenario scenario, AuditState audit, Event event,
                          const TaxPolicy& policy, const TransactionEndowments& te) {
    Outcome o = compute(scenario, audit, event, policy, te);
    return {o.buyer, o.seller, o.gov.total()};
}

RevenueBreakdown revenue_breakdown(Scenario scenario, AuditState audit, Event event,
                                   const TaxPolicy& policy, const TransactionEndowments& te) {
    return compute(scenario, audit, event, policy, te).gov;
}

PayoffVector expected_payoff(Scenario scenario, const AuditRegime& regime, Event event,
                             const TaxPolicy& policy, const TransactionEndowments& te,
                             SanctionBaseMode mode) {
    const double g = regime.gamma();
    const PayoffVector calm = payoff_event(scenario, AuditState::NotAudited, event, policy, te);
    if (regime.kind() == AuditRegime::Kind::NoAudit) return calm;

    const PayoffVector hit = payoff_event(scenario, AuditState::Audited, event, policy, te);
    PayoffVector mixed{(1.0 - g) * calm.buyer + g * hit.buyer,
                       (1.0 - g) * calm.seller + g * hit.seller,
                       (1.0 - g) * calm.government + g * hit.government};

    if (mode == SanctionBaseMode::PaperLiteral && scenario != Scenario::NoTaxes &&
        is_evasion(event)) {
        mixed.buyer = calm.buyer - g * policy.v * (1.0 + policy.s_V);
    }
    return mixed;
}

double conservation_residual(const PayoffVector& pv, const TransactionEndowments& te) {
    return pv.total() - (te.y_B + te.y_S - te.x_I);
}

double magnitude_scale(const TransactionEndowments& te) {
    return te.y_B + te.y_S + te.x_O + te.x_I + 1.0;
}

double tie_tolerance(const TransactionEndowments& te) { return 1e-9 * magnitude_scale(te); }

std::string_view to_string(Scenario s) {
    switch (s) {
    case Scenario::NoTaxes: return "NoTaxes";
    case Scenario::Tax: return "Tax";
    case Scenario::TaxWithDeductions: return "TaxWithDeductions";
    }
    return "?";
}

std::string_view to_string(Event e) {
    switch (e) {
    case Event::Comply: return "Comply";
    case Event::EvadeLT1: return "EvadeLT1";
    case Event::EvadeLT2: return "EvadeLT2";
    case Event::EvadeWT: return "EvadeWT";
    case Event::EvadeLTAppendix: return "EvadeLTAppendix";
    }
    return "?";
}

std::string_view to_string(AuditRegime::Kind k) {
    switch (k) {
    case AuditRegime::Kind::NoAudit: return "NoAudit";
    case AuditRegime::Kind::CertainAudit: return "CertainAudit";
    case AuditRegime::Kind::Bayesian: return "Bayesian";
    }
    return "?";
}

std::string_view to_string(SanctionBaseMode m) {
    return m == SanctionBaseMode::Corrected ? "corrected" : "paper-literal";
}

Scenario parse_scenario(std::string_view text) {
    const std::string key = lower_alnum(text);
    if (key == "notaxes") return Scenario::NoTaxes;
    if (key == "tax") return Scenario::Tax;
    if (key == "taxwithdeductions") return Scenario::TaxWithDeductions;
    throw InvalidParameter("unknown scenario '" + std::string(text) + "'");
}

Event parse_event(std::string_view text) {
    const std::string key = lower_alnum(text);
    for (Event e : {Event::Comply, Event::EvadeLT1, Event::EvadeLT2, Event::EvadeWT,
                    Event::EvadeLTAppendix}) {
        if (key == lower_alnum(to_string(e))) return e;
    }
    throw InvalidParameter("unknown event '" + std::string(text) + "'");
}

SanctionBaseMode parse_mode(std::string_view text) {
    const std::string key = lower_alnum(text);
    if (key == "corrected") return SanctionBaseMode::Corrected;
    if (key == "paperliteral") return SanctionBaseMode::PaperLiteral;
    throw InvalidParameter("unknown mode '" + std::string(text) + "'");
}

} // namespace vatgame
