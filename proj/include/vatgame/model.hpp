#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vatgame {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class UndefinedEvent : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class NonFiniteInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

/// Fiscal rates. Income-tax and VAT rates live in [0, 1), the discount and
/// deduction shares in [0, 1], sanction surcharges are nonnegative.
struct TaxPolicy {
    double t_S = 0.0;   // seller marginal income-tax rate
    double t_B = 0.0;   // buyer marginal income-tax rate
    double v = 0.0;     // VAT rate
    double delta = 1.0; // VAT multiplier under deductions (1 = full VAT)
    double theta = 0.0; // deductible share of the documented expense
    double s_V = 0.0;   // surcharge on evaded VAT
    double s_yS = 0.0;  // surcharge on the seller's undeclared income tax

    /// Throws NonFiniteInput or InvalidParameter.
    void validate() const;
};

/// Values of a single final transaction and the incomes it is added to.
struct TransactionEndowments {
    double x_O = 0.0; // output value
    double x_I = 0.0; // input value
    double y_S = 0.0; // seller income before the transaction
    double y_B = 0.0; // buyer income before the transaction

    void validate() const;
};

enum class Scenario { NoTaxes, Tax, TaxWithDeductions };

enum class AuditState { NotAudited, Audited };

/// The defined joint profiles. Off-diagonal cells (one side complies while
/// the other evades) cannot be expressed.
enum class Event { Comply, EvadeLT1, EvadeLT2, EvadeWT, EvadeLTAppendix };

inline constexpr Event kStrategicEvents[] = {Event::Comply, Event::EvadeLT1, Event::EvadeLT2,
                                             Event::EvadeWT};

enum class SanctionBaseMode {
    Corrected,    // sanction on the buyer scales with x_O
    PaperLiteral, // buyer expectation drops the x_O factor on the VAT sanction
};

/// Audit probability seen by the private agents.
class AuditRegime {
public:
    enum class Kind { NoAudit, CertainAudit, Bayesian };

    static AuditRegime no_audit() { return AuditRegime(Kind::NoAudit, 0.0); }
    static AuditRegime certain_audit() { return AuditRegime(Kind::CertainAudit, 1.0); }
    /// Throws InvalidParameter unless gamma is in [0, 1].
    static AuditRegime bayesian(double gamma);

    Kind kind() const { return kind_; }
    double gamma() const { return gamma_; }

private:
    AuditRegime(Kind kind, double gamma) : kind_(kind), gamma_(gamma) {}

    Kind kind_;
    double gamma_;
};

struct PayoffVector {
    double buyer = 0.0;
    double seller = 0.0;
    double government = 0.0;

    double total() const { return buyer + seller + government; }
};

/// Government revenue by stream. Sums to PayoffVector::government.
struct RevenueBreakdown {
    double seller_income_tax = 0.0; // net of cost deductions
    double buyer_income_tax = 0.0;  // net of the VAT-expense deduction
    double vat = 0.0;
    double vat_sanction = 0.0;        // recovered VAT plus surcharge
    double income_tax_sanction = 0.0; // recovered income tax plus surcharge

    double total() const {
        return seller_income_tax + buyer_income_tax + vat + vat_sanction + income_tax_sanction;
    }
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// True when `event` has a payoff in this scenario and audit state.
bool is_defined(Scenario scenario, AuditState audit, Event event);

/// Payoffs of one realized audit state. Under NoTaxes every strategic event
/// returns the same untaxed reallocation. Comply does not depend on `audit`.
PayoffVector payoff_event(Scenario scenario, AuditState audit, Event event,
                          const TaxPolicy& policy, const TransactionEndowments& te);

RevenueBreakdown revenue_breakdown(Scenario scenario, AuditState audit, Event event,
                                   const TaxPolicy& policy, const TransactionEndowments& te);

/// Expected payoffs as the gamma-mixture of the not-audited and audited
/// outcomes. In PaperLiteral mode the buyer's expected VAT sanction on an
/// evasion event is gamma*v*(1+s_V) instead of gamma*x_O*v*(1+s_V).
PayoffVector expected_payoff(Scenario scenario, const AuditRegime& regime, Event event,
                             const TaxPolicy& policy, const TransactionEndowments& te,
                             SanctionBaseMode mode = SanctionBaseMode::Corrected);

/// Total payoff minus the pre-transaction surplus y_B + y_S - x_I.
double conservation_residual(const PayoffVector& pv, const TransactionEndowments& te);

/// Magnitude used for relative tolerances: y_B + y_S + x_O + x_I + 1.
double magnitude_scale(const TransactionEndowments& te);

/// Absolute tolerance under which two payoffs are treated as equal.
double tie_tolerance(const TransactionEndowments& te);

// Names used in emitted tables; parse_* accept the same spellings.
std::string_view to_string(Scenario s);
std::string_view to_string(Event e);
std::string_view to_string(AuditRegime::Kind k);
std::string_view to_string(SanctionBaseMode m);
Scenario parse_scenario(std::string_view text);
Event parse_event(std::string_view text);
SanctionBaseMode parse_mode(std::string_view text);

} // namespace vatgame
