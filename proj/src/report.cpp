#include "vatgame/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "vatgame/coalition.hpp"
#include "vatgame/dominance.hpp"

namespace vatgame {

namespace {

std::string csv_cell(const Cell& cell, int precision) {
    if (const auto* s = std::get_if<std::string>(&cell)) return *s;
    if (const auto* d = std::get_if<double>(&cell)) return format_number(*d, precision);
    if (const auto* n = std::get_if<long long>(&cell)) return std::to_string(*n);
    return std::get<bool>(cell) ? "true" : "false";
}

nlohmann::json json_cell(const Cell& cell, int precision) {
    if (const auto* s = std::get_if<std::string>(&cell)) return *s;
    if (const auto* d = std::get_if<double>(&cell)) {
        // Round through the CSV text so both formats carry the same value.
        return std::stod(format_number(*d, precision));
    }
    if (const auto* n = std::get_if<long long>(&cell)) return *n;
    return std::get<bool>(cell);
}

Cell threshold_cell(const ThresholdResult& r) {
    switch (r.kind) {
    case ThresholdResult::Kind::Value: return r.value;
    case ThresholdResult::Kind::AlwaysSatisfied: return std::string("always");
    case ThresholdResult::Kind::NeverSatisfied: return std::string("never");
    case ThresholdResult::Kind::Undefined: return std::string("undefined");
    }
    return std::string("undefined");
}

std::string join_events(const std::vector<Event>& events) {
    std::string out;
    for (Event e : events) {
        if (!out.empty()) out += '|';
        out += to_string(e);
    }
    return out;
}

bool contains(const std::vector<Event>& events, Event e) {
    for (Event x : events) {
        if (x == e) return true;
    }
    return false;
}

struct AppendixStrategy {
    const char* name;
    Scenario scenario;
    Event event;
    // Published figures, in row order: seller, buyer, seller tax, buyer tax,
    // VAT, social income, private income, total taxes.
    double published[8];
};

constexpr const char* kAppendixQuantities[8] = {
    "Yf_net", "Yb_net", "gov_yf", "gov_yb", "gov_VAT", "Ysoc", "private_income", "tot_taxes"};

const AppendixStrategy kAppendixStrategies[] = {
    {"NoTaxes", Scenario::NoTaxes, Event::Comply,
     {15000, 10000, 0, 0, 0, 25000, 25000, 0}},
    {"FullCompliance", Scenario::Tax, Event::Comply,
     {11400, 1200, 3600, 6600, 2200, 25000, 12600, 12400}},
    {"EvasionLastTransaction", Scenario::Tax, Event::EvadeLTAppendix,
     {12700, 3400, 1200, 6600, 1100, 25000, 16100, 8900}},
    {"EvasionAllTransactions", Scenario::Tax, Event::EvadeWT,
     {12600, 3400, 2400, 6600, 0, 25000, 16000, 9000}},
    {"ComplianceWithDeductions", Scenario::TaxWithDeductions, Event::Comply,
     {11400, 2420, 3600, 5380, 2200, 25000, 13820, 11180}},
};

} // namespace

std::string format_number(double value, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, value);
    std::string s(buf);
    if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

void write_table(std::ostream& out, const Table& table, OutputFormat format, int precision) {
    if (format == OutputFormat::Csv) {
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            out << (i ? "," : "") << table.columns[i];
        }
        out << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                out << (i ? "," : "") << csv_cell(row[i], precision);
            }
            out << '\n';
        }
        return;
    }

    auto records = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            obj[table.columns[i]] = json_cell(row[i], precision);
        }
        records.push_back(std::move(obj));
    }
    out << records.dump(2) << '\n';
}

Table payoffs_table(const RunConfig& cfg, Scenario scenario, const AuditRegime& regime,
                    std::optional<Event> event) {
    Table t;
    t.columns = {"scenario", "regime", "gamma", "event", "y_buyer",
                 "y_seller", "y_gov",  "total", "residual"};

    std::vector<Event> events;
    if (event) {
        events.push_back(*event);
    } else {
        events.assign(std::begin(kStrategicEvents), std::end(kStrategicEvents));
        if (regime.kind() == AuditRegime::Kind::NoAudit &&
            is_defined(scenario, AuditState::NotAudited, Event::EvadeLTAppendix)) {
            events.push_back(Event::EvadeLTAppendix);
        }
    }

    for (Event e : events) {
        const PayoffVector pv = expected_payoff(scenario, regime, e, cfg.policy, cfg.te, cfg.mode);
        t.rows.push_back({std::string(to_string(scenario)), std::string(to_string(regime.kind())),
                          regime.gamma(), std::string(to_string(e)), pv.buyer, pv.seller,
                          pv.government, pv.total(), conservation_residual(pv, cfg.te)});
    }
    return t;
}

Table thresholds_table(const RunConfig& cfg) {
    const TaxPolicy& p = cfg.policy;
    const TransactionEndowments& te = cfg.te;
    const std::string mode(to_string(cfg.mode));
    const std::string any = "any";
    const std::string corrected(to_string(SanctionBaseMode::Corrected));
    const std::string none;

    Table t;
    t.columns = {"threshold", "condition", "value", "slope", "feasible", "mode"};
    auto add = [&](const std::string& name, const std::string& cond, const ThresholdResult& r,
                   Cell slope, const std::string& row_mode) {
        t.rows.push_back({name, cond, threshold_cell(r), std::move(slope),
                          r.feasible_in_unit_interval, row_mode});
    };

    add("seller_tax_rate", "t_S > v*x_I/(x_O-x_I)", seller_tax_threshold(p, te), none, any);
    add("vat_rate", "v < t_S*(x_O-x_I)/x_I", vat_rate_threshold(p, te), none, any);
    add("buyer_theta_no_audit", "theta >= v*delta/(1+v*delta)",
        buyer_theta_threshold(AuditRegime::no_audit(), p), none, corrected);
    add("buyer_theta_certain_audit", "theta > (v*delta-v*(1+s_V))/(1+v*delta)",
        buyer_theta_threshold(AuditRegime::certain_audit(), p), none, corrected);
    {
        const ThresholdResult at0 = buyer_theta_threshold(AuditRegime::no_audit(), p);
        const ThresholdResult at1 = buyer_theta_threshold(AuditRegime::certain_audit(), p);
        add("buyer_theta_line", "theta > (v*delta-gamma*v*(1+s_V))/(1+v*delta)", at0,
            at1.value - at0.value, corrected);
    }
    add("buyer_gamma", "gamma > 1/(1+s_V)", buyer_gamma_threshold(p), none, corrected);
    add("seller_gamma_whole", "gamma > (x_O-x_I)/(x_O*(1+s_yS))",
        seller_gamma_threshold_ewt(p, te), none, any);
    add("seller_gamma_partial", "gamma*t_S*x_O*(1+s_yS) > t_S*(x_O-x_I)-v*x_I",
        seller_gamma_threshold_elt2(p, te), none, any);

    for (EvasionVariant variant : kEvasionVariants) {
        const std::string tag(to_string(variant));
        try {
            const ThresholdLine line = theta_frontier(variant, p, te, cfg.mode);
            add("coalition_theta_" + tag, "theta >= intercept+slope*gamma",
                ThresholdResult::of(line.intercept), line.slope, mode);
        } catch (const InvalidParameter&) {
            add("coalition_theta_" + tag, "theta >= intercept+slope*gamma",
                ThresholdResult::undefined(), none, mode);
        }
    }
    for (EvasionVariant variant : kEvasionVariants) {
        const std::string tag(to_string(variant));
        ThresholdResult r = ThresholdResult::undefined();
        try {
            r = gamma_for_compliance_without_deductions(variant, p, te, cfg.mode);
        } catch (const InvalidParameter&) {
        }
        add("coalition_gamma_" + tag, "gamma >= -intercept/slope (theta=0)", r, none, mode);
    }
    return t;
}

std::vector<double> Axis::points() const {
    const auto n = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.push_back(std::min(max, min + static_cast<double>(i) * step));
    }
    return out;
}

void RegionGrid::validate() const {
    for (const auto* axis : {&theta, &gamma}) {
        if (!(axis->step > 0.0) || !std::isfinite(axis->step)) {
            throw ConfigError("grid step must be positive");
        }
        if (!(axis->min >= 0.0 && axis->max <= 1.0 && axis->min <= axis->max)) {
            throw ConfigError("grid axes must satisfy 0 <= min <= max <= 1");
        }
    }
}

Table region_table(const RunConfig& cfg, const RegionGrid& grid) {
    grid.validate();
    Table t;
    t.columns = {"theta", "gamma", "best_event", "complies"};
    const auto gammas = grid.gamma.points();
    for (double theta : grid.theta.points()) {
        TaxPolicy p = cfg.policy;
        p.theta = theta;
        for (double gamma : gammas) {
            const auto best = coalition_best_event(gamma, p, cfg.te, cfg.mode);
            t.rows.push_back({theta, gamma, join_events(best), contains(best, Event::Comply)});
        }
    }
    return t;
}

Table frontier_table(const RunConfig& cfg) {
    Table t;
    t.columns = {"variant", "intercept", "slope", "mode"};
    for (EvasionVariant variant : kEvasionVariants) {
        const ThresholdLine line = theta_frontier(variant, cfg.policy, cfg.te, cfg.mode);
        t.rows.push_back({std::string(to_string(variant)), line.intercept, line.slope,
                          std::string(to_string(cfg.mode))});
    }
    return t;
}

AppendixResult appendix_report(const RunConfig& cfg) {
    AppendixResult result;
    result.table.columns = {"strategy", "quantity", "computed", "published", "difference", "ok"};

    for (const auto& strategy : kAppendixStrategies) {
        const auto pv = payoff_event(strategy.scenario, AuditState::NotAudited, strategy.event,
                                     cfg.policy, cfg.te);
        const auto gov = revenue_breakdown(strategy.scenario, AuditState::NotAudited,
                                           strategy.event, cfg.policy, cfg.te);
        const double computed[8] = {pv.seller,
                                    pv.buyer,
                                    gov.seller_income_tax,
                                    gov.buyer_income_tax,
                                    gov.vat + gov.vat_sanction,
                                    pv.total(),
                                    pv.buyer + pv.seller,
                                    pv.government};
        for (int row = 0; row < 8; ++row) {
            const double diff = computed[row] - strategy.published[row];
            const bool ok = std::abs(diff) <= kAppendixTolerance;
            if (!ok) ++result.mismatches;
            result.max_abs_difference = std::max(result.max_abs_difference, std::abs(diff));
            result.table.rows.push_back({std::string(strategy.name),
                                         std::string(kAppendixQuantities[row]), computed[row],
                                         strategy.published[row], diff, ok});
        }
    }
    return result;
}

Table validation_table(const ValidationReport& report) {
    Table t;
    t.columns = {"check", "checks", "skipped", "failures", "max_deviation"};
    for (const auto& c : report.checks) {
        char dev[32];
        std::snprintf(dev, sizeof dev, "%.3e", c.max_deviation);
        t.rows.push_back({c.name, static_cast<long long>(c.checks),
                          static_cast<long long>(c.skipped), static_cast<long long>(c.failures),
                          std::string(dev)});
    }
    return t;
}

} // namespace vatgame
