#include "vatgame/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "vatgame/coalition.hpp"

namespace vatgame {

namespace {

constexpr int kMonotoneSamples = 33;
constexpr double kBisectionWidth = 1e-10;
constexpr double kThresholdTol = 1e-6;
constexpr double kConservationTol = 1e-9;
constexpr std::size_t kMaxFailureSamples = 20;

int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

AuditRegime regime_for(AuditRegime::Kind kind, double gamma) {
    switch (kind) {
    case AuditRegime::Kind::NoAudit: return AuditRegime::no_audit();
    case AuditRegime::Kind::CertainAudit: return AuditRegime::certain_audit();
    case AuditRegime::Kind::Bayesian: return AuditRegime::bayesian(gamma);
    }
    return AuditRegime::no_audit();
}

class Recorder {
public:
    explicit Recorder(ValidationReport& report) : report_(report) {}

    CheckStats& stats(const std::string& name) {
        for (auto& s : report_.checks) {
            if (s.name == name) return s;
        }
        report_.checks.push_back(CheckStats{name});
        return report_.checks.back();
    }

    void record(const std::string& name, bool ok, double deviation, const std::string& detail) {
        CheckStats& s = stats(name);
        ++s.checks;
        if (std::isfinite(deviation)) s.max_deviation = std::max(s.max_deviation, deviation);
        if (!ok) {
            ++s.failures;
            if (report_.failure_samples.size() < kMaxFailureSamples) {
                report_.failure_samples.push_back(name + ": " + detail);
            }
        }
    }

    void skip(const std::string& name) { ++stats(name).skipped; }

private:
    ValidationReport& report_;
};

std::string describe(const std::vector<Event>& events) {
    std::string out = "{";
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (i) out += ",";
        out += to_string(events[i]);
    }
    return out + "}";
}

void check_conservation(const ParameterDraw& d, Recorder& rec) {
    const double scale = magnitude_scale(d.te);
    const std::string tag = d.tag();

    for (Scenario s : {Scenario::NoTaxes, Scenario::Tax, Scenario::TaxWithDeductions}) {
        for (AuditState a : {AuditState::NotAudited, AuditState::Audited}) {
            for (Event e : {Event::Comply, Event::EvadeLT1, Event::EvadeLT2, Event::EvadeWT,
                            Event::EvadeLTAppendix}) {
                if (!is_defined(s, a, e)) continue;
                const double r =
                    std::abs(conservation_residual(payoff_event(s, a, e, d.policy, d.te), d.te)) /
                    scale;
                rec.record("conservation", r <= kConservationTol, r,
                           tag + " " + std::string(to_string(s)) + " " +
                               std::string(to_string(e)));
            }
        }
    }

    for (int k = 0; k <= 10; ++k) {
        const double g = k / 10.0;
        const auto regime = AuditRegime::bayesian(g);
        for (Scenario s : {Scenario::NoTaxes, Scenario::Tax, Scenario::TaxWithDeductions}) {
            for (Event e : kStrategicEvents) {
                const double r = std::abs(conservation_residual(
                                     expected_payoff(s, regime, e, d.policy, d.te), d.te)) /
                                 scale;
                rec.record("bayesian-conservation", r <= kConservationTol, r,
                           tag + " gamma=" + std::to_string(g));

                // The literal buyer term misses conservation by a known amount.
                const double literal = conservation_residual(
                    expected_payoff(s, regime, e, d.policy, d.te, SanctionBaseMode::PaperLiteral),
                    d.te);
                const bool shifted = s != Scenario::NoTaxes && e != Event::Comply;
                const double predicted =
                    shifted ? g * d.policy.v * (1.0 + d.policy.s_V) * (d.te.x_O - 1.0) : 0.0;
                const double dev = std::abs(literal - predicted) / scale;
                rec.record("paper-literal-residual", dev <= kConservationTol, dev,
                           tag + " gamma=" + std::to_string(g));
            }
        }
    }
}

void check_best_responses(const ParameterDraw& d, Recorder& rec) {
    for (auto mode : {SanctionBaseMode::Corrected, SanctionBaseMode::PaperLiteral}) {
        for (auto kind : {AuditRegime::Kind::NoAudit, AuditRegime::Kind::CertainAudit,
                          AuditRegime::Kind::Bayesian}) {
            const AuditRegime regime = regime_for(kind, d.gamma);
            for (Scenario s : {Scenario::NoTaxes, Scenario::Tax, Scenario::TaxWithDeductions}) {
                for (Agent agent : {Agent::Buyer, Agent::Seller}) {
                    auto closed = dominant_events(agent, s, regime, d.policy, d.te, mode);
                    auto brute = oracle_best_response(agent, s, regime, d, mode);
                    rec.record("best-response", closed == brute, 0.0,
                               d.tag() + " " + std::string(to_string(agent)) + " " +
                                   describe(closed) + " vs " + describe(brute));
                }
            }
        }
    }
}

void check_threshold(const std::string& name, const ThresholdResult& closed, VariedParameter p,
                     const Comparison& cmp, const ParameterDraw& d, Recorder& rec) {
    if (closed.kind == ThresholdResult::Kind::Undefined) {
        rec.skip(name);
        return;
    }
    std::optional<double> oracle;
    try {
        oracle = oracle_threshold(p, cmp, d);
    } catch (const NonMonotone& err) {
        rec.record(name, false, std::numeric_limits<double>::infinity(),
                   d.tag() + " " + err.what());
        return;
    }
    const auto [lo, hi] = scan_range(p);
    double dev = 0.0;
    const bool ok = threshold_agrees(closed, oracle, lo, hi, kThresholdTol, &dev);
    char buf[160];
    std::snprintf(buf, sizeof buf, " closed=%.12g (kind %d) oracle=%s%.12g", closed.value,
                  static_cast<int>(closed.kind), oracle ? "" : "none/", oracle.value_or(0.0));
    rec.record(name, ok, dev, d.tag() + buf);
}

void check_thresholds(const ParameterDraw& d, Recorder& rec) {
    const auto none = AuditRegime::no_audit();
    const Comparison seller_lt2{Agent::Seller, Event::Comply, Event::EvadeLT2, Scenario::Tax, none};

    check_threshold("seller-tax-rate", seller_tax_threshold(d.policy, d.te),
                    VariedParameter::SellerTaxRate, seller_lt2, d, rec);
    check_threshold("vat-rate", vat_rate_threshold(d.policy, d.te), VariedParameter::VatRate,
                    seller_lt2, d, rec);

    for (auto kind : {AuditRegime::Kind::NoAudit, AuditRegime::Kind::CertainAudit,
                      AuditRegime::Kind::Bayesian}) {
        const AuditRegime regime = regime_for(kind, d.gamma);
        const Comparison buyer_td{Agent::Buyer, Event::Comply, Event::EvadeLT1,
                                  Scenario::TaxWithDeductions, regime};
        check_threshold("buyer-theta", buyer_theta_threshold(regime, d.policy),
                        VariedParameter::Theta, buyer_td, d, rec);
    }

    check_threshold("buyer-gamma", buyer_gamma_threshold(d.policy), VariedParameter::Gamma,
                    {Agent::Buyer, Event::Comply, Event::EvadeWT, Scenario::Tax, none}, d, rec);
    check_threshold("seller-gamma-whole", seller_gamma_threshold_ewt(d.policy, d.te),
                    VariedParameter::Gamma,
                    {Agent::Seller, Event::Comply, Event::EvadeWT, Scenario::Tax, none}, d, rec);
    check_threshold("seller-gamma-partial", seller_gamma_threshold_elt2(d.policy, d.te),
                    VariedParameter::Gamma, seller_lt2, d, rec);
}

void check_frontiers(const ParameterDraw& d, Recorder& rec) {
    const double per_theta = d.te.x_O * (1.0 + d.policy.v * d.policy.delta);
    const double band = std::max(kThresholdTol, tie_tolerance(d.te) / per_theta);

    for (auto mode : {SanctionBaseMode::Corrected, SanctionBaseMode::PaperLiteral}) {
        double level[3];
        for (int k = 0; k < 3; ++k) {
            level[k] = theta_frontier(kEvasionVariants[k], d.policy, d.te, mode).at(d.gamma);
        }
        const int top = static_cast<int>(std::max_element(level, level + 3) - level);
        double runner_up = -std::numeric_limits<double>::infinity();
        for (int k = 0; k < 3; ++k) {
            if (k != top) runner_up = std::max(runner_up, level[k]);
        }

        std::vector<Event> predicted;
        if (d.policy.theta > level[top] + band) {
            predicted = {Event::Comply};
        } else if (d.policy.theta < level[top] - band && level[top] - runner_up > band) {
            predicted = {event_of(kEvasionVariants[top])};
        } else {
            rec.skip("coalition-frontier");
            continue;
        }
        auto best = coalition_best_event(d.gamma, d.policy, d.te, mode);
        rec.record("coalition-frontier", best == predicted, 0.0,
                   d.tag() + " " + describe(best) + " vs lines " + describe(predicted));
    }
}

} // namespace

std::string ParameterDraw::tag() const {
    return "seed=" + std::to_string(seed) + "#" + std::to_string(index);
}

double DrawGenerator::uniform(double lo, double hi) {
    // Top 53 bits, so the sequence does not depend on the standard library.
    const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * unit;
}

double DrawGenerator::log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
}

ParameterDraw DrawGenerator::next() {
    ParameterDraw d;
    d.seed = seed_;
    d.index = index_++;
    d.policy.t_S = uniform(0.0, 0.6);
    d.policy.t_B = uniform(0.0, 0.6);
    d.policy.v = uniform(0.0, 0.6);
    d.policy.delta = uniform(0.0, 0.6);
    d.policy.theta = uniform(0.0, 0.6);
    d.policy.s_V = uniform(0.0, 1.0);
    d.policy.s_yS = uniform(0.0, 1.0);
    d.te.x_O = log_uniform(10.0, 1e5);
    d.te.x_I = uniform(0.0, d.te.x_O);
    d.te.y_S = log_uniform(1e3, 1e6);
    d.te.y_B = log_uniform(1e3, 1e6);
    d.gamma = uniform(0.0, 1.0);
    return d;
}

std::vector<Event> oracle_best_response(Agent agent, Scenario scenario,
                                        const AuditRegime& regime, const ParameterDraw& draw,
                                        SanctionBaseMode mode) {
    double values[std::size(kStrategicEvents)];
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < std::size(kStrategicEvents); ++i) {
        const PayoffVector pv =
            expected_payoff(scenario, regime, kStrategicEvents[i], draw.policy, draw.te, mode);
        values[i] = agent == Agent::Buyer ? pv.buyer : pv.seller;
        best = std::max(best, values[i]);
    }
    const double tol = tie_tolerance(draw.te);
    std::vector<Event> out;
    for (std::size_t i = 0; i < std::size(kStrategicEvents); ++i) {
        if (best - values[i] <= tol) out.push_back(kStrategicEvents[i]);
    }
    return out;
}

std::string_view to_string(VariedParameter p) {
    switch (p) {
    case VariedParameter::SellerTaxRate: return "t_S";
    case VariedParameter::VatRate: return "v";
    case VariedParameter::Theta: return "theta";
    case VariedParameter::Gamma: return "gamma";
    }
    return "?";
}

std::pair<double, double> scan_range(VariedParameter p) {
    switch (p) {
    case VariedParameter::SellerTaxRate:
    case VariedParameter::VatRate: return {0.0, std::nextafter(1.0, 0.0)};
    case VariedParameter::Theta:
    case VariedParameter::Gamma: return {0.0, 1.0};
    }
    return {0.0, 1.0};
}

std::optional<double> find_crossing(const std::function<double(double)>& margin, double lo,
                                    double hi) {
    double xs[kMonotoneSamples];
    int signs[kMonotoneSamples];
    for (int k = 0; k < kMonotoneSamples; ++k) {
        xs[k] = k == kMonotoneSamples - 1 ? hi : lo + (hi - lo) * k / (kMonotoneSamples - 1);
        signs[k] = sign_of(margin(xs[k]));
    }

    int changes = 0;
    int last = -1;      // index of the last nonzero sample
    int before = -1;    // bracket around the crossing
    int after = -1;
    for (int k = 0; k < kMonotoneSamples; ++k) {
        if (signs[k] == 0) continue;
        if (last >= 0 && signs[k] != signs[last]) {
            ++changes;
            before = last;
            after = k;
        }
        last = k;
    }
    if (changes > 1) {
        throw NonMonotone("payoff margin changes sign " + std::to_string(changes) +
                          " times on the scanned range");
    }
    if (changes == 0) {
        if (last < 0) return std::nullopt; // identically zero
        // A root on the boundary of the range.
        if (signs[0] == 0) return xs[0];
        if (signs[kMonotoneSamples - 1] == 0) return xs[kMonotoneSamples - 1];
        return std::nullopt;
    }

    double a = xs[before];
    double b = xs[after];
    const int sign_a = signs[before];
    while (b - a > kBisectionWidth) {
        const double mid = 0.5 * (a + b);
        const int s = sign_of(margin(mid));
        if (s == 0) return mid;
        (s == sign_a ? a : b) = mid;
    }
    return 0.5 * (a + b);
}

std::optional<double> oracle_threshold(VariedParameter p, const Comparison& cmp,
                                       const ParameterDraw& draw, SanctionBaseMode mode) {
    auto margin = [&](double x) {
        TaxPolicy policy = draw.policy;
        AuditRegime regime = cmp.regime;
        switch (p) {
        case VariedParameter::SellerTaxRate: policy.t_S = x; break;
        case VariedParameter::VatRate: policy.v = x; break;
        case VariedParameter::Theta: policy.theta = x; break;
        case VariedParameter::Gamma: regime = AuditRegime::bayesian(x); break;
        }
        const PayoffVector first =
            expected_payoff(cmp.scenario, regime, cmp.first, policy, draw.te, mode);
        const PayoffVector second =
            expected_payoff(cmp.scenario, regime, cmp.second, policy, draw.te, mode);
        return cmp.agent == Agent::Buyer ? first.buyer - second.buyer
                                         : first.seller - second.seller;
    };
    const auto [lo, hi] = scan_range(p);
    return find_crossing(margin, lo, hi);
}

bool threshold_agrees(const ThresholdResult& closed, const std::optional<double>& oracle,
                      double lo, double hi, double tol, double* deviation) {
    double dev = 0.0;
    bool ok = false;
    if (closed.kind != ThresholdResult::Kind::Value) {
        ok = !oracle.has_value();
    } else {
        const double v = closed.value;
        if (oracle) dev = std::abs(*oracle - v);
        if (v > lo + tol && v < hi - tol) {
            ok = oracle.has_value() && dev <= tol;
        } else if (v < lo - tol || v > hi + tol) {
            ok = !oracle.has_value();
        } else {
            ok = !oracle.has_value() || dev <= tol;
        }
    }
    if (deviation) *deviation = dev;
    return ok;
}

std::size_t ValidationReport::total_failures() const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.failures;
    return n;
}

const CheckStats* ValidationReport::find(std::string_view name) const {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

ValidationReport run_validation(std::uint64_t seed, std::size_t draw_count) {
    if (draw_count == 0) throw InvalidParameter("draw count must be at least 1");
    ValidationReport report;
    report.seed = seed;
    report.draws = draw_count;
    Recorder rec(report);
    for (const char* name :
         {"conservation", "bayesian-conservation", "paper-literal-residual", "best-response",
          "seller-tax-rate", "vat-rate", "buyer-theta", "buyer-gamma", "seller-gamma-whole",
          "seller-gamma-partial", "coalition-frontier"}) {
        rec.stats(name);
    }

    DrawGenerator gen(seed);
    for (std::size_t i = 0; i < draw_count; ++i) {
        const ParameterDraw d = gen.next();
        check_conservation(d, rec);
        check_best_responses(d, rec);
        check_thresholds(d, rec);
        check_frontiers(d, rec);
    }
    return report;
}

} // namespace vatgame
