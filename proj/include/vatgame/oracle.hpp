#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "vatgame/dominance.hpp"
#include "vatgame/model.hpp"

namespace vatgame {

// Brute-force checks built only on expected_payoff. Nothing here may call a
// closed-form threshold except to compare against it.

class NonMonotone : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ParameterDraw {
    TaxPolicy policy;
    TransactionEndowments te;
    double gamma = 0.0; // audit probability for the Bayesian checks
    std::uint64_t seed = 0;
    std::size_t index = 0;

    std::string tag() const;
};

/// Seeded admissible draws:
///   rates (t_S, t_B, v, delta, theta) ~ U[0, 0.6], sanctions ~ U[0, 1],
///   x_O ~ logU[10, 1e5], x_I ~ U[0, x_O], y_S, y_B ~ logU[1e3, 1e6], gamma ~ U[0, 1].
class DrawGenerator {
public:
    explicit DrawGenerator(std::uint64_t seed) : seed_(seed), engine_(seed) {}

    ParameterDraw next();

private:
    double uniform(double lo, double hi);
    double log_uniform(double lo, double hi);

    std::uint64_t seed_;
    std::size_t index_ = 0;
    std::mt19937_64 engine_;
};

std::vector<Event> oracle_best_response(Agent agent, Scenario scenario,
                                        const AuditRegime& regime, const ParameterDraw& draw,
                                        SanctionBaseMode mode = SanctionBaseMode::Corrected);

enum class VariedParameter { SellerTaxRate, VatRate, Theta, Gamma };

std::string_view to_string(VariedParameter p);

struct Comparison {
    Agent agent;
    Event first;
    Event second;
    Scenario scenario;
    AuditRegime regime; // ignored when the varied parameter is Gamma
};

/// Admissible interval scanned for `p`.
std::pair<double, double> scan_range(VariedParameter p);

/// Sign change of `margin` on [lo, hi]: 33 samples to confirm a single
/// crossing, then bisection down to 1e-10. nullopt when the sign never
/// changes. Throws NonMonotone on more than one crossing.
std::optional<double> find_crossing(const std::function<double(double)>& margin, double lo,
                                    double hi);

/// Where the payoff margin of `cmp` changes sign as `p` sweeps its range.
std::optional<double> oracle_threshold(VariedParameter p, const Comparison& cmp,
                                       const ParameterDraw& draw,
                                       SanctionBaseMode mode = SanctionBaseMode::Corrected);

/// Closed form vs bisection. A bound within `tol` of the scan range edge may
/// be reported either way by the oracle.
bool threshold_agrees(const ThresholdResult& closed, const std::optional<double>& oracle,
                      double lo, double hi, double tol, double* deviation = nullptr);

struct CheckStats {
    std::string name;
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::size_t skipped = 0;
    double max_deviation = 0.0;
};

struct ValidationReport {
    std::uint64_t seed = 0;
    std::size_t draws = 0;
    std::vector<CheckStats> checks;
    std::vector<std::string> failure_samples; // first few, for diagnosis

    std::size_t total_failures() const;
    bool passed() const { return total_failures() == 0; }
    const CheckStats* find(std::string_view name) const;
};

/// Runs every oracle check over `draw_count` seeded draws.
ValidationReport run_validation(std::uint64_t seed, std::size_t draw_count);

} // namespace vatgame
