#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "vatgame/config.hpp"
#include "vatgame/model.hpp"
#include "vatgame/oracle.hpp"

namespace vatgame {

using Cell = std::variant<std::string, double, bool, long long>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Fixed-point, period decimal separator, no negative zero.
std::string format_number(double value, int precision);

/// CSV with a header line, or a JSON array of objects keyed by column.
void write_table(std::ostream& out, const Table& table, OutputFormat format, int precision);

// payoffs ------------------------------------------------------------------

/// Columns: scenario,regime,gamma,event,y_buyer,y_seller,y_gov,total,residual.
/// One row per event defined under the scenario and regime, or just `event`.
Table payoffs_table(const RunConfig& cfg, Scenario scenario, const AuditRegime& regime,
                    std::optional<Event> event = std::nullopt);

// thresholds ---------------------------------------------------------------

/// Columns: threshold,condition,value,slope,feasible,mode.
Table thresholds_table(const RunConfig& cfg);

// region -------------------------------------------------------------------

struct Axis {
    double min = 0.0;
    double max = 1.0;
    double step = 0.01;

    std::vector<double> points() const;
};

struct RegionGrid {
    Axis theta;
    Axis gamma;

    /// Throws ConfigError unless both axes lie in [0, 1] with step > 0.
    void validate() const;
};

/// Columns: theta,gamma,best_event,complies. Theta outer, gamma inner.
/// Tied events are joined with '|'.
Table region_table(const RunConfig& cfg, const RegionGrid& grid);

/// Columns: variant,intercept,slope,mode.
Table frontier_table(const RunConfig& cfg);

// appendix -----------------------------------------------------------------

struct AppendixResult {
    Table table; // strategy,quantity,computed,published,difference,ok
    std::size_t mismatches = 0;
    double max_abs_difference = 0.0;
};

/// Largest accepted deviation from the published spreadsheet, in currency.
inline constexpr double kAppendixTolerance = 0.5;

/// Recomputes the five-strategy spreadsheet example and diffs it against the
/// published figures.
AppendixResult appendix_report(const RunConfig& cfg);

// validate -----------------------------------------------------------------

/// Columns: check,checks,skipped,failures,max_deviation.
Table validation_table(const ValidationReport& report);

} // namespace vatgame
