// vatgame: payoffs, thresholds and compliance regions for the VAT
// buyer/seller/auditor game.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 reproduction or
// validation mismatch.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vatgame/config.hpp"
#include "vatgame/oracle.hpp"
#include "vatgame/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMismatch = 2;

struct GlobalOptions {
    std::optional<std::string> preset;
    std::optional<std::string> config_path;
    std::vector<std::string> overrides;
    std::optional<std::string> mode;
    std::optional<std::string> format;
    std::optional<int> precision;
    std::optional<std::string> out;
};

vatgame::RunConfig build_config(const GlobalOptions& g,
                                std::optional<std::string> fallback_preset = std::nullopt) {
    vatgame::ConfigSources sources;
    sources.preset = g.preset ? g.preset : fallback_preset;
    if (g.config_path) sources.file = vatgame::read_config_file(*g.config_path);
    for (const auto& text : g.overrides) sources.overrides.push_back(vatgame::parse_override(text));
    if (g.mode) sources.overrides.emplace_back("mode", *g.mode);
    if (g.format) sources.overrides.emplace_back("format", *g.format);
    if (g.precision) sources.overrides.emplace_back("precision", std::to_string(*g.precision));
    return vatgame::resolve_config(sources);
}

// Writes to --out when given, stdout otherwise.
class Output {
public:
    explicit Output(const std::optional<std::string>& path) {
        if (path) {
            file_.open(*path, std::ios::binary);
            if (!file_) throw vatgame::ConfigError("cannot write '" + *path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

vatgame::AuditRegime make_regime(const std::string& name, std::optional<double> gamma) {
    if (name == "no-audit") return vatgame::AuditRegime::no_audit();
    if (name == "certain-audit") return vatgame::AuditRegime::certain_audit();
    if (name == "bayesian") {
        if (!gamma) throw vatgame::ConfigError("--regime bayesian needs --gamma");
        return vatgame::AuditRegime::bayesian(*gamma);
    }
    throw vatgame::ConfigError("unknown regime '" + name + "'");
}

std::string companion_path(const std::string& out) {
    std::filesystem::path p(out);
    const std::string ext = p.has_extension() ? p.extension().string() : ".csv";
    p.replace_extension();
    return p.string() + ".frontier" + ext;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"VAT compliance game: payoffs, thresholds, compliance regions"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--preset", g.preset, "Built-in parameter set (appendix, section6)");
    app.add_option("--config", g.config_path, "key=value parameter file");
    app.add_option("--set", g.overrides, "Parameter override key=value (repeatable)");
    app.add_option("--mode", g.mode, "Sanction base: corrected or paper-literal");
    app.add_option("--format", g.format, "Output format: csv or json");
    app.add_option("--precision", g.precision, "Decimals in numeric output (default 6)");
    app.add_option("--out", g.out, "Output file (default stdout)");

    auto* payoffs = app.add_subcommand("payoffs", "Payoff table per event");
    std::string scenario = "Tax";
    std::string regime = "no-audit";
    std::optional<double> gamma;
    std::optional<std::string> event;
    payoffs->add_option("--scenario", scenario, "NoTaxes, Tax or TaxWithDeductions");
    payoffs->add_option("--regime", regime, "no-audit, certain-audit or bayesian");
    payoffs->add_option("--gamma", gamma, "Audit probability for --regime bayesian");
    payoffs->add_option("--event", event, "Single event to report");

    auto* thresholds = app.add_subcommand("thresholds", "Closed-form compliance thresholds");

    auto* region = app.add_subcommand("region", "Coalition best event over a (theta, gamma) grid");
    vatgame::RegionGrid grid;
    std::optional<std::string> frontier_out;
    region->add_option("--theta-min", grid.theta.min);
    region->add_option("--theta-max", grid.theta.max);
    region->add_option("--theta-step", grid.theta.step);
    region->add_option("--gamma-min", grid.gamma.min);
    region->add_option("--gamma-max", grid.gamma.max);
    region->add_option("--gamma-step", grid.gamma.step);
    region->add_option("--frontier-out", frontier_out,
                       "Frontier file (default: <out>.frontier.<ext>)");

    auto* appendix = app.add_subcommand("appendix", "Reproduce the spreadsheet example");

    auto* validate = app.add_subcommand("validate", "Brute-force oracle over random draws");
    std::uint64_t seed = 42;
    std::size_t draws = 10000;
    validate->add_option("--seed", seed);
    validate->add_option("--draws", draws)->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (payoffs->parsed()) {
            const auto cfg = build_config(g);
            const auto table = vatgame::payoffs_table(
                cfg, vatgame::parse_scenario(scenario), make_regime(regime, gamma),
                event ? std::optional(vatgame::parse_event(*event)) : std::nullopt);
            Output out(g.out);
            vatgame::write_table(out.stream(), table, cfg.format, cfg.precision);
            return kExitOk;
        }

        if (thresholds->parsed()) {
            const auto cfg = build_config(g);
            Output out(g.out);
            vatgame::write_table(out.stream(), vatgame::thresholds_table(cfg), cfg.format,
                                 cfg.precision);
            return kExitOk;
        }

        if (region->parsed()) {
            const auto cfg = build_config(g);
            const auto cells = vatgame::region_table(cfg, grid);
            const auto lines = vatgame::frontier_table(cfg);
            if (!frontier_out && g.out) frontier_out = companion_path(*g.out);
            {
                Output out(g.out);
                vatgame::write_table(out.stream(), cells, cfg.format, cfg.precision);
                if (!frontier_out) {
                    out.stream() << '\n';
                    vatgame::write_table(out.stream(), lines, cfg.format, cfg.precision);
                }
            }
            if (frontier_out) {
                Output companion(frontier_out);
                vatgame::write_table(companion.stream(), lines, cfg.format, cfg.precision);
            }
            return kExitOk;
        }

        if (appendix->parsed()) {
            const auto cfg = build_config(g, std::string("appendix"));
            const auto result = vatgame::appendix_report(cfg);
            Output out(g.out);
            vatgame::write_table(out.stream(), result.table, cfg.format, cfg.precision);
            std::cerr << "appendix: " << result.table.rows.size() - result.mismatches << "/"
                      << result.table.rows.size() << " values within "
                      << vatgame::kAppendixTolerance << ", max |difference| "
                      << vatgame::format_number(result.max_abs_difference, 6) << "\n";
            return result.mismatches == 0 ? kExitOk : kExitMismatch;
        }

        if (validate->parsed()) {
            vatgame::OutputFormat format =
                g.format ? vatgame::parse_format(*g.format) : vatgame::OutputFormat::Csv;
            const auto report = vatgame::run_validation(seed, draws);
            Output out(g.out);
            vatgame::write_table(out.stream(), vatgame::validation_table(report), format, 6);
            std::cerr << "validate: seed=" << report.seed << " draws=" << report.draws
                      << " failures=" << report.total_failures() << "\n";
            for (const auto& line : report.failure_samples) std::cerr << "  " << line << "\n";
            return report.passed() ? kExitOk : kExitMismatch;
        }
    } catch (const vatgame::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
