#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "vatgame/config.hpp"
#include "vatgame/report.hpp"

using namespace vatgame;

namespace {

RunConfig preset(const std::string& name,
                 std::vector<std::pair<std::string, std::string>> overrides = {}) {
    ConfigSources s;
    s.preset = name;
    s.overrides = std::move(overrides);
    return resolve_config(s);
}

std::string render(const Table& t, OutputFormat f, int precision = 6) {
    std::ostringstream out;
    write_table(out, t, f, precision);
    return out.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

const std::vector<Cell>* find_row(const Table& t, const std::string& first) {
    for (const auto& row : t.rows) {
        if (std::get<std::string>(row[0]) == first) return &row;
    }
    return nullptr;
}

} // namespace

TEST_CASE("config text parsing") {
    const auto m = parse_config_text("# comment\n t_S = 0.3 \n\nv=0.1 # trailing\nmode = paper-literal\n");
    CHECK(m.at("t_S") == "0.3");
    CHECK(m.at("v") == "0.1");
    CHECK(m.at("mode") == "paper-literal");
    CHECK_THROWS_AS(parse_config_text("t_S 0.3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("tax = 0.3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("t_S =\n"), ConfigError);
    CHECK_THROWS_AS(parse_override("t_S"), ConfigError);
    CHECK_THROWS_AS(parse_override("nope=1"), ConfigError);
    CHECK(parse_override("x_O=5").second == "5");
    CHECK_THROWS_AS(read_config_file("/nonexistent/vatgame.cfg"), ConfigError);
}

TEST_CASE("config layering and validation") {
    ConfigSources s;
    s.preset = "section6";
    s.file = {{"t_S", "0.3"}, {"v", "0.1"}};
    s.overrides = {{"v", "0.2"}, {"precision", "3"}, {"format", "json"}};
    const auto cfg = resolve_config(s);
    CHECK(cfg.policy.t_S == 0.3);
    CHECK(cfg.policy.v == 0.2);
    CHECK(cfg.te.x_O == 100.0);
    CHECK(cfg.precision == 3);
    CHECK(cfg.format == OutputFormat::Json);
    CHECK(cfg.mode == SanctionBaseMode::Corrected);

    CHECK_THROWS_AS(resolve_config({}), ConfigError);
    CHECK_THROWS_AS(preset("nope"), ConfigError);
    CHECK_THROWS_AS(preset("section6", {{"t_S", "abc"}}), ConfigError);
    CHECK_THROWS_AS(preset("section6", {{"t_S", "0.3x"}}), ConfigError);
    CHECK_THROWS_AS(preset("section6", {{"t_S", "1.5"}}), ConfigError);
    CHECK_THROWS_AS(preset("section6", {{"x_O", "-1"}}), ConfigError);
    CHECK_THROWS_AS(preset("section6", {{"precision", "0"}}), ConfigError);
    CHECK_THROWS_AS(preset("section6", {{"precision", "2.5"}}), ConfigError);
    CHECK_THROWS_AS(preset("section6", {{"mode", "lenient"}}), ConfigError);
    CHECK_THROWS_AS(preset("section6", {{"format", "xml"}}), ConfigError);
    CHECK(preset("section6", {{"mode", "paper-literal"}}).mode == SanctionBaseMode::PaperLiteral);

    for (const auto& name : preset_names()) {
        const auto values = preset_values(name);
        for (const auto& key : parameter_keys()) CHECK(values.count(key) == 1);
    }
}

TEST_CASE("number formatting") {
    CHECK(format_number(0.1234567, 6) == "0.123457");
    CHECK(format_number(-0.0000001, 6) == "0.000000");
    CHECK(format_number(-0.0, 3) == "0.000");
    CHECK(format_number(-1.5, 1) == "-1.5");
    CHECK(format_number(12964.0, 2) == "12964.00");
}

TEST_CASE("payoffs table") {
    const auto cfg = preset("appendix");
    const auto t = payoffs_table(cfg, Scenario::Tax, AuditRegime::no_audit());
    CHECK(t.columns == std::vector<std::string>{"scenario", "regime", "gamma", "event", "y_buyer",
                                                "y_seller", "y_gov", "total", "residual"});
    REQUIRE(t.rows.size() == 5);
    CHECK(std::get<std::string>(t.rows[4][3]) == "EvadeLTAppendix");
    CHECK(std::get<double>(t.rows[1][5]) == doctest::Approx(12964));

    const auto audited = payoffs_table(cfg, Scenario::Tax, AuditRegime::certain_audit());
    CHECK(audited.rows.size() == 4);

    const auto one = payoffs_table(cfg, Scenario::Tax, AuditRegime::bayesian(0.5), Event::EvadeWT);
    REQUIRE(one.rows.size() == 1);
    CHECK(std::get<std::string>(one.rows[0][1]) == "Bayesian");
    CHECK(std::get<double>(one.rows[0][4]) == doctest::Approx(1970));
    CHECK(std::get<double>(one.rows[0][8]) == doctest::Approx(0.0).scale(1));

    const auto csv = render(t, OutputFormat::Csv);
    CHECK(csv.rfind("scenario,regime,gamma,event,y_buyer,y_seller,y_gov,total,residual\n", 0) == 0);
    CHECK(csv.find("Tax,NoAudit,0.000000,EvadeLT1,3400.000000,12964.000000,8636.000000,") !=
          std::string::npos);
}

TEST_CASE("thresholds table") {
    const auto t = thresholds_table(preset("section6"));
    CHECK(t.columns ==
          std::vector<std::string>{"threshold", "condition", "value", "slope", "feasible", "mode"});
    const auto* row = find_row(t, "seller_gamma_partial");
    REQUIRE(row);
    CHECK(std::get<double>((*row)[2]) == doctest::Approx(1 / 31.2));
    row = find_row(t, "buyer_theta_certain_audit");
    REQUIRE(row);
    CHECK(std::get<bool>((*row)[4]) == false);
    row = find_row(t, "coalition_theta_WT");
    REQUIRE(row);
    CHECK(std::get<double>((*row)[2]) == doctest::Approx(0.278689).epsilon(1e-5));
    CHECK(std::get<std::string>((*row)[5]) == "corrected");

    const auto zero = thresholds_table(preset("section6", {{"x_I", "0"}}));
    CHECK(std::get<double>((*find_row(zero, "seller_tax_rate"))[2]) == 0.0);
    CHECK(std::get<std::string>((*find_row(zero, "vat_rate"))[2]) == "always");

    const auto lit = thresholds_table(preset("section6", {{"mode", "paper-literal"}}));
    CHECK(std::get<std::string>((*find_row(lit, "coalition_gamma_WT"))[5]) == "paper-literal");
    CHECK(std::get<bool>((*find_row(lit, "coalition_gamma_WT"))[4]) == false);
}

TEST_CASE("region and frontier tables") {
    const auto cfg = preset("section6");
    RegionGrid single;
    single.theta = {0.0, 0.0, 0.1};
    single.gamma = {0.0, 0.0, 0.1};
    auto t = region_table(cfg, single);
    REQUIRE(t.rows.size() == 1);
    CHECK(std::get<std::string>(t.rows[0][2]) == "EvadeLT1");
    CHECK(std::get<bool>(t.rows[0][3]) == false);

    RegionGrid grid;
    grid.theta = {0.0, 1.0, 0.05};
    grid.gamma = {0.0, 1.0, 0.25};
    t = region_table(cfg, grid);
    CHECK(t.rows.size() == 21 * 5);
    CHECK(std::get<double>(t.rows.back()[0]) == 1.0);
    CHECK(std::get<double>(t.rows.back()[1]) == 1.0);

    const auto lines = frontier_table(cfg);
    REQUIRE(lines.rows.size() == 3);
    double top = 0.0;
    for (const auto& row : lines.rows) top = std::max(top, std::get<double>(row[1]));
    for (const auto& row : t.rows) {
        if (std::get<double>(row[0]) > top) CHECK(std::get<bool>(row[3]));
    }

    RegionGrid bad;
    bad.theta.step = 0.0;
    CHECK_THROWS_AS(region_table(cfg, bad), ConfigError);
    bad = RegionGrid{};
    bad.gamma.max = 1.5;
    CHECK_THROWS_AS(region_table(cfg, bad), ConfigError);
}

TEST_CASE("appendix report reproduces the spreadsheet") {
    const auto r = appendix_report(preset("appendix"));
    CHECK(r.table.rows.size() == 40);
    CHECK(r.mismatches == 0);
    CHECK(r.max_abs_difference < 1e-6);

    const auto off = appendix_report(preset("appendix", {{"v", "0.2"}}));
    CHECK(off.mismatches > 0);
}

TEST_CASE("csv round trip and json mirror") {
    const auto cfg = preset("appendix");
    const auto t = payoffs_table(cfg, Scenario::TaxWithDeductions, AuditRegime::bayesian(0.3));
    const auto csv = parse_csv(render(t, OutputFormat::Csv, 9));
    REQUIRE(csv.size() == t.rows.size() + 1);
    CHECK(csv[0] == t.columns);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        for (std::size_t j = 0; j < t.columns.size(); ++j) {
            if (const auto* d = std::get_if<double>(&t.rows[i][j])) {
                CHECK(std::stod(csv[i + 1][j]) == doctest::Approx(*d).epsilon(1e-9).scale(1));
            }
        }
    }

    const auto json = nlohmann::ordered_json::parse(render(t, OutputFormat::Json, 9));
    REQUIRE(json.size() == t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        std::vector<std::string> keys;
        for (const auto& item : json[i].items()) keys.push_back(item.key());
        CHECK(keys == t.columns);
        for (std::size_t j = 0; j < t.columns.size(); ++j) {
            const auto& v = json[i][t.columns[j]];
            if (v.is_number()) CHECK(v.get<double>() == std::stod(csv[i + 1][j]));
            if (v.is_string()) CHECK(v.get<std::string>() == csv[i + 1][j]);
        }
    }

    const auto thresholds = thresholds_table(preset("section6"));
    CHECK(render(thresholds, OutputFormat::Json) == render(thresholds, OutputFormat::Json));
    CHECK(render(t, OutputFormat::Csv) == render(t, OutputFormat::Csv));
}
