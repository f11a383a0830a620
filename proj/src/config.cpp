#include "vatgame/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace vatgame {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool is_setting_key(std::string_view key) {
    return key == "mode" || key == "format" || key == "precision";
}

bool is_known_key(std::string_view key) {
    const auto& keys = parameter_keys();
    return is_setting_key(key) || std::find(keys.begin(), keys.end(), key) != keys.end();
}

double parse_number(const std::string& key, const std::string& text) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
        throw ConfigError("invalid number for " + key + ": '" + text + "'");
    }
    return value;
}

double* field_for(RunConfig& cfg, std::string_view key) {
    if (key == "t_S") return &cfg.policy.t_S;
    if (key == "t_B") return &cfg.policy.t_B;
    if (key == "v") return &cfg.policy.v;
    if (key == "delta") return &cfg.policy.delta;
    if (key == "theta") return &cfg.policy.theta;
    if (key == "s_V") return &cfg.policy.s_V;
    if (key == "s_yS") return &cfg.policy.s_yS;
    if (key == "x_O") return &cfg.te.x_O;
    if (key == "x_I") return &cfg.te.x_I;
    if (key == "y_S") return &cfg.te.y_S;
    if (key == "y_B") return &cfg.te.y_B;
    return nullptr;
}

void put(std::map<std::string, std::string>& into, const std::string& key,
         const std::string& value) {
    if (!is_known_key(key)) throw ConfigError("unknown configuration key '" + key + "'");
    into[key] = value;
}

} // namespace

const std::vector<std::string>& parameter_keys() {
    static const std::vector<std::string> keys = {"t_S", "t_B", "v",   "delta", "theta", "s_V",
                                                  "s_yS", "x_O", "x_I", "y_S",   "y_B"};
    return keys;
}

std::vector<std::string> preset_names() { return {"appendix", "section6"}; }

std::map<std::string, std::string> preset_values(std::string_view name) {
    // Sanctions are not part of the spreadsheet example; the coalition values
    // are reused so that audited payoffs can be shown for it too.
    if (name == "appendix") {
        return {{"t_S", "0.24"},  {"t_B", "0.33"},  {"v", "0.22"},     {"delta", "1"},
                {"theta", "0.10"}, {"s_V", "0.3"},  {"s_yS", "0.3"},   {"x_O", "10000"},
                {"x_I", "5000"},  {"y_S", "10000"}, {"y_B", "20000"}};
    }
    // Coalition-game example. Buyer rate, deduction share and incomes are
    // borrowed from the spreadsheet example; the frontiers do not depend on them.
    if (name == "section6") {
        return {{"t_S", "0.24"},  {"t_B", "0.33"},  {"v", "0.22"},    {"delta", "1"},
                {"theta", "0.10"}, {"s_V", "0.3"},  {"s_yS", "0.3"},  {"x_O", "100"},
                {"x_I", "50"},    {"y_S", "10000"}, {"y_B", "20000"}};
    }
    throw ConfigError("unknown preset '" + std::string(name) + "'");
}

std::map<std::string, std::string> parse_config_text(std::string_view text) {
    std::map<std::string, std::string> out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty() || value.empty()) {
            throw ConfigError("line " + std::to_string(line_no) + ": empty key or value");
        }
        put(out, key, value);
    }
    return out;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::pair<std::string, std::string> parse_override(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError("override '" + std::string(text) + "' is not key=value");
    }
    std::string key(trim(text.substr(0, eq)));
    std::string value(trim(text.substr(eq + 1)));
    if (!is_known_key(key)) throw ConfigError("unknown configuration key '" + key + "'");
    if (value.empty()) throw ConfigError("empty value for '" + key + "'");
    return {key, value};
}

OutputFormat parse_format(std::string_view text) {
    if (text == "csv") return OutputFormat::Csv;
    if (text == "json") return OutputFormat::Json;
    throw ConfigError("unknown output format '" + std::string(text) + "'");
}

RunConfig resolve_config(const ConfigSources& sources) {
    std::map<std::string, std::string> merged;
    if (sources.preset) merged = preset_values(*sources.preset);
    for (const auto& [k, v] : sources.file) put(merged, k, v);
    for (const auto& [k, v] : sources.overrides) put(merged, k, v);

    RunConfig cfg;
    std::vector<std::string> missing;
    for (const auto& key : parameter_keys()) {
        auto it = merged.find(key);
        if (it == merged.end()) {
            missing.push_back(key);
            continue;
        }
        *field_for(cfg, key) = parse_number(key, it->second);
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto& k : missing) list += (list.empty() ? "" : ", ") + k;
        throw ConfigError("missing parameters (use --preset, --config or --set): " + list);
    }

    if (auto it = merged.find("mode"); it != merged.end()) {
        try {
            cfg.mode = parse_mode(it->second);
        } catch (const InvalidParameter& e) {
            throw ConfigError(e.what());
        }
    }
    if (auto it = merged.find("format"); it != merged.end()) cfg.format = parse_format(it->second);
    if (auto it = merged.find("precision"); it != merged.end()) {
        const double p = parse_number("precision", it->second);
        if (p < 1 || p > 17 || p != std::floor(p)) {
            throw ConfigError("precision must be an integer in [1, 17]");
        }
        cfg.precision = static_cast<int>(p);
    }

    try {
        cfg.policy.validate();
        cfg.te.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

} // namespace vatgame
