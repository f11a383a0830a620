#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vatgame/model.hpp"

namespace vatgame {

/// Bad command line or configuration. The CLI maps it to exit code 1.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, Json };

struct RunConfig {
    TaxPolicy policy;
    TransactionEndowments te;
    SanctionBaseMode mode = SanctionBaseMode::Corrected;
    OutputFormat format = OutputFormat::Csv;
    int precision = 6;
};

/// Parameter keys, in emission order: t_S t_B v delta theta s_V s_yS x_O x_I y_S y_B.
const std::vector<std::string>& parameter_keys();

std::vector<std::string> preset_names();

/// Full parameter map for a built-in preset; throws ConfigError if unknown.
std::map<std::string, std::string> preset_values(std::string_view name);

/// Parses flat `key = value` text. Blank lines and `#` comments are ignored.
/// Besides the parameter keys, `mode`, `format` and `precision` are accepted.
std::map<std::string, std::string> parse_config_text(std::string_view text);

std::map<std::string, std::string> read_config_file(const std::string& path);

/// Splits a `key=value` command-line override.
std::pair<std::string, std::string> parse_override(std::string_view text);

struct ConfigSources {
    std::optional<std::string> preset;
    std::map<std::string, std::string> file;
    std::vector<std::pair<std::string, std::string>> overrides;
};

/// Layers preset < file < overrides. Every parameter key must end up set
/// and admissible; unknown keys and malformed numbers are rejected.
RunConfig resolve_config(const ConfigSources& sources);

OutputFormat parse_format(std::string_view text);

} // namespace vatgame
