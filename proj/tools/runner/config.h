#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsc::runner {

/// Bad configuration or flag value. Maps to exit status 2.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class ValueType { kInt, kUInt, kDouble, kString, kIntList, kDoubleList, kChoice };

struct KeySpec {
    std::string name;
    ValueType type = ValueType::kString;
    std::string default_value;
    std::string help;
    std::vector<std::string> choices;  ///< kChoice only
    bool optional = false;             ///< "none" or empty means unset
};

/// Keys shared by every subcommand.
const std::vector<KeySpec>& global_keys();
/// Subcommand-specific keys; throws ConfigError for an unknown subcommand.
const std::vector<KeySpec>& command_keys(const std::string& command);
/// Global plus subcommand keys.
std::vector<KeySpec> schema_for(const std::string& command);

const std::vector<std::string>& command_names();

/// Validated flat key-value configuration for one subcommand.
class Config {
  public:
    Config() = default;
    explicit Config(std::string command);

    const std::string& command() const { return command_; }

    /// Parses "key = value" lines; '#' starts a comment. A `command` key, if
    /// present, must name this subcommand. Errors carry "origin:line:".
    void merge_text(const std::string& text, const std::string& origin);
    void merge_file(const std::string& path);
    /// One value, as from a command-line flag.
    void set(const std::string& key, const std::string& value, const std::string& origin);

    bool has(const std::string& key) const;
    std::string raw(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    long long get_int(const std::string& key) const;
    unsigned long long get_uint(const std::string& key) const;
    double get_double(const std::string& key) const;
    std::optional<double> get_optional_double(const std::string& key) const;
    std::vector<long long> get_int_list(const std::string& key) const;
    std::vector<double> get_double_list(const std::string& key) const;

  private:
    const KeySpec& spec(const std::string& key, const std::string& where) const;

    std::string command_;
    std::vector<KeySpec> schema_;
    std::map<std::string, std::string> values_;
};

/// "8:80:8" expands to 8, 16, ..., 80; "1,2,5" lists values; both forms mix
/// ("2,8:32:8"). An empty string is an empty list.
std::vector<long long> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

}  // namespace qsc::runner
