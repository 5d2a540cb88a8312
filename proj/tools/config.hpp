#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace btn1d_cli {

/// Configuration error with file/line or key context already in the message.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigValue {
    enum class Kind { String, Number, Boolean, NumberList };
    Kind kind = Kind::String;
    std::string text;
    double number = 0.0;
    bool boolean = false;
    std::vector<double> list;
    int line = 0; // 0 for command-line overrides
};

/// Flat view of the config file: `[section]` + `key = value` becomes the
/// dotted key "section.key". Top-level keys keep their bare name.
class Config {
public:
    /// Parse a file. Syntax: one-level [section] headers, key = value pairs,
    /// '#' comments, values are quoted strings, numbers, booleans, or
    /// [number, ...] lists. Duplicate keys are rejected.
    static Config parse_file(const std::string& path);

    /// Apply a --set override of the form key=value (dotted key, same value
    /// syntax as the file). Overrides replace file values.
    void apply_override(const std::string& assignment);

    bool has(const std::string& key) const { return values_.count(key) > 0; }

    const ConfigValue* find(const std::string& key) const;

    std::string get_string(const std::string& key) const;
    double get_number(const std::string& key) const;
    long get_integer(const std::string& key) const; // number that must be integral
    std::vector<double> get_number_list(const std::string& key) const;

    std::string get_string_or(const std::string& key, const std::string& fallback) const;
    double get_number_or(const std::string& key, double fallback) const;
    long get_integer_or(const std::string& key, long fallback) const;

    /// Reject any present key that is not in `allowed`, naming the first
    /// offender with its line number.
    void require_known_keys(const std::vector<std::string>& allowed) const;

    const std::map<std::string, ConfigValue>& values() const { return values_; }

private:
    std::map<std::string, ConfigValue> values_;
};

} // namespace btn1d_cli
