#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace btn1d_cli {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

bool valid_key_part(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '_' || c == '-';
    });
}

[[noreturn]] void fail(int line, const std::string& what) {
    std::ostringstream msg;
    if (line > 0) msg << "config line " << line << ": ";
    else msg << "config override: ";
    msg << what;
    throw ConfigError(msg.str());
}

double parse_number(const std::string& text, int line) {
    const std::string t = trim(text);
    if (t.empty()) fail(line, "empty number");
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size()) fail(line, "malformed number '" + t + "'");
    return v;
}

ConfigValue parse_value(const std::string& raw, int line) {
    ConfigValue v;
    v.line = line;
    const std::string t = trim(raw);
    if (t.empty()) fail(line, "missing value");

    if (t.front() == '"') {
        if (t.size() < 2 || t.back() != '"') fail(line, "unterminated string");
        v.kind = ConfigValue::Kind::String;
        v.text = t.substr(1, t.size() - 2);
        if (v.text.find('"') != std::string::npos) fail(line, "embedded quote in string");
        return v;
    }
    if (t == "true" || t == "false") {
        v.kind = ConfigValue::Kind::Boolean;
        v.boolean = t == "true";
        return v;
    }
    if (t.front() == '[') {
        if (t.back() != ']') fail(line, "unterminated list");
        v.kind = ConfigValue::Kind::NumberList;
        std::string body = t.substr(1, t.size() - 2);
        std::stringstream ss(body);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (trim(item).empty() && !ss.eof()) fail(line, "empty list element");
            if (trim(item).empty()) break; // trailing comma
            v.list.push_back(parse_number(item, line));
        }
        if (v.list.empty()) fail(line, "empty list");
        return v;
    }
    v.kind = ConfigValue::Kind::Number;
    v.number = parse_number(t, line);
    return v;
}

const char* kind_name(ConfigValue::Kind k) {
    switch (k) {
    case ConfigValue::Kind::String: return "string";
    case ConfigValue::Kind::Number: return "number";
    case ConfigValue::Kind::Boolean: return "boolean";
    case ConfigValue::Kind::NumberList: return "number list";
    }
    return "?";
}

} // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");

    Config cfg;
    std::string section;
    std::string line_text;
    int line_no = 0;
    while (std::getline(in, line_text)) {
        ++line_no;
        // strip comments, respecting quoted strings
        bool in_string = false;
        std::string code;
        for (char c : line_text) {
            if (c == '"') in_string = !in_string;
            if (c == '#' && !in_string) break;
            code.push_back(c);
        }
        const std::string t = trim(code);
        if (t.empty()) continue;

        if (t.front() == '[') {
            if (t.back() != ']') fail(line_no, "unterminated section header");
            section = trim(t.substr(1, t.size() - 2));
            if (!valid_key_part(section)) fail(line_no, "bad section name '" + section + "'");
            continue;
        }

        const auto eq = t.find('=');
        if (eq == std::string::npos) fail(line_no, "expected key = value");
        const std::string key_part = trim(t.substr(0, eq));
        if (!valid_key_part(key_part)) fail(line_no, "bad key '" + key_part + "'");
        const std::string key = section.empty() ? key_part : section + "." + key_part;
        if (cfg.values_.count(key)) fail(line_no, "duplicate key '" + key + "'");
        cfg.values_[key] = parse_value(t.substr(eq + 1), line_no);
    }
    return cfg;
}

void Config::apply_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) {
        throw ConfigError("--set expects key=value, got '" + assignment + "'");
    }
    const std::string key = trim(assignment.substr(0, eq));
    std::string head = key, tail;
    const auto dot = key.find('.');
    if (dot != std::string::npos) {
        head = key.substr(0, dot);
        tail = key.substr(dot + 1);
    }
    if (!valid_key_part(head) || (dot != std::string::npos && !valid_key_part(tail)) ||
        key.find('.', dot + 1) != std::string::npos) {
        throw ConfigError("--set: bad key '" + key + "'");
    }
    values_[key] = parse_value(assignment.substr(eq + 1), 0);
}

const ConfigValue* Config::find(const std::string& key) const {
    const auto it = values_.find(key);
    return it == values_.end() ? nullptr : &it->second;
}

namespace {

[[noreturn]] void missing(const std::string& key) {
    throw ConfigError("missing required key '" + key + "'");
}

[[noreturn]] void wrong_type(const std::string& key, const ConfigValue& v, const char* want) {
    std::ostringstream msg;
    msg << "key '" << key << "'";
    if (v.line > 0) msg << " (line " << v.line << ")";
    msg << " must be a " << want << ", got a " << kind_name(v.kind);
    throw ConfigError(msg.str());
}

} // namespace

std::string Config::get_string(const std::string& key) const {
    const ConfigValue* v = find(key);
    if (!v) missing(key);
    if (v->kind != ConfigValue::Kind::String) wrong_type(key, *v, "string");
    return v->text;
}

double Config::get_number(const std::string& key) const {
    const ConfigValue* v = find(key);
    if (!v) missing(key);
    if (v->kind != ConfigValue::Kind::Number) wrong_type(key, *v, "number");
    return v->number;
}

long Config::get_integer(const std::string& key) const {
    const double v = get_number(key);
    const long n = std::lround(v);
    if (std::abs(v - n) > 1e-9) {
        throw ConfigError("key '" + key + "' must be an integer");
    }
    return n;
}

std::vector<double> Config::get_number_list(const std::string& key) const {
    const ConfigValue* v = find(key);
    if (!v) missing(key);
    if (v->kind != ConfigValue::Kind::NumberList) wrong_type(key, *v, "number list");
    return v->list;
}

std::string Config::get_string_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? get_string(key) : fallback;
}

double Config::get_number_or(const std::string& key, double fallback) const {
    return has(key) ? get_number(key) : fallback;
}

long Config::get_integer_or(const std::string& key, long fallback) const {
    return has(key) ? get_integer(key) : fallback;
}

void Config::require_known_keys(const std::vector<std::string>& allowed) const {
    for (const auto& [key, value] : values_) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            std::ostringstream msg;
            msg << "unknown key '" << key << "'";
            if (value.line > 0) msg << " (line " << value.line << ")";
            msg << " for this mode";
            throw ConfigError(msg.str());
        }
    }
}

} // namespace btn1d_cli
