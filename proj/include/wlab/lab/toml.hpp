#pragma once

#include <map>
#include <string>
#include <vector>

namespace wlab::lab {

// Flat TOML subset: [section] headers, key = value lines, # comments.
// Values: integers, floats, booleans, quoted strings, and one-level arrays
// of numbers or strings. Section names prefix keys as "section.key".
class Toml {
public:
    static Toml parse(const std::string& text);
    static Toml parse_file(const std::string& path);

    bool has(const std::string& key) const;
    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    std::int64_t integer(const std::string& key) const;
    std::int64_t integer_or(const std::string& key, std::int64_t fallback) const;
    bool boolean_or(const std::string& key, bool fallback) const;
    std::string text(const std::string& key) const;
    std::string text_or(const std::string& key, const std::string& fallback) const;
    std::vector<double> numbers(const std::string& key) const;
    std::vector<double> numbers_or(const std::string& key, std::vector<double> fallback) const;

    std::vector<std::string> keys() const;

private:
    struct Value {
        enum class Kind { number, boolean, string, number_list, string_list } kind;
        double num = 0.0;
        bool flag = false;
        std::string str;
        std::vector<double> nums;
        std::vector<std::string> strs;
    };
    std::map<std::string, Value> values_;

    const Value& at(const std::string& key) const;
};

} // namespace wlab::lab
