#include "wlab/lab/toml.hpp"

#include <algorithm>
#include <cctype>

#include "wlab/errors.hpp"
#include "wlab/measure_io.hpp"

namespace wlab::lab {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// strip a comment that is not inside a quoted string
std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        else if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

bool parse_number(const std::string& s, double& out) {
    if (s.empty()) return false;
    std::size_t pos = 0;
    try {
        out = std::stod(s, &pos);
    } catch (const std::exception&) {
        return false;
    }
    return pos == s.size();
}

} // namespace

Toml Toml::parse(const std::string& text) {
    Toml table;
    std::string section;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        std::string line = trim(strip_comment(text.substr(start, end - start)));
        start = end + 1;
        ++line_no;
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw invalid_input("toml: unterminated section at line " + std::to_string(line_no));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw invalid_input("toml: expected key = value at line " + std::to_string(line_no));
        std::string key = trim(line.substr(0, eq));
        std::string raw = trim(line.substr(eq + 1));
        if (key.empty() || raw.empty())
            throw invalid_input("toml: empty key or value at line " + std::to_string(line_no));
        if (!section.empty()) key = section + "." + key;

        Value v{};
        if (raw.front() == '"') {
            if (raw.size() < 2 || raw.back() != '"')
                throw invalid_input("toml: unterminated string at line " + std::to_string(line_no));
            v.kind = Value::Kind::string;
            v.str = raw.substr(1, raw.size() - 2);
        } else if (raw == "true" || raw == "false") {
            v.kind = Value::Kind::boolean;
            v.flag = raw == "true";
        } else if (raw.front() == '[') {
            if (raw.back() != ']')
                throw invalid_input("toml: unterminated array at line " + std::to_string(line_no));
            std::string inner = raw.substr(1, raw.size() - 2);
            v.kind = Value::Kind::number_list;
            std::size_t p = 0;
            while (p < inner.size()) {
                std::size_t comma = inner.find(',', p);
                if (comma == std::string::npos) comma = inner.size();
                std::string cell = trim(inner.substr(p, comma - p));
                p = comma + 1;
                if (cell.empty()) continue;
                if (cell.front() == '"') {
                    if (cell.size() < 2 || cell.back() != '"')
                        throw invalid_input("toml: bad string cell at line " + std::to_string(line_no));
                    v.kind = Value::Kind::string_list;
                    v.strs.push_back(cell.substr(1, cell.size() - 2));
                } else {
                    double num;
                    if (!parse_number(cell, num))
                        throw invalid_input("toml: bad numeric cell '" + cell + "' at line " +
                                            std::to_string(line_no));
                    v.nums.push_back(num);
                }
            }
        } else {
            double num;
            if (!parse_number(raw, num))
                throw invalid_input("toml: unrecognized value '" + raw + "' at line " +
                                    std::to_string(line_no));
            v.kind = Value::Kind::number;
            v.num = num;
        }
        table.values_[key] = std::move(v);
    }
    return table;
}

Toml Toml::parse_file(const std::string& path) { return parse(read_text_file(path)); }

const Toml::Value& Toml::at(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw invalid_input("toml: missing key '" + key + "'");
    return it->second;
}

bool Toml::has(const std::string& key) const { return values_.count(key) > 0; }

double Toml::number(const std::string& key) const {
    const auto& v = at(key);
    if (v.kind != Value::Kind::number) throw invalid_input("toml: '" + key + "' is not a number");
    return v.num;
}

double Toml::number_or(const std::string& key, double fallback) const {
    return has(key) ? number(key) : fallback;
}

std::int64_t Toml::integer(const std::string& key) const {
    double v = number(key);
    auto i = static_cast<std::int64_t>(v);
    if (double(i) != v) throw invalid_input("toml: '" + key + "' is not an integer");
    return i;
}

std::int64_t Toml::integer_or(const std::string& key, std::int64_t fallback) const {
    return has(key) ? integer(key) : fallback;
}

bool Toml::boolean_or(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const auto& v = at(key);
    if (v.kind != Value::Kind::boolean) throw invalid_input("toml: '" + key + "' is not a boolean");
    return v.flag;
}

std::string Toml::text(const std::string& key) const {
    const auto& v = at(key);
    if (v.kind != Value::Kind::string) throw invalid_input("toml: '" + key + "' is not a string");
    return v.str;
}

std::string Toml::text_or(const std::string& key, const std::string& fallback) const {
    return has(key) ? text(key) : fallback;
}

std::vector<double> Toml::numbers(const std::string& key) const {
    const auto& v = at(key);
    if (v.kind != Value::Kind::number_list)
        throw invalid_input("toml: '" + key + "' is not a numeric array");
    return v.nums;
}

std::vector<double> Toml::numbers_or(const std::string& key, std::vector<double> fallback) const {
    return has(key) ? numbers(key) : fallback;
}

std::vector<std::string> Toml::keys() const {
    std::vector<std::string> out;
    out.reserve(values_.size());
    for (const auto& [k, v] : values_) out.push_back(k);
    return out;
}

} // namespace wlab::lab
