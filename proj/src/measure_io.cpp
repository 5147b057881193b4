#include "wlab/measure_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace wlab {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string measure_to_csv(const EmpiricalMeasure& m) {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        auto p = m.point(i);
        for (std::size_t k = 0; k < m.dim(); ++k) {
            if (k) out += ',';
            out += format_double(p[k]);
        }
        out += '\n';
    }
    return out;
}

EmpiricalMeasure measure_from_csv(const std::string& text) {
    std::vector<double> data;
    std::size_t dim = 0;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::size_t cols = 0;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            std::size_t pos = 0;
            double val;
            try {
                val = std::stod(cell, &pos);
            } catch (const std::exception&) {
                throw invalid_input("measure_from_csv: non-numeric cell '" + cell + "'");
            }
            while (pos < cell.size() && std::isspace(static_cast<unsigned char>(cell[pos]))) ++pos;
            if (pos != cell.size())
                throw invalid_input("measure_from_csv: trailing junk in cell '" + cell + "'");
            data.push_back(val);
            ++cols;
        }
        if (dim == 0) dim = cols;
        else if (cols != dim) throw invalid_input("measure_from_csv: ragged row");
    }
    if (dim == 0) throw invalid_input("measure_from_csv: empty input");
    return {dim, std::move(data)};
}

std::string measure_to_json(const EmpiricalMeasure& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        auto p = m.point(i);
        for (std::size_t k = 0; k < m.dim(); ++k) row.push_back(p[k]);
        rows.push_back(std::move(row));
    }
    return rows.dump();
}

EmpiricalMeasure measure_from_json(const std::string& text) {
    nlohmann::json rows;
    try {
        rows = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw invalid_input(std::string("measure_from_json: ") + e.what());
    }
    if (!rows.is_array() || rows.empty())
        throw invalid_input("measure_from_json: expected a nonempty array of rows");
    std::size_t dim = 0;
    std::vector<double> data;
    for (const auto& row : rows) {
        if (!row.is_array()) throw invalid_input("measure_from_json: row is not an array");
        if (dim == 0) dim = row.size();
        else if (row.size() != dim) throw invalid_input("measure_from_json: ragged row");
        for (const auto& cell : row) {
            if (!cell.is_number()) throw invalid_input("measure_from_json: non-numeric cell");
            data.push_back(cell.get<double>());
        }
    }
    return {dim, std::move(data)};
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw invalid_input("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw invalid_input("cannot write file: " + path);
    out << content;
}

} // namespace wlab
