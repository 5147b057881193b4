#include "wlab/lab/report.hpp"

#include <json.hpp>

#include "wlab/errors.hpp"
#include "wlab/measure_io.hpp"

namespace wlab::lab {

std::string DataTable::to_csv() const {
    std::string out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c) out += ',';
        out += columns[c];
    }
    out += '\n';
    for (const auto& row : rows) {
        if (row.size() != columns.size()) throw invalid_input("DataTable: ragged row");
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_double(row[c]);
        }
        out += '\n';
    }
    return out;
}

DataTable DataTable::from_csv(const std::string& text) {
    DataTable table;
    std::size_t start = 0;
    bool header = true;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(start, end - start);
        start = end + 1;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t p = 0;
        while (p <= line.size()) {
            std::size_t comma = line.find(',', p);
            if (comma == std::string::npos) comma = line.size();
            cells.push_back(line.substr(p, comma - p));
            p = comma + 1;
        }
        if (header) {
            table.columns = cells;
            header = false;
            continue;
        }
        if (cells.size() != table.columns.size())
            throw invalid_input("DataTable::from_csv: ragged row");
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& cell : cells) {
            try {
                row.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw invalid_input("DataTable::from_csv: non-numeric cell '" + cell + "'");
            }
        }
        table.rows.push_back(std::move(row));
    }
    if (table.columns.empty()) throw invalid_input("DataTable::from_csv: empty input");
    return table;
}

std::size_t DataTable::column(const std::string& name) const {
    for (std::size_t c = 0; c < columns.size(); ++c)
        if (columns[c] == name) return c;
    throw invalid_input("DataTable: no column named '" + name + "'");
}

std::vector<double> DataTable::column_values(const std::string& name) const {
    std::size_t c = column(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(row[c]);
    return out;
}

bool ExperimentReport::pass() const {
    for (const auto& v : verdicts)
        if (!v.pass) return false;
    return true;
}

std::string ExperimentReport::to_json() const {
    nlohmann::json j;
    j["experiment"] = experiment;
    j["columns"] = table.columns;
    j["rows"] = table.rows;
    j["thresholds"] = thresholds;
    nlohmann::json vs = nlohmann::json::array();
    for (const auto& v : verdicts)
        vs.push_back({{"name", v.name}, {"pass", v.pass}, {"value", v.value}, {"detail", v.detail}});
    j["verdicts"] = vs;
    j["pass"] = pass();
    return j.dump(2) + "\n";
}

ExperimentReport ExperimentReport::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw invalid_input(std::string("report: ") + e.what());
    }
    ExperimentReport r;
    r.experiment = j.at("experiment").get<std::string>();
    r.table.columns = j.at("columns").get<std::vector<std::string>>();
    r.table.rows = j.at("rows").get<std::vector<std::vector<double>>>();
    r.thresholds = j.at("thresholds").get<std::map<std::string, double>>();
    for (const auto& v : j.at("verdicts")) {
        Verdict verdict;
        verdict.name = v.at("name").get<std::string>();
        verdict.pass = v.at("pass").get<bool>();
        verdict.value = v.at("value").get<double>();
        verdict.detail = v.value("detail", std::string{});
        r.verdicts.push_back(std::move(verdict));
    }
    return r;
}

} // namespace wlab::lab
