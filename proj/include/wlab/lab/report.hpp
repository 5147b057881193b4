#pragma once

#include <map>
#include <string>
#include <vector>

namespace wlab::lab {

// Column-named numeric table; the canonical rows.csv payload.
struct DataTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::string to_csv() const;
    static DataTable from_csv(const std::string& text);
    std::size_t column(const std::string& name) const;  // throws if absent
    std::vector<double> column_values(const std::string& name) const;
};

struct Verdict {
    std::string name;
    bool pass = false;
    double value = 0.0;
    std::string detail;
};

// Everything needed to re-derive the verdicts: rows + thresholds. Stored as
// report.json next to rows.csv.
struct ExperimentReport {
    std::string experiment;
    DataTable table;
    std::map<std::string, double> thresholds;
    std::vector<Verdict> verdicts;

    bool pass() const;
    std::string to_json() const;
    static ExperimentReport from_json(const std::string& text);
};

} // namespace wlab::lab
