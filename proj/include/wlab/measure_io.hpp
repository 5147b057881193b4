#pragma once

#include <string>

#include "wlab/measure.hpp"

namespace wlab {

// CSV: one row per point, d comma-separated columns, no header.
std::string measure_to_csv(const EmpiricalMeasure& m);
EmpiricalMeasure measure_from_csv(const std::string& text);

// JSON: array of d-element arrays.
std::string measure_to_json(const EmpiricalMeasure& m);
EmpiricalMeasure measure_from_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Shortest round-trip decimal form of a double.
std::string format_double(double x);

} // namespace wlab
