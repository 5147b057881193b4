#pragma once

#include <string>

#include "wlab/lab/report.hpp"

namespace wlab::lab {

// Static log-log scatter/line plot of y against x. Returns an SVG document.
std::string svg_loglog(const DataTable& table, const std::string& xcol, const std::string& ycol,
                       const std::string& title);

// The default plot for an experiment's rows (empty string when the
// experiment has no natural x/y pair).
std::string plot_report(const ExperimentReport& report);

} // namespace wlab::lab
