#include "wlab/lab/svg.hpp"

#include <algorithm>
#include <cmath>

#include "wlab/errors.hpp"
#include "wlab/measure_io.hpp"

namespace wlab::lab {

std::string svg_loglog(const DataTable& table, const std::string& xcol, const std::string& ycol,
                       const std::string& title) {
    auto xs = table.column_values(xcol);
    auto ys = table.column_values(ycol);
    if (xs.empty()) throw invalid_input("svg_loglog: empty table");
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (xs[i] <= 0.0 || ys[i] <= 0.0)
            throw invalid_input("svg_loglog: log-log plot needs positive values");

    const double width = 640, height = 480, margin = 60;
    double lx_min = std::log10(*std::min_element(xs.begin(), xs.end()));
    double lx_max = std::log10(*std::max_element(xs.begin(), xs.end()));
    double ly_min = std::log10(*std::min_element(ys.begin(), ys.end()));
    double ly_max = std::log10(*std::max_element(ys.begin(), ys.end()));
    if (lx_max - lx_min < 1e-9) lx_max = lx_min + 1.0;
    if (ly_max - ly_min < 1e-9) ly_max = ly_min + 1.0;

    auto px = [&](double x) {
        return margin + (std::log10(x) - lx_min) / (lx_max - lx_min) * (width - 2 * margin);
    };
    auto py = [&](double y) {
        return height - margin -
               (std::log10(y) - ly_min) / (ly_max - ly_min) * (height - 2 * margin);
    };

    std::vector<std::size_t> order(xs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(int(width)) +
           "\" height=\"" + std::to_string(int(height)) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + std::to_string(int(width / 2)) +
           "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" + title + "</text>\n";
    svg += "<line x1=\"" + std::to_string(int(margin)) + "\" y1=\"" +
           std::to_string(int(height - margin)) + "\" x2=\"" + std::to_string(int(width - margin)) +
           "\" y2=\"" + std::to_string(int(height - margin)) + "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + std::to_string(int(margin)) + "\" y1=\"" + std::to_string(int(margin)) +
           "\" x2=\"" + std::to_string(int(margin)) + "\" y2=\"" +
           std::to_string(int(height - margin)) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + std::to_string(int(width / 2)) + "\" y=\"" +
           std::to_string(int(height - 16)) + "\" text-anchor=\"middle\" font-size=\"12\">" + xcol +
           " (log)</text>\n";
    svg += "<text x=\"16\" y=\"" + std::to_string(int(height / 2)) +
           "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 " +
           std::to_string(int(height / 2)) + ")\">" + ycol + " (log)</text>\n";

    svg += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (auto i : order)
        svg += format_double(px(xs[i])) + "," + format_double(py(ys[i])) + " ";
    svg += "\"/>\n";
    for (auto i : order)
        svg += "<circle cx=\"" + format_double(px(xs[i])) + "\" cy=\"" + format_double(py(ys[i])) +
               "\" r=\"3\" fill=\"firebrick\"/>\n";
    svg += "</svg>\n";
    return svg;
}

std::string plot_report(const ExperimentReport& report) {
    const auto& cols = report.table.columns;
    auto has = [&](const std::string& name) {
        return std::find(cols.begin(), cols.end(), name) != cols.end();
    };
    try {
        if (has("N") && has("error"))
            return svg_loglog(report.table, "N", "error", report.experiment);
        if (has("N") && has("gap")) return svg_loglog(report.table, "N", "gap", report.experiment);
        if (has("alpha") && has("rho_x"))
            return svg_loglog(report.table, "alpha", "rho_x", report.experiment);
    } catch (const std::exception&) {
        return {};
    }
    return {};
}

} // namespace wlab::lab
