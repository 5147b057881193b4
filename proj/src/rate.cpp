#include "wlab/rate.hpp"

#include <cmath>

#include "wlab/errors.hpp"
#include "wlab/measure_io.hpp"

namespace wlab {

std::string RateTable::to_csv() const {
    std::string out = "N,error,reference_rate\n";
    for (const auto& r : rows) {
        out += format_double(r.n);
        out += ',';
        out += format_double(r.error);
        out += ',';
        out += format_double(r.reference_rate);
        out += '\n';
    }
    return out;
}

RateFit rate_fit(const std::vector<RateRow>& rows) {
    if (rows.size() < 3) throw invalid_input("rate_fit: need at least 3 rows");
    double prev_n = 0.0;
    for (const auto& r : rows) {
        if (r.error <= 0.0) throw invalid_input("rate_fit: errors must be positive");
        if (r.n <= prev_n) throw invalid_input("rate_fit: N must be strictly increasing");
        prev_n = r.n;
    }
    const double m = double(rows.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& r : rows) {
        double lx = std::log(r.n), ly = std::log(r.error);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    RateFit fit;
    double denom = m * sxx - sx * sx;
    fit.slope = (m * sxy - sx * sy) / denom;
    double intercept = (sy - fit.slope * sx) / m;
    fit.constant = std::exp(intercept);
    double mean_y = sy / m, ss_res = 0.0, ss_tot = 0.0;
    for (const auto& r : rows) {
        double lx = std::log(r.n), ly = std::log(r.error);
        double pred = intercept + fit.slope * lx;
        ss_res += (ly - pred) * (ly - pred);
        ss_tot += (ly - mean_y) * (ly - mean_y);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

double reference_rate(std::size_t n, std::size_t d) {
    if (n == 0 || d == 0) throw invalid_input("reference_rate: n and d must be >= 1");
    double nn = double(n);
    if (d == 1) return 1.0 / std::sqrt(nn);
    if (d == 2) return std::sqrt(std::log1p(nn) / nn);
    return std::pow(nn, -1.0 / double(d));
}

} // namespace wlab
