#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace wlab {

struct RateFit {
    double slope = 0.0;     // log-log least-squares slope (negative for decay)
    double constant = 0.0;  // exp(intercept)
    double r_squared = 0.0;
};

struct RateRow {
    double n = 0.0;
    double error = 0.0;
    double reference_rate = 0.0;
};

struct RateTable {
    std::vector<RateRow> rows;  // N strictly increasing, errors nonnegative
    RateFit fit;

    std::string to_csv() const;  // header: N,error,reference_rate
};

// Least squares of log(error) against log(N); needs >= 3 rows with positive
// errors and strictly increasing N.
RateFit rate_fit(const std::vector<RateRow>& rows);

// Worst-case constrained quantization rate over unit-sup-norm variables:
// N^{-1/2}, N^{-1/2} log(1+N)^{1/2}, N^{-1/d} for d = 1, 2, >= 3.
double reference_rate(std::size_t n, std::size_t d);

} // namespace wlab
