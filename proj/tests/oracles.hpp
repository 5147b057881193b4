// Independent reference computations for the test suites. Everything here is
// deliberately brute-force and shares no code path with the library kernels.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "wlab/measure.hpp"
#include "wlab/rng.hpp"

namespace oracle {

// Minimum over all N! pairings of ((1/N) sum |a_i - b_sigma(i)|^p)^(1/p).
inline double brute_force_wp(const wlab::EmpiricalMeasure& a, const wlab::EmpiricalMeasure& b,
                             int p) {
    const std::size_t n = a.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    double best = std::numeric_limits<double>::infinity();
    do {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double c = wlab::squared_distance(a.point(i), b.point(perm[i]));
            s += p == 1 ? std::sqrt(c) : c;
        }
        best = std::min(best, s);
    } while (std::next_permutation(perm.begin(), perm.end()));
    double avg = best / double(n);
    return p == 1 ? avg : std::sqrt(avg);
}

// Minimizer of a scalar function over [lo, hi] by dense scan + refinement.
inline double scan_minimum(const std::function<double(double)>& f, double lo, double hi,
                           std::size_t coarse = 4096) {
    double best_x = lo, best_v = f(lo);
    for (std::size_t i = 1; i <= coarse; ++i) {
        double x = lo + (hi - lo) * double(i) / double(coarse);
        double v = f(x);
        if (v < best_v) { best_v = v; best_x = x; }
    }
    double step = (hi - lo) / double(coarse);
    for (int round = 0; round < 40; ++round) {
        step *= 0.5;
        for (double x : {best_x - step, best_x + step}) {
            if (x < lo || x > hi) continue;
            double v = f(x);
            if (v < best_v) { best_v = v; best_x = x; }
        }
    }
    return best_v;
}

// Central finite-difference gradient.
inline std::vector<double> fd_gradient(const std::function<double(const std::vector<double>&)>& f,
                                       std::vector<double> x, double h = 1e-6) {
    std::vector<double> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double keep = x[i];
        x[i] = keep + h;
        double up = f(x);
        x[i] = keep - h;
        double dn = f(x);
        x[i] = keep;
        g[i] = (up - dn) / (2.0 * h);
    }
    return g;
}

inline wlab::EmpiricalMeasure random_measure(std::size_t n, std::size_t d, wlab::CounterRng& rng,
                                             double scale = 1.0) {
    std::vector<double> data(n * d);
    for (auto& x : data) x = scale * (2.0 * rng.next_double() - 1.0);
    return {d, std::move(data)};
}

} // namespace oracle
