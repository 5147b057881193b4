#pragma once

#include <functional>

#include "wlab/hjb/problem.hpp"

namespace wlab::hjb {

using MeasureValueFn = std::function<double(double t, const EmpiricalMeasure& m)>;

struct SmallTimePair {
    EmpiricalMeasure mu;  // arbitrary discretized measure
    EmpiricalMeasure x;   // N-particle configuration; mu's size a multiple of N
};

struct SmallTimeReport {
    double max_lhs = 0.0;  // max of U(t,mu) - V^N(t,x) - d2^2(mu, m_x)/(2 eps)
    double bound = 0.0;    // C (T - t) + C_G^2 eps / 2
    bool holds = false;
    std::vector<double> lhs_values;
};

// Evaluates the penalized gap on every trial pair and compares against the
// comparison bound.
SmallTimeReport small_time_check(const MeasureValueFn& u_value, const MeasureValueFn& vn_value,
                                 double t, double horizon, double eps, double c_g,
                                 double comparison_c, const std::vector<SmallTimePair>& pairs);

struct ExtendOptions {
    std::size_t restarts = 3;
    std::size_t max_iters = 120;
    double step0 = 0.2;
    double shrink = 0.5;
    double step_min = 1e-6;
    std::uint64_t seed = 0;
};

struct ExtendResult {
    double value = 0.0;
    EmpiricalMeasure minimizer;
    bool budget_exhausted = false;
};

// inf over N-point configurations x of { V^N(t,x) + 2 C0 d1(m^N_x, m) }:
// the Lipschitz extension of a particle value function to arbitrary measures.
// Multi-start pattern search, initialized at balanced quantizers of m; an
// upper bound that is exact when m is itself an N-point configuration.
ExtendResult lipschitz_extend(const std::function<double(const EmpiricalMeasure&)>& vn,
                              const EmpiricalMeasure& m, std::size_t n, double c0,
                              const ExtendOptions& opts = {});

// max over pairs of |f(x) - f(y)| / d1(m_x, m_y).
double d1_lipschitz_quotient(const std::function<double(const EmpiricalMeasure&)>& f,
                             const std::vector<std::pair<EmpiricalMeasure, EmpiricalMeasure>>& pairs);

} // namespace wlab::hjb
