#include "wlab/hjb/analysis.hpp"

#include <cmath>

#include "wlab/quantize.hpp"
#include "wlab/rng.hpp"
#include "wlab/wasserstein.hpp"

namespace wlab::hjb {

SmallTimeReport small_time_check(const MeasureValueFn& u_value, const MeasureValueFn& vn_value,
                                 double t, double horizon, double eps, double c_g,
                                 double comparison_c, const std::vector<SmallTimePair>& pairs) {
    if (eps <= 0.0) throw invalid_input("small_time_check: eps must be positive");
    SmallTimeReport report;
    report.bound = comparison_c * (horizon - t) + 0.5 * c_g * c_g * eps;
    report.max_lhs = -std::numeric_limits<double>::infinity();
    for (const auto& pair : pairs) {
        double d = wp_clouds(pair.mu, pair.x, 2);
        double lhs = u_value(t, pair.mu) - vn_value(t, pair.x) - d * d / (2.0 * eps);
        report.lhs_values.push_back(lhs);
        report.max_lhs = std::max(report.max_lhs, lhs);
    }
    report.holds = report.max_lhs <= report.bound + 1e-12;
    return report;
}

namespace {

double extension_objective(const std::function<double(const EmpiricalMeasure&)>& vn,
                           const EmpiricalMeasure& x, const EmpiricalMeasure& m, double c0) {
    return vn(x) + 2.0 * c0 * wp_clouds(x, m, 1);
}

} // namespace

ExtendResult lipschitz_extend(const std::function<double(const EmpiricalMeasure&)>& vn,
                              const EmpiricalMeasure& m, std::size_t n, double c0,
                              const ExtendOptions& opts) {
    if (m.size() % n != 0)
        throw invalid_input("lipschitz_extend: measure size must be a multiple of N");
    const std::size_t d = m.dim();

    // initial configuration: balanced quantizer of m
    QuantizeOptions qopts;
    qopts.restarts = 3;
    qopts.seed = opts.seed;
    auto quant = e_n_estimate(m, n, AtomSpace(m.size()), qopts);

    ExtendResult best{std::numeric_limits<double>::infinity(), quant.configuration, false};

    for (std::size_t restart = 0; restart < std::max<std::size_t>(1, opts.restarts); ++restart) {
        std::vector<double> x = quant.configuration.data();
        CounterRng rng(opts.seed, 0x11f7 + restart);
        if (restart > 0)
            for (auto& v : x) v += 0.1 * double(restart) * (2.0 * rng.next_double() - 1.0);

        EmpiricalMeasure xm(d, x);
        double value = extension_objective(vn, xm, m, c0);
        double step = opts.step0;
        std::size_t iters = 0;
        while (step > opts.step_min && iters < opts.max_iters) {
            bool improved = false;
            for (std::size_t i = 0; i < x.size() && iters < opts.max_iters; ++i) {
                for (double dir : {+1.0, -1.0}) {
                    std::vector<double> trial = x;
                    trial[i] += dir * step;
                    EmpiricalMeasure tm(d, trial);
                    double cand = extension_objective(vn, tm, m, c0);
                    ++iters;
                    if (cand < value - 1e-14) {
                        x = std::move(trial);
                        value = cand;
                        improved = true;
                        break;
                    }
                }
            }
            if (!improved) step *= opts.shrink;
        }
        if (value < best.value) {
            best.value = value;
            best.minimizer = EmpiricalMeasure(d, x);
            best.budget_exhausted = iters >= opts.max_iters && step > opts.step_min;
        }
    }
    return best;
}

double d1_lipschitz_quotient(
    const std::function<double(const EmpiricalMeasure&)>& f,
    const std::vector<std::pair<EmpiricalMeasure, EmpiricalMeasure>>& pairs) {
    double quotient = 0.0;
    for (const auto& [a, b] : pairs) {
        double d1 = a.size() == b.size() ? w2_assignment(a, b, 1).distance : wp_clouds(a, b, 1);
        if (d1 <= 0.0) continue;
        quotient = std::max(quotient, std::abs(f(a) - f(b)) / d1);
    }
    return quotient;
}

} // namespace wlab::hjb
