#include "wlab/hjb/example.hpp"

#include <cmath>

#include "wlab/rng.hpp"
#include "wlab/wasserstein.hpp"

namespace wlab::hjb {

double hopf_lax_example_value(double distance, double t) {
    if (t < 0.0 || t > 1.0) throw invalid_input("hopf_lax_example_value: t must lie in [0,1]");
    if (distance < 0.0) throw invalid_input("hopf_lax_example_value: negative distance");
    const double tau = 1.0 - t;
    if (tau == 0.0) return distance;
    if (distance >= tau) return distance - 0.5 * tau;
    return distance * distance / (2.0 * tau);
}

double hopf_lax_example_U(const EmpiricalMeasure& m, double t, const SampledMeasure& leb) {
    return hopf_lax_example_value(w2_semidiscrete(m, leb), t);
}

namespace {

struct FrozenPlans {
    std::vector<double> cloud_barycenter;  // per site, mean of its samples
    double cloud_residual = 0.0;           // (1/M) sum |b_j - bar(site(j))|^2
    std::vector<double> matched_x;         // x-point matched to each site
};

// With both transport plans frozen, the objective is
//   sqrt(c0 + (1/N) sum |y_i - bbar_i|^2) + (1/(2N)) sum |y_i - mu_i|^2,
// minimized exactly by y_i(s) = (bbar_i + s mu_i)/(1+s) where s solves a
// scalar fixed-point equation (s = the frozen distance at the minimizer).
double minimize_frozen(const FrozenPlans& plans, std::size_t n, std::size_t d,
                       std::vector<double>& y) {
    double a = 0.0;  // (1/N) sum |mu_i - bbar_i|^2
    for (std::size_t i = 0; i < n * d; ++i) {
        double diff = plans.matched_x[i] - plans.cloud_barycenter[i];
        a += diff * diff;
    }
    a /= double(n);
    const double c0 = plans.cloud_residual;

    auto rhs = [&](double s) {
        double w = s / (1.0 + s);
        return std::sqrt(c0 + w * w * a);
    };
    double lo = 0.0, hi = std::sqrt(c0 + a) + 1.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (rhs(mid) > mid) lo = mid;
        else hi = mid;
    }
    double s = 0.5 * (lo + hi);

    for (std::size_t i = 0; i < n * d; ++i)
        y[i] = (plans.cloud_barycenter[i] + s * plans.matched_x[i]) / (1.0 + s);

    double q = 0.0, r = 0.0;
    for (std::size_t i = 0; i < n * d; ++i) {
        double dc = y[i] - plans.cloud_barycenter[i];
        double dx = y[i] - plans.matched_x[i];
        q += dc * dc;
        r += dx * dx;
    }
    return std::sqrt(c0 + q / double(n)) + 0.5 * r / double(n);
}

FrozenPlans solve_plans(const EmpiricalMeasure& y, const EmpiricalMeasure& x0,
                        const SampledMeasure& leb) {
    const std::size_t n = y.size(), d = y.dim();
    FrozenPlans plans;
    auto sd = w2_semidiscrete_plan(y, leb);
    plans.cloud_barycenter = std::move(sd.site_barycenter);
    // split |y - b|^2 into |y - bbar|^2 + residual around the group means
    double within = 0.0;
    for (std::size_t i = 0; i < n * d; ++i) {
        double diff = y.data()[i] - plans.cloud_barycenter[i];
        within += diff * diff;
    }
    plans.cloud_residual = sd.distance * sd.distance - within / double(n);
    if (plans.cloud_residual < 0.0) plans.cloud_residual = 0.0;

    auto match = w2_assignment(x0, y, 2);
    plans.matched_x.assign(n * d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        auto xi = x0.point(i);
        auto site = static_cast<std::size_t>(match.perm[i]);
        for (std::size_t k = 0; k < d; ++k) plans.matched_x[site * d + k] = xi[k];
    }
    return plans;
}

double objective(const EmpiricalMeasure& y, const EmpiricalMeasure& x0,
                 const SampledMeasure& leb) {
    double dist = w2_semidiscrete(y, leb);
    double coupling = w2_assignment(x0, y, 2).distance;
    return dist + 0.5 * coupling * coupling;
}

} // namespace

ValueReport vn_example_value(const EmpiricalMeasure& x0, const SampledMeasure& leb,
                             const ExampleSearchOptions& opts) {
    if (x0.dim() != leb.dim()) throw invalid_input("vn_example_value: dimension mismatch");
    if (leb.size() % x0.size() != 0)
        throw invalid_input("vn_example_value: sample count must be a multiple of N");
    const std::size_t n = x0.size(), d = x0.dim();

    ValueReport report;
    report.method = "example-search";
    report.value = std::numeric_limits<double>::infinity();
    report.converged = false;

    const std::size_t restarts = std::max<std::size_t>(1, opts.restarts);
    for (std::size_t restart = 0; restart < restarts; ++restart) {
        std::vector<double> y0 = x0.data();
        CounterRng rng(opts.seed, 0xeeaa + restart);
        if (restart == 1) {
            // seeded subset of the cloud
            std::vector<std::uint32_t> pick(leb.size());
            for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = static_cast<std::uint32_t>(i);
            for (std::size_t i = 0; i < n; ++i) {
                std::size_t j = i + static_cast<std::size_t>(rng.next_below(pick.size() - i));
                std::swap(pick[i], pick[j]);
                auto s = leb.point(pick[i]);
                for (std::size_t k = 0; k < d; ++k) y0[i * d + k] = s[k];
            }
        } else if (restart >= 2) {
            for (auto& v : y0) v += opts.jitter * (2.0 * rng.next_double() - 1.0);
        }

        EmpiricalMeasure y(d, y0);
        double value = objective(y, x0, leb);
        bool converged = false;
        std::size_t outer = 0;
        for (; outer < opts.max_outer; ++outer) {
            auto plans = solve_plans(y, x0, leb);
            std::vector<double> ynew(n * d);
            minimize_frozen(plans, n, d, ynew);
            EmpiricalMeasure ycand(d, ynew);
            double cand = objective(ycand, x0, leb);
            if (cand > value + 1e-12) break;  // frozen-plan model no longer improves
            bool done = value - cand <= opts.tol * (1.0 + value);
            y = std::move(ycand);
            value = cand;
            if (done) { converged = true; break; }
        }
        report.iterations += outer + 1;
        if (value < report.value) {
            report.value = value;
            report.converged = converged || report.converged;
            report.grad_norm = 0.0;
        }
    }
    report.require_finite();
    return report;
}

} // namespace wlab::hjb
