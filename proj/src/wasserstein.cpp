#include "wlab/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wlab/transport.hpp"

namespace wlab {

namespace {

// Sort order of a 1-D value list, ties broken by original index.
std::vector<std::size_t> sorted_order(const std::vector<double>& vals) {
    std::vector<std::size_t> idx(vals.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t i, std::size_t j) { return vals[i] < vals[j]; });
    return idx;
}

double point_cost(std::span<const double> a, std::span<const double> b, int p) {
    return p == 1 ? distance(a, b) : squared_distance(a, b);
}

} // namespace

double w2_1d(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
    if (a.dim() != 1 || b.dim() != 1) throw invalid_input("w2_1d: measures must be 1-D");
    if (a.size() != b.size()) throw invalid_input("w2_1d: measures must have equal N");
    auto ia = sorted_order(a.data());
    auto ib = sorted_order(b.data());
    double s = 0.0;
    for (std::size_t r = 0; r < ia.size(); ++r) {
        double diff = a.data()[ia[r]] - b.data()[ib[r]];
        s += diff * diff;
    }
    return std::sqrt(s / double(a.size()));
}

W2Result w2_assignment(const EmpiricalMeasure& a, const EmpiricalMeasure& b, int p,
                       std::size_t cap) {
    if (a.size() != b.size()) throw invalid_input("w2_assignment: measures must have equal N");
    if (a.dim() != b.dim()) throw invalid_input("w2_assignment: dimension mismatch");
    if (p != 1 && p != 2) throw invalid_input("w2_assignment: exponent must be 1 or 2");
    if (a.size() > cap)
        throw resource_limit("w2_assignment: N exceeds the exact-assignment cap");
    const std::size_t n = a.size();
    auto plan = solve_assignment(
        n, [&](std::size_t i, std::size_t j) { return point_cost(a.point(i), b.point(j), p); });
    double avg = plan.total_cost / double(n);
    W2Result out;
    out.distance = p == 1 ? avg : std::sqrt(avg);
    out.perm = std::move(plan.col_of_row);
    return out;
}

namespace {

double wp_clouds_1d(const EmpiricalMeasure& small, const EmpiricalMeasure& big, int p) {
    const std::size_t k = big.size() / small.size();
    std::vector<double> rep;
    rep.reserve(big.size());
    auto order = sorted_order(small.data());
    for (std::size_t r = 0; r < order.size(); ++r)
        rep.insert(rep.end(), k, small.data()[order[r]]);
    auto ob = sorted_order(big.data());
    double s = 0.0;
    for (std::size_t r = 0; r < rep.size(); ++r) {
        double diff = rep[r] - big.data()[ob[r]];
        s += p == 1 ? std::abs(diff) : diff * diff;
    }
    double avg = s / double(big.size());
    return p == 1 ? avg : std::sqrt(avg);
}

} // namespace

double wp_clouds(const EmpiricalMeasure& a, const EmpiricalMeasure& b, int p) {
    if (a.dim() != b.dim()) throw invalid_input("wp_clouds: dimension mismatch");
    if (p != 1 && p != 2) throw invalid_input("wp_clouds: exponent must be 1 or 2");
    const EmpiricalMeasure& small = a.size() <= b.size() ? a : b;
    const EmpiricalMeasure& big = a.size() <= b.size() ? b : a;
    if (big.size() % small.size() != 0)
        throw invalid_input("wp_clouds: larger cloud size must be a multiple of the smaller");
    if (a.dim() == 1) return wp_clouds_1d(small, big, p);
    const std::size_t k = big.size() / small.size();
    std::vector<std::int64_t> capacity(small.size(), static_cast<std::int64_t>(k));
    auto plan = solve_transport(big.size(), small.size(), capacity,
                                [&](std::size_t r, std::size_t j) {
                                    return point_cost(big.point(r), small.point(j), p);
                                });
    double avg = plan.total_cost / double(big.size());
    return p == 1 ? avg : std::sqrt(avg);
}

double w2_semidiscrete(const EmpiricalMeasure& a, const SampledMeasure& b, int p) {
    if (a.dim() != b.dim()) throw invalid_input("w2_semidiscrete: dimension mismatch");
    if (b.size() % a.size() != 0)
        throw invalid_input("w2_semidiscrete: sample count must be a multiple of N");
    return wp_clouds(a, b.as_empirical(), p);
}

SemidiscretePlan w2_semidiscrete_plan(const EmpiricalMeasure& a, const SampledMeasure& b) {
    if (a.dim() != b.dim()) throw invalid_input("w2_semidiscrete_plan: dimension mismatch");
    if (b.size() % a.size() != 0)
        throw invalid_input("w2_semidiscrete_plan: sample count must be a multiple of N");
    const std::size_t n = a.size(), m = b.size(), d = a.dim();
    const std::size_t k = m / n;

    SemidiscretePlan out;
    out.site_barycenter.assign(n * d, 0.0);
    double total = 0.0;

    if (d == 1) {
        auto oa = sorted_order(a.data());
        auto ob = sorted_order(b.data());
        for (std::size_t r = 0; r < n; ++r) {
            double av = a.data()[oa[r]];
            double acc = 0.0;
            for (std::size_t q = 0; q < k; ++q) {
                double bv = b.data()[ob[r * k + q]];
                total += (av - bv) * (av - bv);
                acc += bv;
            }
            out.site_barycenter[oa[r]] = acc / double(k);
        }
    } else {
        std::vector<std::int64_t> capacity(n, static_cast<std::int64_t>(k));
        auto plan = solve_transport(m, n, capacity, [&](std::size_t r, std::size_t j) {
            return squared_distance(b.point(r), a.point(j));
        });
        total = plan.total_cost;
        for (std::size_t r = 0; r < m; ++r) {
            auto site = static_cast<std::size_t>(plan.site_of[r]);
            auto bp = b.point(r);
            for (std::size_t q = 0; q < d; ++q) out.site_barycenter[site * d + q] += bp[q];
        }
        for (auto& x : out.site_barycenter) x /= double(k);
    }
    out.distance = std::sqrt(total / double(m));
    return out;
}

} // namespace wlab
