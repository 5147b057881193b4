#include "wlab/hjb/problem.hpp"

#include <cmath>

#include "wlab/wasserstein.hpp"

namespace wlab::hjb {

namespace {

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

} // namespace

double HamiltonianSpec::truncated(std::span<const double> x, std::span<const double> p,
                                  const EmpiricalMeasure& m) const {
    const double r = truncation_radius;
    double np = norm2(p);
    if (r <= 0.0 || np <= r) return evaluate(x, p, m);
    std::vector<double> q(p.begin(), p.end());
    double scale = r / np;
    for (auto& v : q) v *= scale;
    return evaluate(x, q, m);
}

void ValueReport::require_finite() const {
    if (!std::isfinite(value)) throw numeric_error("ValueReport: non-finite value");
}

HamiltonianSpec hamiltonian_quadratic() {
    HamiltonianSpec h;
    h.name = "quadratic";
    h.c_h = 1.0;
    h.convex = true;
    h.evaluate = [](std::span<const double>, std::span<const double> p, const EmpiricalMeasure&) {
        double s = 0.0;
        for (double v : p) s += v * v;
        return 0.5 * s;
    };
    h.lagrangian = [](std::span<const double>, std::span<const double> a, const EmpiricalMeasure&) {
        double s = 0.0;
        for (double v : a) s += v * v;
        return 0.5 * s;
    };
    h.lagrangian_grad = [](std::span<const double>, std::span<const double> a,
                           const EmpiricalMeasure&, std::span<double> gx, std::span<double> ga) {
        for (auto& v : gx) v = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k) ga[k] = a[k];
    };
    return h;
}

HamiltonianSpec hamiltonian_abs() {
    HamiltonianSpec h;
    h.name = "abs";
    h.c_h = 1.0;
    h.momentum_lip = 1.0;
    h.convex = true;  // |p| is convex, but carries no finite Lagrangian
    h.evaluate = [](std::span<const double>, std::span<const double> p, const EmpiricalMeasure&) {
        return norm2(p);
    };
    return h;
}

HamiltonianSpec hamiltonian_neg_abs() {
    HamiltonianSpec h;
    h.name = "neg-abs";
    h.c_h = 1.0;
    h.momentum_lip = 1.0;
    h.convex = false;
    h.evaluate = [](std::span<const double>, std::span<const double> p, const EmpiricalMeasure&) {
        return -norm2(p);
    };
    return h;
}

HamiltonianSpec hamiltonian_nonconvex_sin(double a, double b) {
    HamiltonianSpec h;
    h.name = "nonconvex-sin";
    h.c_h = 1.0 + std::abs(a) * (1.0 + std::abs(b));
    h.momentum_lip = 1.0 + std::abs(a * b);
    h.convex = false;
    h.evaluate = [a, b](std::span<const double>, std::span<const double> p,
                        const EmpiricalMeasure&) {
        return norm2(p) + a * std::sin(b * p[0]);
    };
    return h;
}

HamiltonianSpec hamiltonian_by_name(const std::string& name) {
    if (name == "quadratic") return hamiltonian_quadratic();
    if (name == "abs") return hamiltonian_abs();
    if (name == "neg-abs") return hamiltonian_neg_abs();
    if (name == "nonconvex-sin") return hamiltonian_nonconvex_sin(0.5, 3.0);
    throw invalid_input("unknown Hamiltonian: " + name);
}

TerminalSpec terminal_constant(double c) {
    TerminalSpec g;
    g.name = "constant";
    g.c_g = std::max(1.0, std::abs(c));
    g.evaluate = [c](const EmpiricalMeasure&) { return c; };
    g.grad_particles = [](const EmpiricalMeasure& m) {
        return std::vector<double>(m.size() * m.dim(), 0.0);
    };
    return g;
}

TerminalSpec terminal_mean_g(std::function<double(std::span<const double>)> g,
                             std::function<std::vector<double>(std::span<const double>)> dg,
                             double c_g, std::string name) {
    TerminalSpec spec;
    spec.name = std::move(name);
    spec.c_g = c_g;
    spec.evaluate = [g](const EmpiricalMeasure& m) {
        double s = 0.0;
        for (std::size_t i = 0; i < m.size(); ++i) s += g(m.point(i));
        return s / double(m.size());
    };
    if (dg) {
        spec.grad_particles = [dg](const EmpiricalMeasure& m) {
            std::vector<double> out(m.size() * m.dim());
            for (std::size_t i = 0; i < m.size(); ++i) {
                auto gi = dg(m.point(i));
                for (std::size_t k = 0; k < m.dim(); ++k)
                    out[i * m.dim() + k] = gi[k] / double(m.size());
            }
            return out;
        };
    }
    return spec;
}

TerminalSpec terminal_mean_min_abs() {
    auto g = [](std::span<const double> x) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return std::min(std::sqrt(s), 1.0);
    };
    auto dg = [](std::span<const double> x) {
        std::vector<double> out(x.size(), 0.0);
        double n = norm2(x);
        if (n > 0.0 && n < 1.0)
            for (std::size_t k = 0; k < x.size(); ++k) out[k] = x[k] / n;
        return out;
    };
    return terminal_mean_g(g, dg, 1.0, "mean-min-abs");
}

TerminalSpec terminal_mean_gauss() {
    auto g = [](std::span<const double> x) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return std::exp(-s);
    };
    auto dg = [](std::span<const double> x) {
        double s = 0.0;
        for (double v : x) s += v * v;
        double e = std::exp(-s);
        std::vector<double> out(x.size());
        for (std::size_t k = 0; k < x.size(); ++k) out[k] = -2.0 * x[k] * e;
        return out;
    };
    return terminal_mean_g(g, dg, 1.0, "mean-gauss");
}

TerminalSpec terminal_w2_uniform(std::shared_ptr<const SampledMeasure> cloud, double cap) {
    TerminalSpec g;
    g.name = "w2-to-uniform-cube";
    g.c_g = cap;
    g.evaluate = [cloud, cap](const EmpiricalMeasure& m) {
        return std::min(w2_semidiscrete(m, *cloud), cap);
    };
    g.grad_particles = [cloud, cap](const EmpiricalMeasure& m) {
        auto plan = w2_semidiscrete_plan(m, *cloud);
        std::vector<double> out(m.size() * m.dim(), 0.0);
        if (plan.distance <= 1e-300 || plan.distance >= cap) return out;
        for (std::size_t i = 0; i < m.size(); ++i) {
            auto p = m.point(i);
            for (std::size_t k = 0; k < m.dim(); ++k)
                out[i * m.dim() + k] = (p[k] - plan.site_barycenter[i * m.dim() + k]) /
                                       (double(m.size()) * plan.distance);
        }
        return out;
    };
    return g;
}

TerminalSpec terminal_pairwise(double c, double delta) {
    TerminalSpec g;
    g.name = "pairwise-soft-abs";
    // the soft pairwise kernel is 1-Lipschitz, so G moves by at most 2|c| d1
    g.c_g = 2.0 * std::abs(c);
    g.evaluate = [c, delta](const EmpiricalMeasure& m) {
        const std::size_t n = m.size();
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                double q = squared_distance(m.point(i), m.point(j));
                s += std::sqrt(q + delta * delta) - delta;
            }
        return c * s / double(n * n);
    };
    g.grad_particles = [c, delta](const EmpiricalMeasure& m) {
        const std::size_t n = m.size(), d = m.dim();
        std::vector<double> out(n * d, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            auto pi = m.point(i);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                auto pj = m.point(j);
                double q = squared_distance(pi, pj);
                double w = 1.0 / std::sqrt(q + delta * delta);
                for (std::size_t k = 0; k < d; ++k)
                    out[i * d + k] += 2.0 * c * (pi[k] - pj[k]) * w / double(n * n);
            }
        }
        return out;
    };
    return g;
}

TerminalSpec terminal_by_name(const std::string& name) {
    if (name == "constant") return terminal_constant(1.0);
    if (name == "mean-min-abs") return terminal_mean_min_abs();
    if (name == "mean-gauss") return terminal_mean_gauss();
    if (name == "pairwise-soft-abs") return terminal_pairwise(1.0, 0.05);
    throw invalid_input("unknown terminal condition: " + name);
}

} // namespace wlab::hjb
