#pragma once

#include <functional>
#include <memory>
#include <string>

#include "wlab/measure.hpp"

namespace wlab::hjb {

// Problem data H(x, p, m) with declared growth/Lipschitz constant and the
// truncation radius used by the solvers. When `convex` is set, `lagrangian`
// carries L(x, a, m) with H(x,p,m) = sup_a { -L(x,a,m) - a.p }.
struct HamiltonianSpec {
    using Fn = std::function<double(std::span<const double> x, std::span<const double> p,
                                    const EmpiricalMeasure& m)>;
    using LagrangianFn = std::function<double(std::span<const double> x, std::span<const double> a,
                                              const EmpiricalMeasure& m)>;
    // writes dL/dx and dL/da into the provided slots
    using LagrangianGradFn =
        std::function<void(std::span<const double> x, std::span<const double> a,
                           const EmpiricalMeasure& m, std::span<double> gx, std::span<double> ga)>;

    Fn evaluate;
    double c_h = 1.0;
    double truncation_radius = 8.0;
    // exact Lipschitz constant of p -> H^R when known; 0 falls back to the
    // generic bound C_H (1 + R)
    double momentum_lip = 0.0;
    bool convex = false;
    LagrangianFn lagrangian;
    LagrangianGradFn lagrangian_grad;
    std::string name;

    // H^R: the momentum projected onto the ball of radius R before evaluation
    double truncated(std::span<const double> x, std::span<const double> p,
                     const EmpiricalMeasure& m) const;
    double momentum_lipschitz() const {
        return momentum_lip > 0.0 ? momentum_lip : c_h * (1.0 + truncation_radius);
    }
};

// Terminal data G(m), bounded by c_g and d1-Lipschitz with constant c_g.
struct TerminalSpec {
    using Fn = std::function<double(const EmpiricalMeasure&)>;
    // gradient of x -> G(m^N_x) with respect to the particle array, flat N x d
    using GradFn = std::function<std::vector<double>(const EmpiricalMeasure&)>;

    Fn evaluate;
    double c_g = 1.0;
    GradFn grad_particles;  // empty when no analytic gradient is available
    std::string name;
};

struct ControlProblem {
    HamiltonianSpec hamiltonian;
    TerminalSpec terminal;
    double horizon = 1.0;
    double kappa = 0.0;
    std::size_t steps = 16;
    std::size_t particles = 1;
};

struct ValueReport {
    double value = 0.0;
    std::size_t iterations = 0;
    double grad_norm = 0.0;
    std::string method;  // fd | transcription | hopf-lax | heat | example-search
    bool converged = true;

    void require_finite() const;
};

// Built-in Hamiltonians, selectable by name from configuration files.
HamiltonianSpec hamiltonian_quadratic();                           // |p|^2 / 2, convex
HamiltonianSpec hamiltonian_abs();                                 // |p|, convex (no Lagrangian)
HamiltonianSpec hamiltonian_neg_abs();                             // -|p|, non-convex
HamiltonianSpec hamiltonian_nonconvex_sin(double a, double b);     // |p| + a sin(b p_1)
HamiltonianSpec hamiltonian_by_name(const std::string& name);

// Built-in terminal conditions.
TerminalSpec terminal_constant(double c);
// (1/N) sum g(x^i) for a scalar profile g with derivative dg
TerminalSpec terminal_mean_g(std::function<double(std::span<const double>)> g,
                             std::function<std::vector<double>(std::span<const double>)> dg,
                             double c_g, std::string name);
TerminalSpec terminal_mean_min_abs();   // g(x) = min(|x|, 1)
TerminalSpec terminal_mean_gauss();     // g(x) = exp(-|x|^2)
// min(d2(m, cloud), cap): distance to a sampled uniform cube, truncated
TerminalSpec terminal_w2_uniform(std::shared_ptr<const SampledMeasure> cloud, double cap);
// c * mean pairwise soft distance; an interacting, Lipschitz terminal
TerminalSpec terminal_pairwise(double c, double delta);
TerminalSpec terminal_by_name(const std::string& name);

} // namespace wlab::hjb
