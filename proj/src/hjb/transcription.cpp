#include "wlab/hjb/transcription.hpp"

#include <cmath>

#include "wlab/parallel.hpp"
#include "wlab/rng.hpp"

namespace wlab::hjb {

namespace {

struct Rollout {
    std::vector<double> states;  // (steps+1) x N x d
    double cost = 0.0;
};

void check_convex(const ControlProblem& prob) {
    if (!prob.hamiltonian.convex || !prob.hamiltonian.lagrangian)
        throw invalid_input(
            "solve_transcription: needs a convex Hamiltonian with a Lagrangian "
            "(the control representation is invalid otherwise)");
}

Rollout roll(const ControlProblem& prob, double t0, const EmpiricalMeasure& x0,
             std::span<const double> controls, std::span<const double> noise) {
    const std::size_t n = x0.size(), d = x0.dim(), steps = prob.steps;
    const double dt = (prob.horizon - t0) / double(steps);
    Rollout r;
    r.states.resize((steps + 1) * n * d);
    std::copy(x0.data().begin(), x0.data().end(), r.states.begin());

    double run_cost = 0.0;
    for (std::size_t s = 0; s < steps; ++s) {
        const double* xs = r.states.data() + s * n * d;
        EmpiricalMeasure ms(d, std::vector<double>(xs, xs + n * d));
        double stage = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            std::span<const double> xi{xs + i * d, d};
            std::span<const double> ai{controls.data() + (s * n + i) * d, d};
            stage += prob.hamiltonian.lagrangian(xi, ai, ms);
        }
        run_cost += dt * stage / double(n);
        double* xn = r.states.data() + (s + 1) * n * d;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < d; ++k) {
                double z = noise.empty() ? 0.0 : noise[s * d + k];
                xn[i * d + k] = xs[i * d + k] + dt * controls[(s * n + i) * d + k] + z;
            }
    }
    const double* xT = r.states.data() + steps * n * d;
    EmpiricalMeasure mT(d, std::vector<double>(xT, xT + n * d));
    r.cost = run_cost + prob.terminal.evaluate(mT);
    if (!std::isfinite(r.cost)) throw numeric_error("transcription: divergent rollout");
    return r;
}

} // namespace

double transcription_cost(const ControlProblem& prob, double t0, const EmpiricalMeasure& x0,
                          std::span<const double> controls, std::span<const double> noise) {
    check_convex(prob);
    if (controls.size() != prob.steps * x0.size() * x0.dim())
        throw invalid_input("transcription_cost: control grid has the wrong shape");
    return roll(prob, t0, x0, controls, noise).cost;
}

std::vector<double> transcription_gradient(const ControlProblem& prob, double t0,
                                           const EmpiricalMeasure& x0,
                                           std::span<const double> controls,
                                           std::span<const double> noise) {
    check_convex(prob);
    if (!prob.hamiltonian.lagrangian_grad || !prob.terminal.grad_particles)
        throw invalid_input("transcription_gradient: problem data lacks analytic gradients");
    const std::size_t n = x0.size(), d = x0.dim(), steps = prob.steps;
    const double dt = (prob.horizon - t0) / double(steps);

    Rollout r = roll(prob, t0, x0, controls, noise);

    const double* xT = r.states.data() + steps * n * d;
    EmpiricalMeasure mT(d, std::vector<double>(xT, xT + n * d));
    std::vector<double> lambda = prob.terminal.grad_particles(mT);  // N x d

    std::vector<double> grad(steps * n * d, 0.0);
    std::vector<double> gx(d), ga(d);
    for (std::size_t s = steps; s-- > 0;) {
        const double* xs = r.states.data() + s * n * d;
        EmpiricalMeasure ms(d, std::vector<double>(xs, xs + n * d));
        for (std::size_t i = 0; i < n; ++i) {
            std::span<const double> xi{xs + i * d, d};
            std::span<const double> ai{controls.data() + (s * n + i) * d, d};
            prob.hamiltonian.lagrangian_grad(xi, ai, ms, gx, ga);
            for (std::size_t k = 0; k < d; ++k) {
                grad[(s * n + i) * d + k] =
                    dt * (ga[k] / double(n) + lambda[i * d + k]);
                lambda[i * d + k] += dt * gx[k] / double(n);
            }
        }
    }
    return grad;
}

ValueReport solve_transcription(const ControlProblem& prob, double t0,
                                const EmpiricalMeasure& x0, const TranscriptionOptions& opts) {
    check_convex(prob);
    if (x0.size() != prob.particles)
        throw invalid_input("solve_transcription: x0 does not match the particle count");
    if (!(t0 < prob.horizon)) throw invalid_input("solve_transcription: t0 must precede T");
    const std::size_t n = x0.size(), d = x0.dim(), steps = prob.steps;
    const double dt = (prob.horizon - t0) / double(steps);
    const std::size_t dim_ctrl = steps * n * d;

    // shared-noise paths, fixed up front so the objective is deterministic
    std::vector<std::vector<double>> noise;
    if (prob.kappa > 0.0) {
        const double scale = std::sqrt(2.0 * prob.kappa * dt);
        noise.resize(opts.scenarios);
        for (std::size_t sc = 0; sc < opts.scenarios; ++sc) {
            CounterRng rng(opts.seed, 0xb000u + sc);
            noise[sc].resize(steps * d);
            for (auto& z : noise[sc]) z = scale * rng.next_normal();
        }
    }

    auto objective = [&](std::span<const double> alpha) {
        if (noise.empty()) return roll(prob, t0, x0, alpha, {}).cost;
        std::vector<double> vals(noise.size());
        par::parallel_for(noise.size(), [&](std::size_t sc) {
            vals[sc] = roll(prob, t0, x0, alpha, noise[sc]).cost;
        });
        double sum = 0.0;
        for (double v : vals) sum += v;
        return sum / double(noise.size());
    };
    auto gradient = [&](std::span<const double> alpha) {
        if (noise.empty()) return transcription_gradient(prob, t0, x0, alpha, {});
        std::vector<std::vector<double>> per(noise.size());
        par::parallel_for(noise.size(), [&](std::size_t sc) {
            per[sc] = transcription_gradient(prob, t0, x0, alpha, noise[sc]);
        });
        std::vector<double> g(dim_ctrl, 0.0);
        for (const auto& gs : per)
            for (std::size_t i = 0; i < dim_ctrl; ++i) g[i] += gs[i];
        for (auto& v : g) v /= double(noise.size());
        return g;
    };

    ValueReport best;
    best.method = "transcription";
    best.value = std::numeric_limits<double>::infinity();
    std::size_t total_iters = 0;

    for (std::size_t restart = 0; restart < std::max<std::size_t>(1, opts.restarts); ++restart) {
        std::vector<double> alpha(dim_ctrl, 0.0);
        if (restart > 0) {
            CounterRng rng(opts.seed, 0xc0de + restart);
            for (auto& a : alpha) a = opts.restart_scale * (2.0 * rng.next_double() - 1.0);
        }
        double value = objective(alpha);
        double best_value = value;
        double step = 1.0;
        double gnorm = 0.0;
        bool converged = false;
        std::size_t it = 0, subgrad_steps = 0;
        std::vector<double> trial(dim_ctrl);
        for (; it < opts.max_iters; ++it) {
            auto g = gradient(alpha);
            double g2 = 0.0;
            for (double v : g) g2 += v * v;
            gnorm = std::sqrt(g2);
            if (gnorm <= opts.grad_tol) { converged = true; break; }
            // backtracking line search on the Armijo condition
            bool accepted = false;
            for (int bt = 0; bt < 30; ++bt) {
                for (std::size_t i = 0; i < dim_ctrl; ++i) trial[i] = alpha[i] - step * g[i];
                double cand = objective(trial);
                if (cand <= value - 1e-4 * step * g2 && cand < value) {
                    alpha.swap(trial);
                    value = cand;
                    best_value = std::min(best_value, value);
                    step = std::min(step * 1.5, 1e3);
                    accepted = true;
                    break;
                }
                step *= 0.5;
            }
            if (!accepted) {
                // a kink blocks the line search; take a diminishing
                // subgradient step and keep the best value seen
                ++subgrad_steps;
                double s = 0.25 / (std::sqrt(double(subgrad_steps)) * std::max(gnorm, 1e-12));
                for (std::size_t i = 0; i < dim_ctrl; ++i) alpha[i] -= s * g[i];
                value = objective(alpha);
                best_value = std::min(best_value, value);
                step = 0.1;
            }
        }
        total_iters += it;
        value = std::min(value, best_value);
        if (value < best.value) {
            best.value = value;
            best.grad_norm = gnorm;
            best.converged = converged;
        }
    }
    best.iterations = total_iters;
    best.require_finite();
    return best;
}

} // namespace wlab::hjb
