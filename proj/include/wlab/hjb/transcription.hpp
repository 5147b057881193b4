#pragma once

#include "wlab/hjb/problem.hpp"

namespace wlab::hjb {

struct TranscriptionOptions {
    std::size_t max_iters = 400;
    double grad_tol = 1e-7;
    std::size_t restarts = 1;     // restart 0 starts from zero controls
    double restart_scale = 0.5;   // magnitude of random initial controls
    std::size_t scenarios = 64;   // shared-noise paths when kappa > 0
    std::uint64_t seed = 0;
};

// Rollout cost of a fixed control grid (steps x N x d, flat) from (t0, x0),
// optionally under one shared-noise path (per-step increments, each d-dim).
double transcription_cost(const ControlProblem& prob, double t0, const EmpiricalMeasure& x0,
                          std::span<const double> controls,
                          std::span<const double> noise_increments = {});

// Adjoint (backward) gradient of the rollout cost with respect to the
// controls; same flat layout as `controls`.
std::vector<double> transcription_gradient(const ControlProblem& prob, double t0,
                                           const EmpiricalMeasure& x0,
                                           std::span<const double> controls,
                                           std::span<const double> noise_increments = {});

// Direct transcription of the N-particle control problem: forward Euler
// rollout, adjoint gradient, backtracking descent, best over restarts.
// kappa = 0 is deterministic; kappa > 0 averages the cost over `scenarios`
// shared Brownian paths with one deterministic open-loop control, which
// upper-bounds the value (deterministic controls are a subset of adapted
// ones, up to the Monte-Carlo error in the average).
ValueReport solve_transcription(const ControlProblem& prob, double t0,
                                const EmpiricalMeasure& x0,
                                const TranscriptionOptions& opts = {});

} // namespace wlab::hjb
