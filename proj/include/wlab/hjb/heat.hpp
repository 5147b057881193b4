#pragma once

#include "wlab/hjb/problem.hpp"

namespace wlab::hjb {

// E[ G((Id + B_{T-t})_# m) ]: Monte-Carlo over mc_samples shared Gaussian
// shifts z ~ N(0, 2*kappa*(T-t) Id). kappa = 0 returns G(m) exactly. The
// shifts are a pure function of (seed, sample index), so two calls with the
// same seed see identical noise.
double heat_value(const TerminalSpec& g, const EmpiricalMeasure& m, double t, double horizon,
                  double kappa, std::size_t mc_samples, std::uint64_t seed);

// The N-particle route: shifts the particle array by the same shared z, then
// evaluates G on the resulting empirical measure. With a shared seed this is
// the identical functional, summand for summand.
double heat_value_particles(const TerminalSpec& g, const std::vector<double>& particles,
                            std::size_t dim, double t, double horizon, double kappa,
                            std::size_t mc_samples, std::uint64_t seed);

} // namespace wlab::hjb
