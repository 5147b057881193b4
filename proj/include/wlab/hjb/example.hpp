#pragma once

#include "wlab/hjb/problem.hpp"

namespace wlab::hjb {

// Value of the quadratic-Hamiltonian model problem with terminal cost
// d2(., cloud) as a function of the distance D = d2(m, cloud) and the time:
// the infimum over the geodesic toward the cloud of (1-s) D + (s D)^2/(2 tau),
// tau = 1 - t, which closes to D - tau/2 when D >= tau and D^2/(2 tau) below.
double hopf_lax_example_value(double distance, double t);

// U(t, m) for the model problem, with the distance evaluated against the
// sample cloud. t must lie in [0, 1].
double hopf_lax_example_U(const EmpiricalMeasure& m, double t, const SampledMeasure& leb);

struct ExampleSearchOptions {
    std::size_t restarts = 3;
    std::size_t max_outer = 40;  // alternations between plans and placements
    double tol = 1e-10;
    std::uint64_t seed = 0;
    double jitter = 0.05;
};

// V^N(0, x0) for the model problem: minimize over particle placements y of
//   d2(m_y, cloud) + (1/2) d2^2(m_x0, m_y),
// alternating between exact transport plans and the exact minimization of the
// plan-frozen objective. An upper bound, nonincreasing in restarts.
ValueReport vn_example_value(const EmpiricalMeasure& x0, const SampledMeasure& leb,
                             const ExampleSearchOptions& opts = {});

} // namespace wlab::hjb
