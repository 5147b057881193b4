#pragma once

#include <cstdint>
#include <vector>

#include "wlab/measure.hpp"

namespace wlab {

// Default instance cap for the O(N^3) exact assignment.
inline constexpr std::size_t kAssignmentCap = 4096;

// d_2 between two 1-D empirical measures with equal N: sort both (ties broken
// by original index) and pair ranks. Equals the minimum over permutations.
double w2_1d(const EmpiricalMeasure& a, const EmpiricalMeasure& b);

struct W2Result {
    double distance = 0.0;
    std::vector<std::int32_t> perm;  // b-index matched to each a-point
};

// Exact d_p (p in {1,2}) between equal-N empirical measures via assignment.
W2Result w2_assignment(const EmpiricalMeasure& a, const EmpiricalMeasure& b, int p = 2,
                       std::size_t cap = kAssignmentCap);

// d_p between equal-weight clouds of sizes N and M where one size divides the
// other; the smaller side takes capacity max/min. Exact for the two clouds.
double wp_clouds(const EmpiricalMeasure& a, const EmpiricalMeasure& b, int p = 2);

// d_2(m^N_a, cloud b) with M = k*N samples: each a-point receives exactly k
// samples. Upper-biased estimator of the semi-discrete distance to the
// sampled source, exact for the sample cloud itself.
double w2_semidiscrete(const EmpiricalMeasure& a, const SampledMeasure& b, int p = 2);

// Same transport but also reports, per a-point, the barycenter of the
// samples it receives (used by descent on distance terms).
struct SemidiscretePlan {
    double distance = 0.0;
    std::vector<double> site_barycenter;  // N x d, flat
};
SemidiscretePlan w2_semidiscrete_plan(const EmpiricalMeasure& a, const SampledMeasure& b);

} // namespace wlab
