#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "wlab/prob.hpp"

namespace wlab {

struct QuantizeOptions {
    std::size_t restarts = 5;
    std::size_t max_iters = 60;
    std::uint64_t seed = 0;
    double tol = 1e-10;  // relative objective improvement below which we stop
    // The exact transport kernel costs ~ N*K^2 operations per assignment;
    // above this budget the greedy + pairwise-swap refinement takes over.
    double exact_ops_cap = 1.5e8;
    std::size_t swap_passes = 6;
    bool parallel_restarts = true;
};

struct QuantizeResult {
    Partition partition;
    double rho_value = 0.0;
    std::size_t iterations = 0;
    std::size_t restarts_used = 0;
    bool budget_exhausted = false;   // stopped by max_iters, not by the tolerance
    bool exact_assignment = true;    // all assignment steps used an exact kernel
};

// Balanced Lloyd iteration: alternate (i) equal-size assignment of atoms to N
// centroids, (ii) centroid = block mean. The objective never increases across
// iterations; the best of `restarts` seeded initializations is returned.
QuantizeResult balanced_quantize(const RandomVariable& x, std::size_t n,
                                 const QuantizeOptions& opts = {});

// Block means of a partition, as an N-point configuration.
EmpiricalMeasure codebook(const RandomVariable& x, const Partition& pi);

// Upper bound on the constrained quantization error e_N(m): lift m to a
// random variable (quantile rearrangement in 1-D, atom-per-sample otherwise),
// quantize, return rho. `space` fixes the atom count; for d >= 2 the atom
// count must be a multiple of the sample count (samples are replicated).
struct EnEstimate {
    double value = 0.0;
    EmpiricalMeasure configuration;  // the N-point codebook realizing the bound
    QuantizeResult detail;
};
EnEstimate e_n_estimate(const EmpiricalMeasure& m, std::size_t n, AtomSpace space,
                        const QuantizeOptions& opts = {});
EnEstimate e_n_estimate(const SampledMeasure& m, std::size_t n, AtomSpace space,
                        const QuantizeOptions& opts = {});

// Concatenation of an N̂-partition of a sub-space and an M-partition of its
// complement, with the exact mass-weighted recombination of the two rho's.
struct MergeResult {
    Partition merged;
    double rho_merged = 0.0;      // computed directly on the full space
    double rho_recombined = 0.0;  // sqrt((N̂/N) rho_hat^2 + (M/N) rho_rem^2)
    double rho_hat = 0.0;
    double rho_rem = 0.0;
};
MergeResult merge_partitions(const RandomVariable& x,
                             std::span<const std::uint32_t> omega_hat,
                             std::span<const std::uint32_t> gamma,
                             const Partition& pi_hat, const Partition& pi_rem);

// Two-level construction: quantize X into N1 blocks, then quantize Y inside
// each block into N2 sub-blocks. The refinement can only decrease rho for X,
// and rho(Y, result)^2 decomposes exactly over the coarse blocks.
struct NestedResult {
    Partition partition;
    double rho_x = 0.0;
    double rho_y = 0.0;
    double rho_x_coarse = 0.0;      // rho of X against the N1-partition
    double rho_y_decomposed = 0.0;  // sqrt((1/N1) sum_i rho_{N2}(Y|block_i)^2)
};
NestedResult nested_partition(const RandomVariable& x, const RandomVariable& y,
                              std::size_t n1, std::size_t n2,
                              const QuantizeOptions& opts = {});

// floor(N^a) guarded against the power landing a hair below an integer.
std::size_t floor_pow(std::size_t n, double a);

// One partition controlling both variables: N̂ = floor(N^alpha)*floor(N^(1-alpha))
// of the mass handled by the nested construction, the remainder M = N - N̂
// quantizes X alone, glued by merge_partitions.
struct SimultaneousResult {
    Partition partition;
    double rho_x = 0.0;
    double rho_y = 0.0;
    std::size_t n1 = 0, n2 = 0;  // floor(N^alpha), floor(N^(1-alpha))
    std::size_t remainder = 0;   // M = N - n1*n2
};
SimultaneousResult simultaneous_quantize(const RandomVariable& x, const RandomVariable& y,
                                         std::size_t n, double alpha,
                                         const QuantizeOptions& opts = {});

} // namespace wlab
