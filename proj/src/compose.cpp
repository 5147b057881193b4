#include <algorithm>
#include <cmath>
#include <numeric>

#include "wlab/quantize.hpp"
#include "wlab/rng.hpp"

namespace wlab {

MergeResult merge_partitions(const RandomVariable& x,
                             std::span<const std::uint32_t> omega_hat,
                             std::span<const std::uint32_t> gamma,
                             const Partition& pi_hat, const Partition& pi_rem) {
    const std::size_t k = x.atoms();
    if (omega_hat.size() + gamma.size() != k)
        throw invalid_input("merge_partitions: subsets must cover the space");
    std::vector<char> seen(k, 0);
    for (auto a : omega_hat) {
        if (a >= k || seen[a]) throw invalid_input("merge_partitions: subsets overlap or overflow");
        seen[a] = 1;
    }
    for (auto a : gamma) {
        if (a >= k || seen[a]) throw invalid_input("merge_partitions: subsets overlap or overflow");
        seen[a] = 1;
    }
    if (pi_hat.space().atoms != omega_hat.size() || pi_rem.space().atoms != gamma.size())
        throw invalid_input("merge_partitions: sub-partition spaces do not match the subsets");

    const std::size_t n_hat = pi_hat.block_count();
    const std::size_t m = pi_rem.block_count();
    const std::size_t n = n_hat + m;
    if (k % n != 0 || omega_hat.size() != (k / n) * n_hat || gamma.size() != (k / n) * m)
        throw invalid_input("merge_partitions: mass bookkeeping violated");

    std::vector<std::vector<std::uint32_t>> blocks;
    blocks.reserve(n);
    for (std::size_t b = 0; b < n_hat; ++b) {
        std::vector<std::uint32_t> blk;
        blk.reserve(pi_hat.block_size());
        for (auto local : pi_hat.block(b)) blk.push_back(omega_hat[local]);
        blocks.push_back(std::move(blk));
    }
    for (std::size_t b = 0; b < m; ++b) {
        std::vector<std::uint32_t> blk;
        blk.reserve(pi_rem.block_size());
        for (auto local : pi_rem.block(b)) blk.push_back(gamma[local]);
        blocks.push_back(std::move(blk));
    }

    MergeResult out{Partition(x.space(), std::move(blocks)), 0.0, 0.0, 0.0, 0.0};
    out.rho_merged = rho(x, out.merged);
    out.rho_hat = rho(restrict_variable(x, omega_hat), pi_hat);
    out.rho_rem = rho(restrict_variable(x, gamma), pi_rem);
    out.rho_recombined = std::sqrt((double(n_hat) * out.rho_hat * out.rho_hat +
                                    double(m) * out.rho_rem * out.rho_rem) /
                                   double(n));
    return out;
}

NestedResult nested_partition(const RandomVariable& x, const RandomVariable& y,
                              std::size_t n1, std::size_t n2,
                              const QuantizeOptions& opts) {
    if (!(x.space() == y.space()))
        throw invalid_input("nested_partition: variables live on different spaces");
    const std::size_t k = x.atoms();
    if (n1 == 0 || n2 == 0 || k % (n1 * n2) != 0)
        throw invalid_input("nested_partition: atom count not divisible by N1*N2");

    auto coarse = balanced_quantize(x, n1, opts);

    std::vector<std::vector<std::uint32_t>> fine;
    fine.reserve(n1 * n2);
    double y_sq = 0.0;
    for (std::size_t i = 0; i < n1; ++i) {
        const auto& blk = coarse.partition.block(i);
        auto yi = restrict_variable(y, blk);
        QuantizeOptions sub = opts;
        sub.seed = CounterRng::mix(opts.seed ^ (0xb10cull + i));
        auto inner = balanced_quantize(yi, n2, sub);
        y_sq += inner.rho_value * inner.rho_value;
        for (std::size_t b = 0; b < n2; ++b) {
            std::vector<std::uint32_t> sub_blk;
            sub_blk.reserve(inner.partition.block_size());
            for (auto local : inner.partition.block(b)) sub_blk.push_back(blk[local]);
            fine.push_back(std::move(sub_blk));
        }
    }

    NestedResult out{Partition(x.space(), std::move(fine)), 0.0, 0.0, 0.0, 0.0};
    out.rho_x = rho(x, out.partition);
    out.rho_y = rho(y, out.partition);
    out.rho_x_coarse = coarse.rho_value;
    out.rho_y_decomposed = std::sqrt(y_sq / double(n1));
    return out;
}

std::size_t floor_pow(std::size_t n, double a) {
    double z = std::pow(double(n), a);
    // guard: pow can land infinitesimally below an exact integer
    return static_cast<std::size_t>(std::floor(z + 1e-12 * std::max(1.0, z)));
}

SimultaneousResult simultaneous_quantize(const RandomVariable& x, const RandomVariable& y,
                                         std::size_t n, double alpha,
                                         const QuantizeOptions& opts) {
    if (!(x.space() == y.space()))
        throw invalid_input("simultaneous_quantize: variables live on different spaces");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw invalid_input("simultaneous_quantize: alpha must lie in (0,1)");
    const std::size_t k = x.atoms();
    if (n == 0 || k % n != 0)
        throw invalid_input("simultaneous_quantize: atom count not divisible by N");

    const std::size_t n1 = floor_pow(n, alpha);
    const std::size_t n2 = floor_pow(n, 1.0 - alpha);
    const std::size_t n_hat = n1 * n2;
    if (n_hat == 0 || n_hat > n)
        throw invalid_input("simultaneous_quantize: floor(N^a)*floor(N^(1-a)) exceeds N");
    const std::size_t m = n - n_hat;

    if (m == 0) {
        auto nested = nested_partition(x, y, n1, n2, opts);
        return {std::move(nested.partition), nested.rho_x, nested.rho_y, n1, n2, 0};
    }

    // Split the atoms into the nested part and the remainder by a seeded
    // shuffle, so neither part is biased toward one corner of the index space.
    std::vector<std::uint32_t> order(k);
    std::iota(order.begin(), order.end(), 0u);
    CounterRng rng(opts.seed, 0x5411);
    for (std::size_t i = k - 1; i > 0; --i) {
        std::size_t j = static_cast<std::size_t>(rng.next_below(i + 1));
        std::swap(order[i], order[j]);
    }
    const std::size_t hat_atoms = (k / n) * n_hat;
    std::vector<std::uint32_t> omega_hat(order.begin(), order.begin() + hat_atoms);
    std::vector<std::uint32_t> gamma(order.begin() + hat_atoms, order.end());

    auto x_hat = restrict_variable(x, omega_hat);
    auto y_hat = restrict_variable(y, omega_hat);
    QuantizeOptions hat_opts = opts;
    hat_opts.seed = CounterRng::mix(opts.seed ^ 0xa11ce);
    auto nested = nested_partition(x_hat, y_hat, n1, n2, hat_opts);

    auto x_rem = restrict_variable(x, gamma);
    QuantizeOptions rem_opts = opts;
    rem_opts.seed = CounterRng::mix(opts.seed ^ 0xcafe);
    auto rem = balanced_quantize(x_rem, m, rem_opts);

    auto merged = merge_partitions(x, omega_hat, gamma, nested.partition, rem.partition);

    SimultaneousResult out{std::move(merged.merged), 0.0, 0.0, n1, n2, m};
    out.rho_x = merged.rho_merged;
    out.rho_y = rho(y, out.partition);
    return out;
}

} // namespace wlab
