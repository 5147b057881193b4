#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "wlab/quantize.hpp"
#include "wlab/rate.hpp"
#include "wlab/rng.hpp"

using namespace wlab;

namespace {

RandomVariable uniform_grid_rv(std::size_t k) {
    std::vector<double> vals(k);
    for (std::size_t i = 0; i < k; ++i) vals[i] = (double(i) + 0.5) / double(k);
    return {AtomSpace(k), 1, std::move(vals)};
}

RandomVariable random_rv(std::size_t atoms, std::size_t dim, CounterRng& rng, double scale = 1.0) {
    std::vector<double> v(atoms * dim);
    for (auto& x : v) x = scale * rng.next_double();
    return {AtomSpace(atoms), dim, std::move(v)};
}

} // namespace

TEST_CASE("balanced_quantize recovers a block-constant variable") {
    // 4 distinct values, 3 atoms each
    std::vector<double> vals;
    for (double c : {0.0, 1.0, 5.0, -2.0}) vals.insert(vals.end(), 3, c);
    RandomVariable x(AtomSpace(12), 1, std::move(vals));
    QuantizeOptions opts;
    opts.seed = 3;
    auto q = balanced_quantize(x, 4, opts);
    CHECK(q.rho_value == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(q.restarts_used == 5);
    // the result's rho is the recomputed partition rho
    CHECK(q.rho_value == doctest::Approx(rho(x, q.partition)).epsilon(1e-12));
}

TEST_CASE("balanced_quantize on the 1-D uniform variable hits the regular value") {
    const std::size_t k = 1024;
    auto x = uniform_grid_rv(k);
    for (std::size_t n : {4, 16, 64}) {
        QuantizeOptions opts;
        opts.seed = 11;
        auto q = balanced_quantize(x, n, opts);
        double regular = rho(x, regular_partition(AtomSpace(k), n));
        CHECK(q.rho_value <= regular * (1.0 + 1e-9));
        CHECK(q.rho_value >= regular * (1.0 - 1e-9));  // contiguous blocks are optimal here
        CHECK(q.exact_assignment);
    }
}

TEST_CASE("balanced_quantize on the uniform cube, N = 8 half-side subcubes") {
    auto cloud = SampledMeasure::uniform_cube_grid(3, 12);
    auto est = e_n_estimate(cloud, 8, AtomSpace(cloud.size()), {.restarts = 5, .seed = 17});
    CHECK(est.value <= 0.25 * (1.0 + 1e-6));
    CHECK(est.value >= 0.2);
    CHECK(est.configuration.size() == 8);
}

TEST_CASE("balanced_quantize contracts and is deterministic") {
    CounterRng rng(73, 0);
    auto x = random_rv(48, 2, rng);
    QuantizeOptions opts;
    opts.seed = 5;
    auto a = balanced_quantize(x, 6, opts);
    auto b = balanced_quantize(x, 6, opts);
    CHECK(a.rho_value == b.rho_value);  // bit-identical reruns
    CHECK(a.iterations == b.iterations);

    CHECK_THROWS_AS(balanced_quantize(x, 5, opts), invalid_input);
}

TEST_CASE("scale equivariance of the quantizer") {
    CounterRng rng(79, 0);
    auto x = random_rv(24, 2, rng);
    std::vector<double> scaled = x.values();
    for (auto& v : scaled) v *= 3.0;
    RandomVariable x3(x.space(), 2, std::move(scaled));
    QuantizeOptions opts;
    opts.seed = 7;
    auto qa = balanced_quantize(x, 4, opts);
    auto qb = balanced_quantize(x3, 4, opts);
    CHECK(qb.rho_value == doctest::Approx(3.0 * qa.rho_value).epsilon(1e-9));
    CHECK(rho(x3, qa.partition) == doctest::Approx(3.0 * rho(x, qa.partition)).epsilon(1e-12));
}

TEST_CASE("heuristic route stays close to the exact route") {
    CounterRng rng(83, 0);
    auto x = random_rv(96, 2, rng);
    QuantizeOptions exact;
    exact.seed = 9;
    auto qe = balanced_quantize(x, 8, exact);
    QuantizeOptions heur = exact;
    heur.exact_ops_cap = 0;  // force greedy + swaps
    heur.swap_passes = 8;
    auto qh = balanced_quantize(x, 8, heur);
    CHECK(qe.exact_assignment);
    CHECK_FALSE(qh.exact_assignment);
    CHECK(qh.rho_value >= qe.rho_value - 1e-12);
    CHECK(qh.rho_value <= qe.rho_value * 1.10);
}

TEST_CASE("e_n_estimate basics") {
    // a Dirac needs one atom only
    EmpiricalMeasure dirac(2, {0.3, -0.4});
    auto est = e_n_estimate(dirac, 1, AtomSpace(6), {.restarts = 1, .seed = 1});
    CHECK(est.value == doctest::Approx(0.0));

    // uniform [0,1] with N = 1: the standard deviation 1/sqrt(12)
    EmpiricalMeasure grid(1, SampledMeasure::uniform_cube_grid(1, 512).data());
    auto est1 = e_n_estimate(grid, 1, AtomSpace(512), {.restarts = 1, .seed = 1});
    CHECK(est1.value == doctest::Approx(1.0 / std::sqrt(12.0)).epsilon(1e-4));
}

TEST_CASE("merge identity: worked example") {
    // sub-space values (0,4,0,4) with blocks {0,2},{1,3}: rho_hat = 0
    // remainder (1,3) in one block: rho_rem = 1; masses 2/3 and 1/3
    RandomVariable x(AtomSpace(6), 1, {0, 4, 0, 4, 1, 3});
    std::vector<std::uint32_t> omega_hat{0, 1, 2, 3}, gamma{4, 5};
    Partition pi_hat(AtomSpace(4), {{0, 2}, {1, 3}});
    Partition pi_rem(AtomSpace(2), {{0, 1}});
    auto merged = merge_partitions(x, omega_hat, gamma, pi_hat, pi_rem);
    CHECK(merged.rho_hat == doctest::Approx(0.0));
    CHECK(merged.rho_rem == doctest::Approx(1.0));
    CHECK(merged.rho_merged == doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-12));
    CHECK(merged.rho_recombined == doctest::Approx(merged.rho_merged).epsilon(1e-12));

    // both sides block-constant -> zero
    RandomVariable flat(AtomSpace(6), 1, {2, 2, 2, 2, 3, 3});
    auto z = merge_partitions(flat, omega_hat, gamma, pi_hat, pi_rem);
    CHECK(z.rho_merged == doctest::Approx(0.0));
}

TEST_CASE("merge identity on random instances") {
    CounterRng rng(89, 0);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n_hat = 2 + trial % 3, m = 1 + trial % 2;
        const std::size_t n = n_hat + m, block = 2 + trial % 2;
        const std::size_t k = n * block;
        auto x = random_rv(k, 2, rng, 4.0);

        std::vector<std::uint32_t> order(k);
        std::iota(order.begin(), order.end(), 0u);
        for (std::size_t i = k - 1; i > 0; --i)
            std::swap(order[i], order[rng.next_below(i + 1)]);
        std::vector<std::uint32_t> omega_hat(order.begin(), order.begin() + n_hat * block);
        std::vector<std::uint32_t> gamma(order.begin() + n_hat * block, order.end());

        auto pi_hat = regular_partition(AtomSpace(n_hat * block), n_hat);
        auto pi_rem = regular_partition(AtomSpace(m * block), m);
        auto merged = merge_partitions(x, omega_hat, gamma, pi_hat, pi_rem);
        CHECK(merged.rho_merged == doctest::Approx(merged.rho_recombined).epsilon(1e-12));
    }
}

TEST_CASE("merge validation") {
    RandomVariable x(AtomSpace(6), 1, {0, 1, 2, 3, 4, 5});
    Partition pi_hat(AtomSpace(4), {{0, 2}, {1, 3}});
    Partition pi_rem(AtomSpace(2), {{0, 1}});
    std::vector<std::uint32_t> overlap{0, 1, 2, 3}, gamma_bad{3, 5};
    CHECK_THROWS_AS(merge_partitions(x, overlap, gamma_bad, pi_hat, pi_rem), invalid_input);
    // mass bookkeeping: 4 atoms over 2 blocks and 2 atoms over 2 blocks is
    // unequal block sizes on the full space
    Partition rem2(AtomSpace(2), {{0}, {1}});
    std::vector<std::uint32_t> omega_hat{0, 1, 2, 3}, gamma{4, 5};
    CHECK_THROWS_AS(merge_partitions(x, omega_hat, gamma, pi_hat, rem2), invalid_input);
}

TEST_CASE("nested partition identities") {
    CounterRng rng(97, 0);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t n1 = 2 + trial % 2, n2 = 2 + trial % 3;
        const std::size_t k = n1 * n2 * (2 + trial % 2);
        auto x = random_rv(k, 2, rng);
        auto y = random_rv(k, 2, rng);
        QuantizeOptions opts;
        opts.seed = 100 + trial;
        opts.restarts = 2;
        auto nested = nested_partition(x, y, n1, n2, opts);
        CHECK(nested.partition.block_count() == n1 * n2);
        // refinement contraction for X
        CHECK(nested.rho_x <= nested.rho_x_coarse + 1e-12);
        // exact decomposition for Y
        CHECK(nested.rho_y == doctest::Approx(nested.rho_y_decomposed).epsilon(1e-12));
    }
}

TEST_CASE("nested with constant second variable") {
    CounterRng rng(101, 0);
    auto x = random_rv(24, 1, rng);
    RandomVariable y(AtomSpace(24), 1, std::vector<double>(24, 3.25));
    auto nested = nested_partition(x, y, 3, 2, {.restarts = 2, .seed = 5});
    CHECK(nested.rho_y == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("floor_pow guards against near-integer powers") {
    CHECK(floor_pow(512, 0.3) == 6);
    CHECK(floor_pow(512, 0.7) == 78);
    for (std::size_t n = 2; n <= 60; ++n) CHECK(floor_pow(n * n, 0.5) == n);
    CHECK(floor_pow(1000, 1.0 / 3.0) == 10);
    CHECK(floor_pow(3375, 1.0 / 3.0) == 15);
}

TEST_CASE("simultaneous quantization reduces to nested when the split is perfect") {
    CounterRng rng(103, 0);
    auto x = random_rv(64, 2, rng);
    auto y = random_rv(64, 2, rng);
    QuantizeOptions opts;
    opts.seed = 21;
    opts.restarts = 2;
    auto sim = simultaneous_quantize(x, y, 16, 0.5, opts);  // 4*4 = 16, M = 0
    CHECK(sim.remainder == 0);
    CHECK(sim.n1 == 4);
    CHECK(sim.n2 == 4);
    auto nested = nested_partition(x, y, 4, 4, opts);
    CHECK(sim.rho_x == doctest::Approx(nested.rho_x));
    CHECK(sim.rho_y == doctest::Approx(nested.rho_y));
}

TEST_CASE("simultaneous quantization handles a remainder") {
    CounterRng rng(107, 0);
    const std::size_t k = 240;  // divisible by 12
    auto x = random_rv(k, 2, rng);
    auto y = random_rv(k, 2, rng);
    QuantizeOptions opts;
    opts.seed = 23;
    opts.restarts = 2;
    auto sim = simultaneous_quantize(x, y, 12, 0.4, opts);
    // floor(12^0.4) = 2, floor(12^0.6) = 4, remainder 12 - 8 = 4
    CHECK(sim.n1 == 2);
    CHECK(sim.n2 == 4);
    CHECK(sim.remainder == 4);
    CHECK(sim.partition.block_count() == 12);
    CHECK(sim.rho_x > 0.0);
    CHECK(sim.rho_y > 0.0);
    // remainder quantizes X only; Y is merely bounded there
    CHECK(sim.rho_y <= 2.0 * y.sup_norm());
}

TEST_CASE("restart reduction is execution-policy invariant") {
    CounterRng rng(223, 0);
    auto x = random_rv(96, 3, rng);
    QuantizeOptions serial;
    serial.seed = 41;
    serial.parallel_restarts = false;
    QuantizeOptions parallel = serial;
    parallel.parallel_restarts = true;
    auto a = balanced_quantize(x, 8, serial);
    auto b = balanced_quantize(x, 8, parallel);
    CHECK(a.rho_value == b.rho_value);  // bitwise across policies
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("nested on identical variables is consistent") {
    CounterRng rng(109, 0);
    auto x = random_rv(36, 2, rng);
    QuantizeOptions opts;
    opts.seed = 33;
    opts.restarts = 2;
    auto a = nested_partition(x, x, 3, 2, opts);
    auto b = nested_partition(x, x, 3, 2, opts);
    CHECK(a.rho_x == b.rho_x);  // deterministic given the seed
    CHECK(a.rho_y == b.rho_y);
    CHECK(a.rho_y == doctest::Approx(rho(x, a.partition)).epsilon(1e-12));
}

TEST_CASE("more restarts never hurt the estimate") {
    CounterRng rng(211, 0);
    std::vector<double> pts(64 * 2);
    for (auto& v : pts) v = rng.next_double();
    EmpiricalMeasure m(2, pts);
    QuantizeOptions one;
    one.restarts = 1;
    one.seed = 77;
    QuantizeOptions five;
    five.restarts = 5;
    five.seed = 77;
    double v1 = e_n_estimate(m, 8, AtomSpace(64), one).value;
    double v5 = e_n_estimate(m, 8, AtomSpace(64), five).value;
    CHECK(v5 <= v1 + 1e-15);
}

TEST_CASE("rate table CSV carries the canonical header") {
    RateTable table;
    table.rows = {{2, 0.5, 0.7071}, {4, 0.25, 0.5}};
    auto csv = table.to_csv();
    CHECK(csv.rfind("N,error,reference_rate\n", 0) == 0);
    CHECK(csv.find("0.25") != std::string::npos);
}

TEST_CASE("rate_fit on synthetic tables") {
    std::vector<RateRow> rows;
    for (std::size_t n : {2, 4, 8, 16, 32})
        rows.push_back({double(n), 3.0 / std::sqrt(double(n)), 0.0});
    auto fit = rate_fit(rows);
    CHECK(fit.slope == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(fit.constant == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(1.0));

    std::vector<RateRow> flat;
    for (std::size_t n : {2, 4, 8}) flat.push_back({double(n), 0.7, 0.0});
    CHECK(rate_fit(flat).slope == doctest::Approx(0.0));

    std::vector<RateRow> bad = {{2, 1.0, 0}, {4, -1.0, 0}, {8, 1.0, 0}};
    CHECK_THROWS_AS(rate_fit(bad), invalid_input);
    std::vector<RateRow> short_rows = {{2, 1.0, 0}, {4, 0.5, 0}};
    CHECK_THROWS_AS(rate_fit(short_rows), invalid_input);
}

TEST_CASE("reference rates") {
    CHECK(reference_rate(16, 1) == doctest::Approx(0.25));
    CHECK(reference_rate(8, 3) == doctest::Approx(0.5));
    CHECK(reference_rate(4, 2) == doctest::Approx(std::sqrt(std::log(5.0) / 4.0)));
}

TEST_CASE("1-D rate sweep has slope near -1 for the uniform measure") {
    EmpiricalMeasure grid(1, SampledMeasure::uniform_cube_grid(1, 1152).data());
    std::vector<RateRow> rows;
    for (std::size_t n : {2, 4, 8, 16, 32}) {
        auto est = e_n_estimate(grid, n, AtomSpace(1152), {.restarts = 2, .seed = 31});
        rows.push_back({double(n), est.value, reference_rate(n, 1)});
    }
    auto fit = rate_fit(rows);
    CHECK(fit.slope == doctest::Approx(-1.0).epsilon(0.02));
    CHECK(fit.r_squared >= 0.999);
}
