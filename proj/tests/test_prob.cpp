#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wlab/prob.hpp"
#include "wlab/prob_io.hpp"
#include "wlab/wasserstein.hpp"

using namespace wlab;

namespace {

RandomVariable rv1(std::vector<double> vals) {
    AtomSpace space(vals.size());
    return {space, 1, std::move(vals)};
}

RandomVariable random_rv(std::size_t atoms, std::size_t dim, CounterRng& rng) {
    std::vector<double> v(atoms * dim);
    for (auto& x : v) x = 2.0 * rng.next_double() - 1.0;
    return {AtomSpace(atoms), dim, std::move(v)};
}

} // namespace

TEST_CASE("lp_norm basics") {
    auto zero = rv1({0, 0, 0, 0});
    CHECK(lp_norm(zero, Lp::l1) == doctest::Approx(0.0));
    CHECK(lp_norm(zero, Lp::l2) == doctest::Approx(0.0));
    CHECK(lp_norm(zero, Lp::linf) == doctest::Approx(0.0));

    RandomVariable constant(AtomSpace(3), 2, {1.5, -2.0, 1.5, -2.0, 1.5, -2.0});
    double c = std::sqrt(1.5 * 1.5 + 4.0);
    CHECK(lp_norm(constant, Lp::l1) == doctest::Approx(c));
    CHECK(lp_norm(constant, Lp::l2) == doctest::Approx(c));
    CHECK(lp_norm(constant, Lp::linf) == doctest::Approx(c));

    auto two = rv1({0.0, 2.0});
    CHECK(lp_norm(two, Lp::l2) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("cond_exp block means") {
    auto x = rv1({0, 0, 2, 2});
    Partition pi(AtomSpace(4), {{0, 2}, {1, 3}});
    auto e = cond_exp(x, pi);
    for (std::size_t a = 0; a < 4; ++a) CHECK(e.value(a)[0] == doctest::Approx(1.0));

    // block-constant input is a fixed point
    auto blocky = rv1({5, 7, 5, 7});
    auto e2 = cond_exp(blocky, pi);
    for (std::size_t a = 0; a < 4; ++a) CHECK(e2.value(a)[0] == doctest::Approx(blocky.value(a)[0]));

    // finest partition reproduces the variable
    auto fine = regular_partition(AtomSpace(4), 4);
    auto e3 = cond_exp(x, fine);
    for (std::size_t a = 0; a < 4; ++a) CHECK(e3.value(a)[0] == x.value(a)[0]);

    Partition other(AtomSpace(6), {{0, 1, 2}, {3, 4, 5}});
    CHECK_THROWS_AS(cond_exp(x, other), invalid_input);
}

TEST_CASE("cond_exp is idempotent, mean preserving, a contraction") {
    CounterRng rng(41, 0);
    for (int trial = 0; trial < 10; ++trial) {
        auto x = random_rv(12, 2, rng);
        Partition pi = regular_partition(AtomSpace(12), 3);
        auto e = cond_exp(x, pi);
        auto ee = cond_exp(e, pi);
        for (std::size_t a = 0; a < 12; ++a)
            for (std::size_t k = 0; k < 2; ++k)
                CHECK(ee.value(a)[k] == doctest::Approx(e.value(a)[k]).epsilon(1e-14));
        // global mean unchanged
        for (std::size_t k = 0; k < 2; ++k) {
            double mx = 0, me = 0;
            for (std::size_t a = 0; a < 12; ++a) {
                mx += x.value(a)[k];
                me += e.value(a)[k];
            }
            CHECK(me == doctest::Approx(mx).epsilon(1e-12));
        }
        for (Lp p : {Lp::l1, Lp::l2, Lp::linf})
            CHECK(lp_norm(e, p) <= lp_norm(x, p) + 1e-12);
    }
}

TEST_CASE("rho examples") {
    auto x = rv1({0, 0, 2, 2});
    Partition pi(AtomSpace(4), {{0, 2}, {1, 3}});
    CHECK(rho(x, pi) == doctest::Approx(1.0));  // every deviation is +-1

    auto blocky = rv1({5, 7, 5, 7});
    CHECK(rho(blocky, pi) == doctest::Approx(0.0));
}

TEST_CASE("rho of the uniform variable under the regular partition") {
    const std::size_t k = 4096;
    std::vector<double> vals(k);
    for (std::size_t i = 0; i < k; ++i) vals[i] = (double(i) + 0.5) / double(k);
    RandomVariable x(AtomSpace(k), 1, std::move(vals));
    for (std::size_t n : {4, 16, 64}) {
        auto pi = regular_partition(AtomSpace(k), n);
        double expected = 1.0 / (2.0 * std::sqrt(3.0) * double(n));
        // atomization shrinks the block variance by the factor 1 - (n/K)^2
        double exact = expected * std::sqrt(1.0 - std::pow(double(n) / double(k), 2));
        CHECK(rho(x, pi) == doctest::Approx(exact).epsilon(1e-12));
        CHECK(rho(x, pi) == doctest::Approx(expected).epsilon(1e-4));
    }
}

TEST_CASE("rho is the minimum over embedded configurations") {
    CounterRng rng(43, 0);
    auto x = random_rv(12, 2, rng);
    Partition pi = regular_partition(AtomSpace(12), 4);
    double r = rho(x, pi);
    // any configuration does no better than the block means
    for (int trial = 0; trial < 50; ++trial) {
        auto y = oracle::random_measure(4, 2, rng);
        auto diff_sq = [&] {
            auto e = embed(y, pi);
            double s = 0.0;
            for (std::size_t a = 0; a < 12; ++a)
                s += squared_distance(x.value(a), e.value(a));
            return std::sqrt(s / 12.0);
        }();
        CHECK(diff_sq >= r - 1e-12);
    }
    // perturbing the block means does no better either
    auto means = cond_exp(x, pi);
    EmpiricalMeasure base(2, {means.value(pi.block(0)[0])[0], means.value(pi.block(0)[0])[1],
                             means.value(pi.block(1)[0])[0], means.value(pi.block(1)[0])[1],
                             means.value(pi.block(2)[0])[0], means.value(pi.block(2)[0])[1],
                             means.value(pi.block(3)[0])[0], means.value(pi.block(3)[0])[1]});
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> data = base.data();
        for (auto& v : data) v += 0.05 * (2.0 * rng.next_double() - 1.0);
        auto e = embed(EmpiricalMeasure(2, data), pi);
        double s = 0.0;
        for (std::size_t a = 0; a < 12; ++a) s += squared_distance(x.value(a), e.value(a));
        CHECK(std::sqrt(s / 12.0) >= r - 1e-12);
    }
}

TEST_CASE("embed identities") {
    EmpiricalMeasure x(1, {3.0, -1.0});
    Partition pi(AtomSpace(4), {{0, 3}, {1, 2}});
    auto e = embed(x, pi);
    CHECK(e.value(0)[0] == 3.0);
    CHECK(e.value(3)[0] == 3.0);
    CHECK(e.value(1)[0] == -1.0);

    Partition one(AtomSpace(4), {{0, 1, 2, 3}});
    EmpiricalMeasure single(1, {2.5});
    auto c = embed(single, one);
    for (std::size_t a = 0; a < 4; ++a) CHECK(c.value(a)[0] == 2.5);

    CHECK_THROWS_AS(embed(x, one), invalid_input);

    // || embed(x) - embed(y) ||_2^2 = (1/N) sum |x_i - y_i|^2
    CounterRng rng(47, 0);
    auto a = oracle::random_measure(4, 3, rng);
    auto b = oracle::random_measure(4, 3, rng);
    auto pi12 = regular_partition(AtomSpace(12), 4);
    auto ea = embed(a, pi12), eb = embed(b, pi12);
    double lhs = 0.0;
    for (std::size_t atom = 0; atom < 12; ++atom)
        lhs += squared_distance(ea.value(atom), eb.value(atom));
    lhs /= 12.0;
    double rhs = 0.0;
    for (std::size_t i = 0; i < 4; ++i) rhs += squared_distance(a.point(i), b.point(i));
    rhs /= 4.0;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("law and the coupling inequality") {
    RandomVariable constant(AtomSpace(5), 2, std::vector<double>(10, 0.7));
    auto m = law(constant);
    EmpiricalMeasure dirac(2, {0.7, 0.7});
    CHECK(wp_clouds(m, dirac, 2) == doctest::Approx(0.0));

    CounterRng rng(53, 0);
    for (int trial = 0; trial < 10; ++trial) {
        auto x = random_rv(8, 2, rng);
        auto y = random_rv(8, 2, rng);
        double direct = 0.0;
        for (std::size_t a = 0; a < 8; ++a)
            direct += squared_distance(x.value(a), y.value(a));
        direct = std::sqrt(direct / 8.0);
        double d2 = w2_assignment(law(x), law(y)).distance;
        CHECK(direct >= d2 - 1e-12);
    }
}

TEST_CASE("quantile_rv inverts the CDF") {
    EmpiricalMeasure half(1, {0.0, 1.0});
    auto x = quantile_rv(half, AtomSpace(8));
    for (std::size_t a = 0; a < 4; ++a) CHECK(x.value(a)[0] == 0.0);
    for (std::size_t a = 4; a < 8; ++a) CHECK(x.value(a)[0] == 1.0);

    // grid measure reproduces itself, and the law is preserved
    std::vector<double> grid(16);
    for (std::size_t i = 0; i < 16; ++i) grid[i] = (double(i) + 0.5) / 16.0;
    EmpiricalMeasure gm(1, grid);
    auto gx = quantile_rv(gm, AtomSpace(16));
    CHECK(w2_1d(law(gx), gm) == doctest::Approx(0.0));
    for (std::size_t a = 1; a < 16; ++a) CHECK(gx.value(a)[0] >= gx.value(a - 1)[0]);

    EmpiricalMeasure planar(2, {0, 0, 1, 1});
    CHECK_THROWS_AS(quantile_rv(planar, AtomSpace(4)), invalid_input);
}

TEST_CASE("quantile coupling L1 bound") {
    // || X - E[X|F_reg] ||_1 <= 2 ||X||_inf / N for the rearrangement
    CounterRng rng(59, 0);
    for (int trial = 0; trial < 20; ++trial) {
        auto m = oracle::random_measure(24, 1, rng, 3.0);
        auto x = quantile_rv(m, AtomSpace(240));
        for (std::size_t n : {2, 5, 10}) {
            auto pi = regular_partition(AtomSpace(240), n);
            auto e = cond_exp(x, pi);
            double l1 = 0.0;
            for (std::size_t a = 0; a < 240; ++a)
                l1 += std::abs(x.value(a)[0] - e.value(a)[0]);
            l1 /= 240.0;
            CHECK(l1 <= 2.0 * x.sup_norm() / double(n) + 1e-12);
        }
    }
}

TEST_CASE("regular_partition shapes") {
    auto one = regular_partition(AtomSpace(6), 1);
    CHECK(one.block_count() == 1);
    CHECK(one.block(0).size() == 6);

    auto fine = regular_partition(AtomSpace(6), 6);
    CHECK(fine.block_count() == 6);
    for (std::size_t b = 0; b < 6; ++b) CHECK(fine.block(b)[0] == b);

    auto mid = regular_partition(AtomSpace(6), 3);
    CHECK(mid.block(1)[0] == 2);
    CHECK(mid.block(1)[1] == 3);

    CHECK_THROWS_AS(regular_partition(AtomSpace(6), 4), invalid_input);
}

TEST_CASE("refining a partition never increases rho") {
    CounterRng rng(61, 0);
    for (int trial = 0; trial < 10; ++trial) {
        auto x = random_rv(24, 2, rng);
        auto coarse = regular_partition(AtomSpace(24), 4);
        auto fine = regular_partition(AtomSpace(24), 8);  // nested inside coarse
        CHECK(rho(x, fine) <= rho(x, coarse) + 1e-12);
        auto finest = regular_partition(AtomSpace(24), 24);
        CHECK(rho(x, finest) == doctest::Approx(0.0));
    }
    // random coarse partitions, each block split in two at random
    for (int trial = 0; trial < 10; ++trial) {
        auto x = random_rv(32, 2, rng);
        std::vector<std::uint32_t> order(32);
        std::iota(order.begin(), order.end(), 0u);
        for (std::size_t i = 31; i > 0; --i) std::swap(order[i], order[rng.next_below(i + 1)]);
        std::vector<std::vector<std::uint32_t>> coarse_blocks(4), fine_blocks(8);
        for (std::size_t i = 0; i < 32; ++i) {
            coarse_blocks[i / 8].push_back(order[i]);
            fine_blocks[i / 4].push_back(order[i]);
        }
        Partition coarse(AtomSpace(32), std::move(coarse_blocks));
        Partition fine(AtomSpace(32), std::move(fine_blocks));
        CHECK(rho(x, fine) <= rho(x, coarse) + 1e-12);
    }
}

TEST_CASE("projection derivative identity") {
    // for Phi(X) = 0.5 ||X - A||_2^2 and a linear functional, the gradient of
    // x -> Phi(embed(x, Pi)) equals (1/N) * block mean of the analytic gradient
    CounterRng rng(67, 0);
    const std::size_t k = 12, n = 3, d = 2;
    auto a_rv = random_rv(k, d, rng);
    auto b_rv = random_rv(k, d, rng);
    Partition pi(AtomSpace(k), {{0, 4, 7, 10}, {1, 2, 5, 8}, {3, 6, 9, 11}});

    auto x0 = oracle::random_measure(n, d, rng);

    auto quad = [&](const std::vector<double>& flat) {
        EmpiricalMeasure xm(d, flat);
        auto y = embed(xm, pi);
        double s = 0.0;
        for (std::size_t atom = 0; atom < k; ++atom)
            s += squared_distance(y.value(atom), a_rv.value(atom));
        return 0.5 * s / double(k);
    };
    auto linear = [&](const std::vector<double>& flat) {
        EmpiricalMeasure xm(d, flat);
        auto y = embed(xm, pi);
        double s = 0.0;
        for (std::size_t atom = 0; atom < k; ++atom)
            for (std::size_t q = 0; q < d; ++q) s += y.value(atom)[q] * b_rv.value(atom)[q];
        return s / double(k);
    };

    auto fd_quad = oracle::fd_gradient(quad, x0.data());
    auto fd_linear = oracle::fd_gradient(linear, x0.data());

    auto y0 = embed(x0, pi);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t q = 0; q < d; ++q) {
            // analytic gradient of the quadratic: Y - A; of the linear: B
            double block_quad = 0.0, block_lin = 0.0;
            for (auto atom : pi.block(i)) {
                block_quad += y0.value(atom)[q] - a_rv.value(atom)[q];
                block_lin += b_rv.value(atom)[q];
            }
            block_quad /= double(pi.block(i).size());
            block_lin /= double(pi.block(i).size());
            CHECK(fd_quad[i * d + q] == doctest::Approx(block_quad / double(n)).epsilon(1e-8));
            CHECK(fd_linear[i * d + q] == doctest::Approx(block_lin / double(n)).epsilon(1e-8));
        }
    }

    // second order: the embedded quadratic's Hessian is the block Gram
    // matrix <1_i, 1_j> = delta_ij / N (per coordinate)
    const double h = 1e-4;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto flat = x0.data();
            auto probe = [&](double si, double sj) {
                auto moved = flat;
                moved[i * d] += si;
                moved[j * d] += sj;
                return quad(moved);
            };
            double hess = (probe(h, h) - probe(h, -h) - probe(-h, h) + probe(-h, -h)) /
                          (4.0 * h * h);
            double expect = i == j ? 1.0 / double(n) : 0.0;
            CHECK(hess == doctest::Approx(expect).epsilon(1e-6));
        }
}

TEST_CASE("partition JSON and variable CSV round trips") {
    Partition pi(AtomSpace(6), {{0, 5}, {1, 4}, {2, 3}});
    auto js = partition_to_json(pi);
    auto back = partition_from_json(js);
    CHECK(back.block_count() == 3);
    CHECK(back.block(0)[1] == 5);

    CHECK_THROWS_AS(partition_from_json("[[0,1],[1,2]]"), invalid_input);   // overlap
    CHECK_THROWS_AS(partition_from_json("[[0,1,2],[3]]"), invalid_input);   // unequal
    CHECK_THROWS_AS(partition_from_json("[[0,1],[2,9]]"), invalid_input);   // out of range
    CHECK_THROWS_AS(partition_from_json("not json"), invalid_input);

    CounterRng rng(71, 0);
    auto x = random_rv(5, 3, rng);
    auto csv = variable_to_csv(x);
    auto xb = variable_from_csv(csv);
    CHECK(xb.atoms() == 5);
    CHECK(xb.dim() == 3);
    for (std::size_t a = 0; a < 5; ++a)
        for (std::size_t q = 0; q < 3; ++q) CHECK(xb.value(a)[q] == x.value(a)[q]);
}
