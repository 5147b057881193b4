#include "wlab/quantize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wlab/parallel.hpp"
#include "wlab/rng.hpp"
#include "wlab/transport.hpp"

namespace wlab {

namespace {

struct Cloud {
    const double* data;
    std::size_t count;
    std::size_t dim;
    std::span<const double> at(std::size_t i) const { return {data + i * dim, dim}; }
};

double d2(const Cloud& c, std::size_t i, std::span<const double> p) {
    double s = 0.0;
    auto a = c.at(i);
    for (std::size_t k = 0; k < c.dim; ++k) {
        double diff = a[k] - p[k];
        s += diff * diff;
    }
    return s;
}

struct Assignment {
    std::vector<std::uint32_t> labels;
    double cost = 0.0;  // sum over atoms of |x_a - c_{label(a)}|^2
    bool exact = false;
};

double assignment_cost(const Cloud& atoms, const std::vector<double>& centroids,
                       std::size_t dim, const std::vector<std::uint32_t>& labels) {
    double s = 0.0;
    for (std::size_t a = 0; a < atoms.count; ++a)
        s += d2(atoms, a, {centroids.data() + labels[a] * dim, dim});
    return s;
}

// 1-D: sorted atoms against sorted centroids in contiguous chunks is the
// exact balanced assignment (rank pairing).
Assignment assign_sorted_1d(const Cloud& atoms, const std::vector<double>& centroids,
                            std::size_t n) {
    const std::size_t k = atoms.count, cap = k / n;
    std::vector<std::size_t> ao(k), co(n);
    std::iota(ao.begin(), ao.end(), std::size_t{0});
    std::iota(co.begin(), co.end(), std::size_t{0});
    std::stable_sort(ao.begin(), ao.end(),
                     [&](std::size_t i, std::size_t j) { return atoms.data[i] < atoms.data[j]; });
    std::stable_sort(co.begin(), co.end(),
                     [&](std::size_t i, std::size_t j) { return centroids[i] < centroids[j]; });
    Assignment out;
    out.labels.resize(k);
    for (std::size_t r = 0; r < k; ++r)
        out.labels[ao[r]] = static_cast<std::uint32_t>(co[r / cap]);
    out.cost = 0.0;
    for (std::size_t r = 0; r < k; ++r) {
        double diff = atoms.data[ao[r]] - centroids[co[r / cap]];
        out.cost += diff * diff;
    }
    out.exact = true;
    return out;
}

Assignment assign_exact(const Cloud& atoms, const std::vector<double>& centroids,
                        std::size_t n) {
    const std::size_t k = atoms.count, dim = atoms.dim;
    std::vector<std::int64_t> capacity(n, static_cast<std::int64_t>(k / n));
    auto plan = solve_transport(k, n, capacity, [&](std::size_t a, std::size_t j) {
        return d2(atoms, a, {centroids.data() + j * dim, dim});
    });
    Assignment out;
    out.labels.assign(plan.site_of.begin(), plan.site_of.end());
    out.cost = plan.total_cost;
    out.exact = true;
    return out;
}

// Greedy fill by regret order, then pairwise swaps until no improving swap.
Assignment assign_heuristic(const Cloud& atoms, const std::vector<double>& centroids,
                            std::size_t n, const std::vector<std::uint32_t>* previous,
                            std::size_t swap_passes) {
    const std::size_t k = atoms.count, dim = atoms.dim, cap = k / n;

    std::vector<std::uint32_t> best(k), second(k);
    std::vector<double> best_d(k), second_d(k);
    par::parallel_for(k, [&](std::size_t a) {
        double b1 = std::numeric_limits<double>::infinity(), b2 = b1;
        std::uint32_t i1 = 0, i2 = 0;
        for (std::size_t j = 0; j < n; ++j) {
            double dd = d2(atoms, a, {centroids.data() + j * dim, dim});
            if (dd < b1) { b2 = b1; i2 = i1; b1 = dd; i1 = static_cast<std::uint32_t>(j); }
            else if (dd < b2) { b2 = dd; i2 = static_cast<std::uint32_t>(j); }
        }
        best[a] = i1; best_d[a] = b1; second[a] = i2; second_d[a] = b2;
    });

    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return second_d[a] - best_d[a] > second_d[b] - best_d[b];
    });

    std::vector<std::uint32_t> labels(k);
    std::vector<std::size_t> load(n, 0);
    for (std::size_t a : order) {
        std::uint32_t j = best[a];
        if (load[j] >= cap) {
            j = second[a];
            if (load[j] >= cap) {
                double bd = std::numeric_limits<double>::infinity();
                for (std::size_t c = 0; c < n; ++c) {
                    if (load[c] >= cap) continue;
                    double dd = d2(atoms, a, {centroids.data() + c * dim, dim});
                    if (dd < bd) { bd = dd; j = static_cast<std::uint32_t>(c); }
                }
            }
        }
        labels[a] = j;
        ++load[j];
    }

    // A previous balanced assignment is kept when greedy does not beat it.
    double cost = assignment_cost(atoms, centroids, dim, labels);
    if (previous) {
        double prev_cost = assignment_cost(atoms, centroids, dim, *previous);
        if (prev_cost < cost) {
            labels = *previous;
            cost = prev_cost;
        }
    }

    std::vector<std::vector<std::uint32_t>> members(n);
    for (auto& m : members) m.reserve(cap);
    for (std::size_t a = 0; a < k; ++a) members[labels[a]].push_back(static_cast<std::uint32_t>(a));

    for (std::size_t pass = 0; pass < swap_passes; ++pass) {
        // best alternative block per atom, against current centroids
        par::parallel_for(k, [&](std::size_t a) {
            double bd = std::numeric_limits<double>::infinity();
            std::uint32_t bj = labels[a];
            for (std::size_t j = 0; j < n; ++j) {
                if (j == labels[a]) continue;
                double dd = d2(atoms, a, {centroids.data() + j * dim, dim});
                if (dd < bd) { bd = dd; bj = static_cast<std::uint32_t>(j); }
            }
            best[a] = bj;
            best_d[a] = bd;
        });
        std::vector<std::size_t> cand;
        cand.reserve(k);
        for (std::size_t a = 0; a < k; ++a) {
            double own = d2(atoms, a, {centroids.data() + labels[a] * dim, dim});
            if (best_d[a] < own) cand.push_back(a);
        }
        std::stable_sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) {
            double ga = d2(atoms, a, {centroids.data() + labels[a] * dim, dim}) - best_d[a];
            double gb = d2(atoms, b, {centroids.data() + labels[b] * dim, dim}) - best_d[b];
            return ga > gb;
        });

        std::size_t executed = 0;
        for (std::size_t a : cand) {
            const std::uint32_t from = labels[a];
            const std::uint32_t to = best[a];
            if (to == from) continue;
            std::span<const double> cf{centroids.data() + from * dim, dim};
            std::span<const double> ct{centroids.data() + to * dim, dim};
            double gain_a = d2(atoms, a, cf) - d2(atoms, a, ct);
            if (gain_a <= 0) continue;
            // cheapest member of `to` to send back
            double best_back = std::numeric_limits<double>::infinity();
            std::size_t back_pos = 0;
            for (std::size_t pos = 0; pos < members[to].size(); ++pos) {
                std::uint32_t b = members[to][pos];
                double delta = d2(atoms, b, cf) - d2(atoms, b, ct);
                if (delta < best_back) { best_back = delta; back_pos = pos; }
            }
            if (gain_a - best_back > 1e-15 * (1.0 + gain_a)) {
                std::uint32_t b = members[to][back_pos];
                members[to][back_pos] = static_cast<std::uint32_t>(a);
                auto& mf = members[from];
                for (auto& m : mf)
                    if (m == a) { m = b; break; }
                labels[a] = to;
                labels[b] = from;
                ++executed;
            }
        }
        if (executed == 0) break;
    }

    Assignment out;
    out.cost = assignment_cost(atoms, centroids, dim, labels);
    out.labels = std::move(labels);
    out.exact = false;
    return out;
}

Assignment assign_balanced(const Cloud& atoms, const std::vector<double>& centroids,
                           std::size_t n, const std::vector<std::uint32_t>* previous,
                           const QuantizeOptions& opts) {
    if (atoms.dim == 1) return assign_sorted_1d(atoms, centroids, n);
    double ops = double(n) * double(atoms.count) * double(atoms.count);
    if (ops <= opts.exact_ops_cap) return assign_exact(atoms, centroids, n);
    return assign_heuristic(atoms, centroids, n, previous, opts.swap_passes);
}

std::vector<double> block_means(const Cloud& atoms, const std::vector<std::uint32_t>& labels,
                                std::size_t n) {
    std::vector<double> mean(n * atoms.dim, 0.0);
    std::vector<std::size_t> cnt(n, 0);
    for (std::size_t a = 0; a < atoms.count; ++a) {
        auto v = atoms.at(a);
        for (std::size_t q = 0; q < atoms.dim; ++q) mean[labels[a] * atoms.dim + q] += v[q];
        ++cnt[labels[a]];
    }
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t q = 0; q < atoms.dim; ++q) mean[j * atoms.dim + q] /= double(cnt[j]);
    return mean;
}

// Recursive widest-axis bisection into mass-proportional halves; the
// deterministic initial assignment of restart 0.
void bisect(const Cloud& atoms, std::span<std::uint32_t> subset, std::size_t n,
            std::vector<std::uint32_t>& labels, std::uint32_t& next_label) {
    if (n == 1) {
        for (auto a : subset) labels[a] = next_label;
        ++next_label;
        return;
    }
    std::size_t axis = 0;
    double best_var = -1.0;
    for (std::size_t q = 0; q < atoms.dim; ++q) {
        double mean = 0.0, sq = 0.0;
        for (auto a : subset) {
            double v = atoms.at(a)[q];
            mean += v;
            sq += v * v;
        }
        mean /= double(subset.size());
        double var = sq / double(subset.size()) - mean * mean;
        if (var > best_var) { best_var = var; axis = q; }
    }
    const std::size_t n1 = n / 2, n2 = n - n1;
    const std::size_t count1 = subset.size() / n * n1;
    std::nth_element(subset.begin(), subset.begin() + count1, subset.end(),
                     [&](std::uint32_t a, std::uint32_t b) {
                         double va = atoms.at(a)[axis], vb = atoms.at(b)[axis];
                         return va < vb || (va == vb && a < b);
                     });
    bisect(atoms, subset.subspan(0, count1), n1, labels, next_label);
    bisect(atoms, subset.subspan(count1), n2, labels, next_label);
}

std::vector<std::uint32_t> bisection_labels(const Cloud& atoms, std::size_t n) {
    std::vector<std::uint32_t> order(atoms.count);
    std::iota(order.begin(), order.end(), 0u);
    std::vector<std::uint32_t> labels(atoms.count, 0);
    std::uint32_t next = 0;
    bisect(atoms, order, n, labels, next);
    return labels;
}

// k-means++ style seeding on the atom values.
std::vector<double> seed_centroids(const Cloud& atoms, std::size_t n, CounterRng& rng) {
    const std::size_t k = atoms.count, dim = atoms.dim;
    std::vector<double> centroids(n * dim);
    std::vector<double> nearest(k, std::numeric_limits<double>::infinity());
    std::size_t first = static_cast<std::size_t>(rng.next_below(k));
    std::copy_n(atoms.data + first * dim, dim, centroids.begin());
    for (std::size_t t = 1; t < n; ++t) {
        double total = 0.0;
        const double* last = centroids.data() + (t - 1) * dim;
        for (std::size_t a = 0; a < k; ++a) {
            double dd = d2(atoms, a, {last, dim});
            if (dd < nearest[a]) nearest[a] = dd;
            total += nearest[a];
        }
        double target = rng.next_double() * total;
        std::size_t pick = k - 1;
        double acc = 0.0;
        for (std::size_t a = 0; a < k; ++a) {
            acc += nearest[a];
            if (acc >= target) { pick = a; break; }
        }
        std::copy_n(atoms.data + pick * dim, dim, centroids.begin() + t * dim);
    }
    return centroids;
}

struct RunResult {
    std::vector<std::uint32_t> labels;
    double rho = 0.0;
    std::size_t iterations = 0;
    bool budget_exhausted = false;
    bool exact = true;
};

RunResult lloyd_run(const Cloud& atoms, std::size_t n, const QuantizeOptions& opts,
                    std::uint64_t stream, bool bisection_start) {
    RunResult run;
    std::vector<double> centroids;
    double prev_rho = std::numeric_limits<double>::infinity();
    std::vector<std::uint32_t>* prev_labels = nullptr;
    if (bisection_start) {
        run.labels = bisection_labels(atoms, n);
        centroids = block_means(atoms, run.labels, n);
        prev_rho = std::sqrt(assignment_cost(atoms, centroids, atoms.dim, run.labels) /
                             double(atoms.count));
        prev_labels = &run.labels;
    } else {
        CounterRng rng(opts.seed, stream);
        centroids = seed_centroids(atoms, n, rng);
    }
    for (std::size_t iter = 0; iter < std::max<std::size_t>(1, opts.max_iters); ++iter) {
        Assignment asg = assign_balanced(atoms, centroids, n, prev_labels, opts);
        run.exact = run.exact && asg.exact;
        run.labels = std::move(asg.labels);
        prev_labels = &run.labels;
        centroids = block_means(atoms, run.labels, n);
        double r = std::sqrt(assignment_cost(atoms, centroids, atoms.dim, run.labels) /
                             double(atoms.count));
        run.iterations = iter + 1;
        // contract: the objective never increases across iterations
        if (r > prev_rho * (1.0 + 1e-9) + 1e-15)
            throw numeric_error("balanced_quantize: objective increased across an iteration");
        if (prev_rho - r <= opts.tol * (1.0 + prev_rho)) {
            run.rho = r;
            return run;
        }
        prev_rho = r;
    }
    run.rho = prev_rho;
    run.budget_exhausted = true;
    return run;
}

} // namespace

QuantizeResult balanced_quantize(const RandomVariable& x, std::size_t n,
                                 const QuantizeOptions& opts) {
    const std::size_t k = x.atoms();
    if (n == 0 || k % n != 0)
        throw invalid_input("balanced_quantize: atom count not divisible by N");
    Cloud atoms{x.values().data(), k, x.dim()};

    const std::size_t restarts = std::max<std::size_t>(1, opts.restarts);
    std::vector<RunResult> runs(restarts);
    auto policy = opts.parallel_restarts ? par::default_policy() : par::Policy::serial;
    par::parallel_for(
        restarts,
        [&](std::size_t r) {
            runs[r] = lloyd_run(atoms, n, opts, 0x71a9u + 1000003ull * r, r == 0);
        },
        policy);

    std::size_t best = 0;
    for (std::size_t r = 1; r < restarts; ++r)
        if (runs[r].rho < runs[best].rho) best = r;

    QuantizeResult out{
        partition_from_labels(x.space(), runs[best].labels, n),
        runs[best].rho,
        runs[best].iterations,
        restarts,
        runs[best].budget_exhausted,
        runs[best].exact,
    };
    return out;
}

EmpiricalMeasure codebook(const RandomVariable& x, const Partition& pi) {
    Cloud atoms{x.values().data(), x.atoms(), x.dim()};
    auto labels = pi.atom_to_block();
    auto means = block_means(atoms, labels, pi.block_count());
    return {x.dim(), std::move(means)};
}

namespace {

EnEstimate quantize_measure(const RandomVariable& lifted, std::size_t n,
                            const QuantizeOptions& opts) {
    auto q = balanced_quantize(lifted, n, opts);
    EnEstimate out{q.rho_value, codebook(lifted, q.partition), std::move(q)};
    return out;
}

RandomVariable lift_atoms(const EmpiricalMeasure& m, AtomSpace space) {
    if (m.dim() == 1) return quantile_rv(m, space);
    if (space.atoms % m.size() != 0)
        throw invalid_input("e_n_estimate: atom count must be a multiple of the sample count");
    const std::size_t rep = space.atoms / m.size(), d = m.dim();
    std::vector<double> vals;
    vals.reserve(space.atoms * d);
    for (std::size_t i = 0; i < m.size(); ++i) {
        auto p = m.point(i);
        for (std::size_t r = 0; r < rep; ++r) vals.insert(vals.end(), p.begin(), p.end());
    }
    return {space, d, std::move(vals)};
}

} // namespace

EnEstimate e_n_estimate(const EmpiricalMeasure& m, std::size_t n, AtomSpace space,
                        const QuantizeOptions& opts) {
    return quantize_measure(lift_atoms(m, space), n, opts);
}

EnEstimate e_n_estimate(const SampledMeasure& m, std::size_t n, AtomSpace space,
                        const QuantizeOptions& opts) {
    return quantize_measure(lift_atoms(m.as_empirical(), space), n, opts);
}

} // namespace wlab
