#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "wlab/errors.hpp"

namespace wlab {

struct AssignmentPlan {
    std::vector<std::int32_t> col_of_row;
    double total_cost = 0.0;
};

// Exact square assignment by shortest augmenting paths with dual potentials
// (Jonker-Volgenant style), O(n^3). cost(i, j) must be finite.
template <typename CostFn>
AssignmentPlan solve_assignment(std::size_t n, const CostFn& cost) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<std::int32_t> p(n + 1, 0), way(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        p[0] = static_cast<std::int32_t>(i);
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            std::size_t i0 = static_cast<std::size_t>(p[j0]), j1 = 0;
            double delta = inf;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) { minv[j] = cur; way[j] = static_cast<std::int32_t>(j0); }
                if (minv[j] < delta) { delta = minv[j]; j1 = j; }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) { u[static_cast<std::size_t>(p[j])] += delta; v[j] -= delta; }
                else minv[j] -= delta;
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            std::size_t j1 = static_cast<std::size_t>(way[j0]);
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    AssignmentPlan plan;
    plan.col_of_row.assign(n, -1);
    for (std::size_t j = 1; j <= n; ++j)
        if (p[j] != 0) plan.col_of_row[static_cast<std::size_t>(p[j]) - 1] = static_cast<std::int32_t>(j) - 1;
    plan.total_cost = 0.0;
    for (std::size_t i = 0; i < n; ++i) plan.total_cost += cost(i, static_cast<std::size_t>(plan.col_of_row[i]));
    return plan;
}

struct TransportPlan {
    std::vector<std::int32_t> site_of;  // per unit-demand row, the site it is sent to
    double total_cost = 0.0;
};

// Exact balanced transportation: `rows` unit demands, `cols` sites with the
// given integer capacities (capacities must sum to rows). Successive shortest
// augmenting paths with dual potentials; each augmentation is a dense
// Dijkstra over sites, displacement edges go through currently assigned rows.
// Total work is O(rows * (cols^2 + rows * cols)).
template <typename CostFn>
TransportPlan solve_transport(std::size_t rows, std::size_t cols,
                              const std::vector<std::int64_t>& capacity,
                              const CostFn& cost) {
    if (capacity.size() != cols) throw invalid_input("solve_transport: capacity size mismatch");
    std::int64_t total_cap = 0;
    for (auto c : capacity) {
        if (c < 0) throw invalid_input("solve_transport: negative capacity");
        total_cap += c;
    }
    if (total_cap != static_cast<std::int64_t>(rows))
        throw invalid_input("solve_transport: capacities must sum to the number of rows");

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> v(cols, 0.0);      // site potentials
    std::vector<double> u(rows, 0.0);      // row potentials (valid once assigned)
    std::vector<std::int32_t> site_of(rows, -1);
    std::vector<std::int64_t> used(cols, 0);
    std::vector<std::vector<std::int32_t>> members(cols);

    std::vector<double> dist(cols);
    std::vector<std::int32_t> parent_site(cols), parent_row(cols);
    std::vector<char> visited(cols);

    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t j = 0; j < cols; ++j) {
            dist[j] = cost(r, j) - v[j];
            parent_site[j] = -1;
            parent_row[j] = -1;
            visited[j] = 0;
        }
        std::int32_t terminal = -1;
        double terminal_dist = 0.0;
        for (;;) {
            std::int32_t best = -1;
            double best_d = inf;
            for (std::size_t j = 0; j < cols; ++j)
                if (!visited[j] && dist[j] < best_d) { best_d = dist[j]; best = static_cast<std::int32_t>(j); }
            if (best < 0) break;  // unreachable only if capacities were inconsistent
            visited[best] = 1;
            if (used[best] < capacity[best]) { terminal = best; terminal_dist = best_d; break; }
            for (std::int32_t b : members[best]) {
                const double base = best_d - u[b];
                for (std::size_t j = 0; j < cols; ++j) {
                    if (visited[j]) continue;
                    double cand = base + cost(b, j) - v[j];
                    if (cand < dist[j]) {
                        dist[j] = cand;
                        parent_site[j] = best;
                        parent_row[j] = b;
                    }
                }
            }
        }
        if (terminal < 0) throw numeric_error("solve_transport: no augmenting path found");

        for (std::size_t j = 0; j < cols; ++j)
            if (visited[j]) v[j] += dist[j] - terminal_dist;

        // Walk the alternating path back, moving displaced rows one site over.
        std::int32_t j = terminal;
        while (parent_site[j] >= 0) {
            std::int32_t b = parent_row[j], jp = parent_site[j];
            auto& mem = members[static_cast<std::size_t>(jp)];
            for (std::size_t k = 0; k < mem.size(); ++k)
                if (mem[k] == b) { mem[k] = mem.back(); mem.pop_back(); break; }
            members[static_cast<std::size_t>(j)].push_back(b);
            site_of[static_cast<std::size_t>(b)] = j;
            j = jp;
        }
        site_of[r] = j;
        members[static_cast<std::size_t>(j)].push_back(static_cast<std::int32_t>(r));
        used[terminal] += 1;

        // Re-anchor row potentials of sites whose potential moved.
        for (std::size_t q = 0; q < cols; ++q)
            if (visited[q])
                for (std::int32_t b : members[q]) u[b] = cost(b, q) - v[q];
    }

    TransportPlan plan;
    plan.site_of = std::move(site_of);
    plan.total_cost = 0.0;
    for (std::size_t r = 0; r < rows; ++r)
        plan.total_cost += cost(r, static_cast<std::size_t>(plan.site_of[r]));
    return plan;
}

} // namespace wlab
