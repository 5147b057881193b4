#pragma once

#include <cstddef>
#include <cstdint>

namespace wlab::par {

enum class Policy { serial, omp };

// Default execution policy. Starts as omp when compiled with OpenMP,
// serial otherwise; LAB_THREADS=1 in the environment forces serial.
Policy default_policy();
void set_default_policy(Policy p);

// Thread budget: min(omp_get_max_threads(), LAB_THREADS if set).
int thread_budget();

// Runs body(i) for i in [0, n). The omp policy may execute iterations in any
// order and concurrently; callers must write to disjoint slots. Results are
// therefore identical between policies by construction.
template <typename Body>
void parallel_for(std::size_t n, const Body& body, Policy policy);

template <typename Body>
void parallel_for(std::size_t n, const Body& body) {
    parallel_for(n, body, default_policy());
}

namespace detail {
void run_omp(std::size_t n, void* ctx, void (*trampoline)(void*, std::size_t));
}

template <typename Body>
void parallel_for(std::size_t n, const Body& body, Policy policy) {
    if (policy == Policy::serial || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    auto ctx = const_cast<Body*>(&body);
    detail::run_omp(n, ctx, [](void* c, std::size_t i) { (*static_cast<Body*>(c))(i); });
}

} // namespace wlab::par
