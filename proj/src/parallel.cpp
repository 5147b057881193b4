#include "wlab/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wlab::par {

namespace {
Policy g_policy = []() {
#ifdef _OPENMP
    return Policy::omp;
#else
    return Policy::serial;
#endif
}();
}

Policy default_policy() {
    if (thread_budget() <= 1) return Policy::serial;
    return g_policy;
}

void set_default_policy(Policy p) { g_policy = p; }

int thread_budget() {
    int hw = 1;
#ifdef _OPENMP
    hw = omp_get_max_threads();
#endif
    if (const char* env = std::getenv("LAB_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1 && cap < hw) hw = cap;
    }
    return hw;
}

namespace detail {

void run_omp(std::size_t n, void* ctx, void (*trampoline)(void*, std::size_t)) {
#ifdef _OPENMP
    const int threads = thread_budget();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
        trampoline(ctx, static_cast<std::size_t>(i));
#else
    for (std::size_t i = 0; i < n; ++i) trampoline(ctx, i);
#endif
}

} // namespace detail

} // namespace wlab::par
