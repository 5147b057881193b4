// Wall-clock comparison of the OpenMP kernels against the serial reference.
// The two policies produce identical results by construction (disjoint-slot
// writes, fixed-order reductions); this target only measures the speedup.
#include <chrono>
#include <cstdio>
#include <vector>

#include "wlab/hjb/heat.hpp"
#include "wlab/parallel.hpp"
#include "wlab/quantize.hpp"
#include "wlab/rng.hpp"

using namespace wlab;

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

template <typename Fn>
double time_ms(const Fn& fn, int reps = 3) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        double t0 = now_ms();
        fn();
        best = std::min(best, now_ms() - t0);
    }
    return best;
}

RandomVariable uniform_rv(std::size_t atoms, std::size_t dim, std::uint64_t seed) {
    CounterRng rng(seed, 1);
    std::vector<double> v(atoms * dim);
    for (auto& x : v) x = rng.next_double();
    return {AtomSpace(atoms), dim, std::move(v)};
}

void report(const char* name, double serial_ms, double omp_ms) {
    std::printf("%-28s serial %8.1f ms   omp %8.1f ms   speedup %.2fx\n", name, serial_ms, omp_ms,
                serial_ms / omp_ms);
}

} // namespace

int main() {
    std::printf("thread budget: %d\n", par::thread_budget());

    {
        auto x = uniform_rv(6912, 3, 7);
        QuantizeOptions opts;
        opts.restarts = 4;
        opts.max_iters = 12;
        opts.exact_ops_cap = 0;  // force the data-parallel heuristic route
        double rho_serial = 0.0, rho_omp = 0.0;
        double serial = time_ms([&] {
            opts.parallel_restarts = false;
            par::set_default_policy(par::Policy::serial);
            rho_serial = balanced_quantize(x, 64, opts).rho_value;
        });
        double omp = time_ms([&] {
            opts.parallel_restarts = true;
            par::set_default_policy(par::Policy::omp);
            rho_omp = balanced_quantize(x, 64, opts).rho_value;
        });
        report("balanced_quantize 6912x64", serial, omp);
        if (rho_serial != rho_omp) {
            std::printf("MISMATCH: serial %.17g vs omp %.17g\n", rho_serial, rho_omp);
            return 1;
        }
    }

    {
        auto terminal = hjb::terminal_pairwise(1.0, 0.05);
        CounterRng rng(11, 2);
        std::vector<double> particles(256 * 2);
        for (auto& v : particles) v = rng.next_double();
        EmpiricalMeasure m(2, particles);
        double v_serial = 0.0, v_omp = 0.0;
        double serial = time_ms([&] {
            par::set_default_policy(par::Policy::serial);
            v_serial = hjb::heat_value(terminal, m, 0.0, 1.0, 0.3, 512, 99);
        });
        double omp = time_ms([&] {
            par::set_default_policy(par::Policy::omp);
            v_omp = hjb::heat_value(terminal, m, 0.0, 1.0, 0.3, 512, 99);
        });
        report("heat MC 256 pts x 512", serial, omp);
        if (v_serial != v_omp) {
            std::printf("MISMATCH: serial %.17g vs omp %.17g\n", v_serial, v_omp);
            return 1;
        }
    }

    par::set_default_policy(par::Policy::omp);
    return 0;
}
