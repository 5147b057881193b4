#include "wlab/hjb/heat.hpp"

#include <cmath>

#include "wlab/parallel.hpp"
#include "wlab/rng.hpp"

namespace wlab::hjb {

namespace {

std::vector<double> shared_shift(std::size_t dim, double scale, std::uint64_t seed,
                                 std::size_t sample) {
    CounterRng rng(seed, 0x6ea7u + sample);
    std::vector<double> z(dim);
    for (auto& v : z) v = scale * rng.next_normal();
    return z;
}

double averaged(std::size_t dim, double scale, std::size_t mc_samples, std::uint64_t seed,
                const std::function<double(const std::vector<double>&)>& value_at_shift) {
    if (mc_samples == 0) throw invalid_input("heat_value: need at least one sample");
    std::vector<double> vals(mc_samples);
    par::parallel_for(mc_samples, [&](std::size_t s) {
        vals[s] = value_at_shift(shared_shift(dim, scale, seed, s));
    });
    double sum = 0.0;
    for (double v : vals) sum += v;  // fixed order, independent of scheduling
    return sum / double(mc_samples);
}

} // namespace

double heat_value(const TerminalSpec& g, const EmpiricalMeasure& m, double t, double horizon,
                  double kappa, std::size_t mc_samples, std::uint64_t seed) {
    if (kappa < 0.0) throw invalid_input("heat_value: kappa must be nonnegative");
    if (kappa == 0.0 || t >= horizon) return g.evaluate(m);
    const double scale = std::sqrt(2.0 * kappa * (horizon - t));
    return averaged(m.dim(), scale, mc_samples, seed, [&](const std::vector<double>& z) {
        return g.evaluate(shift(m, Point(z)));
    });
}

double heat_value_particles(const TerminalSpec& g, const std::vector<double>& particles,
                            std::size_t dim, double t, double horizon, double kappa,
                            std::size_t mc_samples, std::uint64_t seed) {
    EmpiricalMeasure m(dim, particles);
    if (kappa < 0.0) throw invalid_input("heat_value_particles: kappa must be nonnegative");
    if (kappa == 0.0 || t >= horizon) return g.evaluate(m);
    const double scale = std::sqrt(2.0 * kappa * (horizon - t));
    return averaged(dim, scale, mc_samples, seed, [&](const std::vector<double>& z) {
        std::vector<double> moved = particles;
        for (std::size_t i = 0; i < moved.size(); ++i) moved[i] += z[i % dim];
        return g.evaluate(EmpiricalMeasure(dim, std::move(moved)));
    });
}

} // namespace wlab::hjb
