#include "wlab/lab/problem_io.hpp"

#include <memory>

#include "wlab/errors.hpp"

namespace wlab::lab {

FdProblem fd_problem_from_toml(const Toml& file) {
    FdProblem prob;

    const std::string hname = file.text_or("hamiltonian", "abs");
    if (hname == "nonconvex-sin")
        prob.hamiltonian = hjb::hamiltonian_nonconvex_sin(file.number_or("sin_amplitude", 0.5),
                                                          file.number_or("sin_frequency", 3.0));
    else
        prob.hamiltonian = hjb::hamiltonian_by_name(hname);
    prob.hamiltonian.truncation_radius =
        file.number_or("truncation_radius", prob.hamiltonian.truncation_radius);

    prob.particles = static_cast<std::size_t>(file.integer_or("particles", 1));
    prob.dim = static_cast<std::size_t>(file.integer_or("dim", 1));
    prob.kappa = file.number_or("kappa", 0.0);
    prob.horizon = file.number_or("horizon", 1.0);

    const std::string tname = file.text_or("terminal", "mean-min-abs");
    if (tname == "constant")
        prob.terminal = hjb::terminal_constant(file.number_or("constant_value", 1.0));
    else if (tname == "pairwise-soft-abs")
        prob.terminal = hjb::terminal_pairwise(file.number_or("pairwise_strength", 1.0),
                                               file.number_or("pairwise_delta", 0.05));
    else if (tname == "w2-to-uniform-cube") {
        auto per_axis = static_cast<std::size_t>(file.integer_or("cloud_per_axis", 16));
        auto cloud = std::make_shared<const SampledMeasure>(
            SampledMeasure::uniform_cube_grid(prob.dim, per_axis));
        prob.terminal = hjb::terminal_w2_uniform(std::move(cloud), file.number_or("terminal_cap", 1.0));
    } else
        prob.terminal = hjb::terminal_by_name(tname);

    prob.grid.radius = file.number_or("grid.radius", 2.0);
    prob.grid.spacing = file.number_or("grid.spacing", 0.02);
    prob.grid.dt = file.number_or("grid.dt", 0.0);
    prob.grid.t0 = file.number_or("grid.t0", 0.0);
    prob.slice_stride = static_cast<std::size_t>(file.integer_or("grid.slice_stride", 1));
    if (prob.slice_stride == 0) prob.slice_stride = 1;
    return prob;
}

} // namespace wlab::lab
