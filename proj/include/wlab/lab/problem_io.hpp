#pragma once

#include "wlab/hjb/fd.hpp"
#include "wlab/hjb/problem.hpp"
#include "wlab/lab/toml.hpp"

namespace wlab::lab {

// Problem definition file: names a built-in Hamiltonian and terminal
// condition plus the solver geometry. See configs/fd_eikonal.toml.
struct FdProblem {
    hjb::HamiltonianSpec hamiltonian;
    hjb::TerminalSpec terminal;
    std::size_t particles = 1;
    std::size_t dim = 1;
    double kappa = 0.0;
    double horizon = 1.0;
    hjb::FdGrid grid;
    std::size_t slice_stride = 1;
};

FdProblem fd_problem_from_toml(const Toml& file);

} // namespace wlab::lab
