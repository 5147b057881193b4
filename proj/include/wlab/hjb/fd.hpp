#pragma once

#include <vector>

#include "wlab/hjb/problem.hpp"

namespace wlab::hjb {

struct FdGrid {
    double radius = 2.0;   // grid covers [-radius, radius] in every coordinate
    double spacing = 0.02;
    double dt = 0.0;       // 0 -> largest time step allowed by monotonicity
    double t0 = 0.0;       // solve backward from the horizon to this time
};

// Backward-in-time value table on a tensor grid over the stacked particle
// coordinates (total grid dimension N*d, capped at 2). Stores every slice.
class FdValue {
public:
    FdValue(std::size_t grid_dim, std::size_t particles, std::size_t point_dim, double radius,
            double spacing, double horizon, double t0, double dt);

    // multilinear in space, linear between stored time slices
    double at(double t, std::span<const double> x) const;

    std::size_t slices() const { return values_.size(); }
    double time_of(std::size_t s) const;
    const std::vector<double>& slice(std::size_t s) const { return values_[s]; }
    std::size_t points_per_axis() const { return axis_; }
    double coord_of(std::size_t idx) const { return -radius_ + double(idx) * spacing_; }
    double spacing() const { return spacing_; }
    double dt() const { return dt_; }

    // rows: t,x...,value  (slice stride thins the time axis)
    std::string to_csv(std::size_t slice_stride = 1) const;

private:
    friend FdValue solve_fd(const HamiltonianSpec&, const TerminalSpec&, std::size_t,
                            std::size_t, double, double, const FdGrid&);

    std::size_t grid_dim_, particles_, point_dim_;
    double radius_, spacing_, horizon_, t0_, dt_;
    std::size_t axis_ = 0;
    std::vector<std::vector<double>> values_;  // values_[0] is the terminal slice
};

// Monotone local Lax-Friedrichs scheme for the N-particle equation with the
// common-noise term discretized as directional second differences along the
// all-particles diagonal of each space dimension. Throws config_error with
// the admissible dt when the requested step violates the monotonicity bound,
// and invalid_input when N*d exceeds 2.
FdValue solve_fd(const HamiltonianSpec& h, const TerminalSpec& g, std::size_t particles,
                 std::size_t dim, double kappa, double horizon, const FdGrid& grid);

} // namespace wlab::hjb
