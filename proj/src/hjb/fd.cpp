#include "wlab/hjb/fd.hpp"

#include <cmath>

#include "wlab/measure_io.hpp"
#include "wlab/parallel.hpp"

namespace wlab::hjb {

FdValue::FdValue(std::size_t grid_dim, std::size_t particles, std::size_t point_dim,
                 double radius, double spacing, double horizon, double t0, double dt)
    : grid_dim_(grid_dim), particles_(particles), point_dim_(point_dim), radius_(radius),
      spacing_(spacing), horizon_(horizon), t0_(t0), dt_(dt) {
    axis_ = static_cast<std::size_t>(std::round(2.0 * radius / spacing)) + 1;
}

double FdValue::time_of(std::size_t s) const { return horizon_ - double(s) * dt_; }

namespace {
std::size_t clamp_idx(long long i, std::size_t axis) {
    if (i < 0) return 0;
    if (i >= static_cast<long long>(axis)) return axis - 1;
    return static_cast<std::size_t>(i);
}
} // namespace

double FdValue::at(double t, std::span<const double> x) const {
    if (x.size() != grid_dim_) throw invalid_input("FdValue::at: wrong point dimension");
    // bracketing slices
    double s_real = (horizon_ - t) / dt_;
    if (s_real < 0.0) s_real = 0.0;
    auto s0 = static_cast<std::size_t>(s_real);
    if (s0 >= values_.size() - 1) s0 = values_.size() - 2;
    double wt = s_real - double(s0);
    if (values_.size() == 1) { s0 = 0; wt = 0.0; }

    auto interp = [&](const std::vector<double>& slice) {
        // multilinear over the 2^D cell corners
        std::vector<std::size_t> base(grid_dim_);
        std::vector<double> frac(grid_dim_);
        for (std::size_t q = 0; q < grid_dim_; ++q) {
            double g = (x[q] + radius_) / spacing_;
            if (g < 0.0) g = 0.0;
            if (g > double(axis_ - 1)) g = double(axis_ - 1);
            auto i = static_cast<std::size_t>(g);
            if (i >= axis_ - 1) i = axis_ - 2;
            base[q] = i;
            frac[q] = g - double(i);
        }
        double acc = 0.0;
        for (std::size_t corner = 0; corner < (std::size_t(1) << grid_dim_); ++corner) {
            double w = 1.0;
            std::size_t flat = 0, stride = 1;
            for (std::size_t q = 0; q < grid_dim_; ++q) {
                bool hi = (corner >> q) & 1;
                w *= hi ? frac[q] : 1.0 - frac[q];
                flat += (base[q] + (hi ? 1 : 0)) * stride;
                stride *= axis_;
            }
            acc += w * slice[flat];
        }
        return acc;
    };
    double lo = interp(values_[s0]);
    if (wt == 0.0) return lo;
    double hi = interp(values_[s0 + 1]);
    return (1.0 - wt) * lo + wt * hi;
}

std::string FdValue::to_csv(std::size_t slice_stride) const {
    std::string out = "t";
    for (std::size_t q = 0; q < grid_dim_; ++q) out += ",x" + std::to_string(q);
    out += ",value\n";
    std::size_t total = values_.empty() ? 0 : values_[0].size();
    for (std::size_t s = 0; s < values_.size(); s += std::max<std::size_t>(1, slice_stride)) {
        for (std::size_t flat = 0; flat < total; ++flat) {
            out += format_double(time_of(s));
            std::size_t rest = flat;
            for (std::size_t q = 0; q < grid_dim_; ++q) {
                out += ',';
                out += format_double(coord_of(rest % axis_));
                rest /= axis_;
            }
            out += ',';
            out += format_double(values_[s][flat]);
            out += '\n';
        }
    }
    return out;
}

FdValue solve_fd(const HamiltonianSpec& h, const TerminalSpec& g, std::size_t particles,
                 std::size_t dim, double kappa, double horizon, const FdGrid& grid) {
    const std::size_t gd = particles * dim;
    if (gd == 0 || gd > 2)
        throw invalid_input("solve_fd: grid dimension N*d must be 1 or 2");
    if (grid.spacing <= 0.0 || grid.radius <= 0.0)
        throw config_error("solve_fd: spacing and radius must be positive");
    if (kappa < 0.0) throw config_error("solve_fd: kappa must be nonnegative");

    const double hh = grid.spacing;
    const double lip = h.momentum_lipschitz();
    // monotonicity: dt * (d * N * Lip / h + 2 d kappa / h^2) <= 1
    double denom = double(dim) * double(particles) * lip / hh +
                   2.0 * double(dim) * kappa / (hh * hh);
    double dt_max = denom > 0.0 ? 1.0 / denom : horizon;
    double dt = grid.dt;
    if (dt <= 0.0) dt = 0.9 * dt_max;
    if (dt > dt_max * (1.0 + 1e-12)) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "solve_fd: dt=%.6g violates the monotonicity bound; admissible dt <= %.6g",
                      dt, dt_max);
        throw config_error(buf);
    }
    const double span_t = horizon - grid.t0;
    if (span_t <= 0.0) throw config_error("solve_fd: t0 must precede the horizon");
    auto steps = static_cast<std::size_t>(std::ceil(span_t / dt - 1e-12));
    dt = span_t / double(steps);

    FdValue out(gd, particles, dim, grid.radius, hh, horizon, grid.t0, dt);
    const std::size_t axis = out.points_per_axis();
    std::size_t total = 1;
    for (std::size_t q = 0; q < gd; ++q) total *= axis;

    // grid-point coordinates and their empirical measures, fixed in time
    std::vector<double> coords(total * gd);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rest = flat;
        for (std::size_t q = 0; q < gd; ++q) {
            coords[flat * gd + q] = out.coord_of(rest % axis);
            rest /= axis;
        }
    }
    std::vector<EmpiricalMeasure> measures;
    measures.reserve(total);
    for (std::size_t flat = 0; flat < total; ++flat) {
        std::vector<double> pts(coords.begin() + flat * gd, coords.begin() + (flat + 1) * gd);
        measures.emplace_back(dim, std::move(pts));
    }

    std::vector<double> terminal(total);
    par::parallel_for(total, [&](std::size_t flat) { terminal[flat] = g.evaluate(measures[flat]); });
    out.values_.push_back(std::move(terminal));

    std::vector<std::size_t> stride(gd);
    stride[0] = 1;
    for (std::size_t q = 1; q < gd; ++q) stride[q] = stride[q - 1] * axis;

    auto neighbor = [&](std::size_t flat, std::size_t q, int dir) {
        std::size_t idx = (flat / stride[q]) % axis;
        long long j = static_cast<long long>(idx) + dir;
        // value extension at the truncation boundary: clamp the index
        return flat + (clamp_idx(j, axis) - idx) * stride[q];
    };

    const double sigma = double(particles) * lip;  // LF viscosity per grid coordinate
    std::vector<double> next(total);

    for (std::size_t s = 0; s < steps; ++s) {
        const std::vector<double>& cur = out.values_.back();
        par::parallel_for(total, [&](std::size_t flat) {
            // diffusion: one directional second difference per space dimension,
            // along the direction moving every particle's k-th coordinate
            double diff = 0.0;
            if (kappa > 0.0) {
                for (std::size_t k = 0; k < dim; ++k) {
                    std::size_t up = flat, dn = flat;
                    for (std::size_t i = 0; i < particles; ++i) {
                        up = neighbor(up, i * dim + k, +1);
                        dn = neighbor(dn, i * dim + k, -1);
                    }
                    diff += (cur[up] - 2.0 * cur[flat] + cur[dn]) / (hh * hh);
                }
            }

            double ham = 0.0;
            double p[2];  // dim <= 2 by the grid-dimension cap
            for (std::size_t i = 0; i < particles; ++i) {
                double visc = 0.0;
                for (std::size_t k = 0; k < dim; ++k) {
                    std::size_t q = i * dim + k;
                    double up = cur[neighbor(flat, q, +1)];
                    double dn = cur[neighbor(flat, q, -1)];
                    double fwd = (up - cur[flat]) / hh;
                    double bwd = (cur[flat] - dn) / hh;
                    p[k] = double(particles) * 0.5 * (fwd + bwd);
                    visc += 0.5 * sigma * (fwd - bwd);
                }
                std::span<const double> xi{coords.data() + flat * gd + i * dim, dim};
                ham += h.truncated(xi, {p, dim}, measures[flat]) - visc;
            }
            ham /= double(particles);

            next[flat] = cur[flat] + dt * (kappa * diff - ham);
        });
        out.values_.push_back(next);
    }
    return out;
}

} // namespace wlab::hjb
