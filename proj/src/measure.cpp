#include "wlab/measure.hpp"

#include <cmath>

#include "wlab/rng.hpp"

namespace wlab {

namespace {
void require_finite(const std::vector<double>& v, const char* what) {
    for (double x : v)
        if (!std::isfinite(x)) throw invalid_input(std::string(what) + ": non-finite entry");
}
} // namespace

Point::Point(std::vector<double> c) : coords(std::move(c)) {
    require_finite(coords, "Point");
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double diff = a[k] - b[k];
        s += diff * diff;
    }
    return s;
}

double distance(std::span<const double> a, std::span<const double> b) {
    return std::sqrt(squared_distance(a, b));
}

EmpiricalMeasure::EmpiricalMeasure(std::size_t dim, std::vector<double> flat)
    : dim_(dim), n_(dim == 0 ? 0 : flat.size() / dim), data_(std::move(flat)) {
    if (dim_ == 0) throw invalid_input("EmpiricalMeasure: dim must be >= 1");
    if (n_ == 0 || n_ * dim_ != data_.size())
        throw invalid_input("EmpiricalMeasure: point data is not a nonempty N x d table");
    require_finite(data_, "EmpiricalMeasure");
}

EmpiricalMeasure::EmpiricalMeasure(const std::vector<Point>& pts)
    : dim_(pts.empty() ? 0 : pts.front().dim()), n_(pts.size()) {
    if (n_ == 0) throw invalid_input("EmpiricalMeasure: need at least one point");
    if (dim_ == 0) throw invalid_input("EmpiricalMeasure: dim must be >= 1");
    data_.reserve(n_ * dim_);
    for (const auto& p : pts) {
        if (p.dim() != dim_) throw invalid_input("EmpiricalMeasure: mixed point dimensions");
        data_.insert(data_.end(), p.coords.begin(), p.coords.end());
    }
    require_finite(data_, "EmpiricalMeasure");
}

Point EmpiricalMeasure::point_at(std::size_t i) const {
    auto s = point(i);
    return Point(std::vector<double>(s.begin(), s.end()));
}

SampledMeasure::SampledMeasure(std::size_t dim, std::vector<double> flat, std::string source)
    : dim_(dim), n_(dim == 0 ? 0 : flat.size() / dim), data_(std::move(flat)),
      source_(std::move(source)) {
    if (dim_ == 0) throw invalid_input("SampledMeasure: dim must be >= 1");
    if (n_ == 0 || n_ * dim_ != data_.size())
        throw invalid_input("SampledMeasure: sample data is not a nonempty M x d table");
    require_finite(data_, "SampledMeasure");
}

SampledMeasure SampledMeasure::uniform_cube_grid(std::size_t dim, std::size_t per_axis) {
    if (dim == 0 || per_axis == 0) throw invalid_input("uniform_cube_grid: empty grid");
    std::size_t count = 1;
    for (std::size_t k = 0; k < dim; ++k) count *= per_axis;
    std::vector<double> data(count * dim);
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t rest = i;
        for (std::size_t k = 0; k < dim; ++k) {
            data[i * dim + k] = (double(rest % per_axis) + 0.5) / double(per_axis);
            rest /= per_axis;
        }
    }
    return {dim, std::move(data), "uniform-cube-grid"};
}

SampledMeasure SampledMeasure::uniform_cube_random(std::size_t dim, std::size_t count,
                                                   std::uint64_t seed) {
    if (dim == 0 || count == 0) throw invalid_input("uniform_cube_random: empty sample");
    CounterRng rng(seed, 0x5a3d);
    std::vector<double> data(count * dim);
    for (auto& x : data) x = rng.next_double();
    return {dim, std::move(data), "uniform-cube-random"};
}

double m2(const EmpiricalMeasure& m) {
    double s = 0.0;
    for (double x : m.data()) s += x * x;
    return s / double(m.size());
}

Point mean_point(const EmpiricalMeasure& m) {
    std::vector<double> mu(m.dim(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i) {
        auto p = m.point(i);
        for (std::size_t k = 0; k < m.dim(); ++k) mu[k] += p[k];
    }
    for (auto& x : mu) x /= double(m.size());
    return Point(std::move(mu));
}

EmpiricalMeasure shift(const EmpiricalMeasure& m, const Point& z) {
    if (z.dim() != m.dim()) throw invalid_input("shift: dimension mismatch");
    std::vector<double> data = m.data();
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t k = 0; k < m.dim(); ++k) data[i * m.dim() + k] += z[k];
    return {m.dim(), std::move(data)};
}

} // namespace wlab
