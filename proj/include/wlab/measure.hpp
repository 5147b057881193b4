#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "wlab/errors.hpp"

namespace wlab {

// A point of the state space R^d.
struct Point {
    std::vector<double> coords;

    Point() = default;
    explicit Point(std::vector<double> c);
    Point(std::initializer_list<double> c) : Point(std::vector<double>(c)) {}

    std::size_t dim() const { return coords.size(); }
    double operator[](std::size_t k) const { return coords[k]; }
};

double squared_distance(std::span<const double> a, std::span<const double> b);
double distance(std::span<const double> a, std::span<const double> b);

// N points in R^d, each carrying mass 1/N. Storage is flat row-major.
class EmpiricalMeasure {
public:
    EmpiricalMeasure(std::size_t dim, std::vector<double> flat);
    explicit EmpiricalMeasure(const std::vector<Point>& pts);

    std::size_t size() const { return n_; }
    std::size_t dim() const { return dim_; }
    std::span<const double> point(std::size_t i) const {
        return {data_.data() + i * dim_, dim_};
    }
    const std::vector<double>& data() const { return data_; }
    Point point_at(std::size_t i) const;

private:
    std::size_t dim_;
    std::size_t n_;
    std::vector<double> data_;
};

// M equal-weight samples standing in for an absolutely continuous measure.
class SampledMeasure {
public:
    SampledMeasure(std::size_t dim, std::vector<double> flat, std::string source);

    // Midpoint grid on [0,1]^d with per_axis^d cells; deterministic.
    static SampledMeasure uniform_cube_grid(std::size_t dim, std::size_t per_axis);
    // Independent uniform draws on [0,1]^d from the counter generator.
    static SampledMeasure uniform_cube_random(std::size_t dim, std::size_t count,
                                              std::uint64_t seed);

    std::size_t size() const { return n_; }
    std::size_t dim() const { return dim_; }
    std::span<const double> point(std::size_t i) const {
        return {data_.data() + i * dim_, dim_};
    }
    const std::vector<double>& data() const { return data_; }
    const std::string& source() const { return source_; }
    EmpiricalMeasure as_empirical() const { return {dim_, data_}; }

private:
    std::size_t dim_;
    std::size_t n_;
    std::vector<double> data_;
    std::string source_;
};

// Second moment (1/N) sum |x^i|^2.
double m2(const EmpiricalMeasure& m);

// Barycenter of the point cloud.
Point mean_point(const EmpiricalMeasure& m);

// Pushforward under x -> x + z.
EmpiricalMeasure shift(const EmpiricalMeasure& m, const Point& z);

} // namespace wlab
