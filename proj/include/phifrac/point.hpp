#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>

namespace phifrac {

/// A point of R^1 or R^2. Coordinates are always finite.
class Point {
public:
    static constexpr std::size_t kMaxDim = 2;

    Point() = default;
    explicit Point(double x);
    Point(double x, double y);
    Point(std::initializer_list<double> coords);
    explicit Point(std::span<const double> coords);

    std::size_t dim() const noexcept { return dim_; }
    double operator[](std::size_t i) const noexcept { return c_[i]; }
    std::span<const double> coords() const noexcept { return {c_.data(), dim_}; }

    friend bool operator==(const Point& a, const Point& b) noexcept;
    /// Lexicographic order on coordinates.
    friend bool operator<(const Point& a, const Point& b) noexcept;

    std::string str() const;

private:
    std::array<double, kMaxDim> c_{0.0, 0.0};
    std::size_t dim_ = 0;
};

/// Euclidean distance. Throws InvalidInput on dimension mismatch.
double metric_distance(const Point& p, const Point& q);

/// Same as metric_distance without the dimension check.
inline double unchecked_distance(const Point& p, const Point& q) noexcept {
    if (p.dim() == 1) return std::abs(p[0] - q[0]);
    const double dx = p[0] - q[0];
    const double dy = p[1] - q[1];
    return std::sqrt(dx * dx + dy * dy);
}

/// Axis-aligned closed box with finite bounds.
class Box {
public:
    Box() = default;
    Box(Point lo, Point hi);
    static Box interval(double lo, double hi) { return Box(Point(lo), Point(hi)); }

    std::size_t dim() const noexcept { return lo_.dim(); }
    const Point& lo() const noexcept { return lo_; }
    const Point& hi() const noexcept { return hi_; }
    double diameter() const noexcept { return unchecked_distance(lo_, hi_); }

    /// Membership with a relative slack of `rel_tol` on each bound.
    bool contains(const Point& p, double rel_tol = 1e-12) const noexcept;

    friend bool operator==(const Box&, const Box&) = default;

private:
    Point lo_;
    Point hi_;
};

} // namespace phifrac
