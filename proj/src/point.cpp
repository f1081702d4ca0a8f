#include "phifrac/point.hpp"

#include <algorithm>
#include <cmath>

#include "phifrac/error.hpp"
#include "phifrac/point_csv.hpp"

namespace phifrac {

namespace {

void check_finite(std::span<const double> coords) {
    for (double v : coords)
        if (!std::isfinite(v)) fail(ErrorKind::InvalidInput, "point coordinate is not finite");
}

} // namespace

Point::Point(double x) : c_{x, 0.0}, dim_(1) { check_finite(coords()); }

Point::Point(double x, double y) : c_{x, y}, dim_(2) { check_finite(coords()); }

Point::Point(std::initializer_list<double> coords)
    : Point(std::span<const double>(coords.begin(), coords.size())) {}

Point::Point(std::span<const double> coords) {
    if (coords.empty() || coords.size() > kMaxDim)
        fail(ErrorKind::InvalidInput, "point dimension must be 1 or 2, got " +
                                          std::to_string(coords.size()));
    std::copy(coords.begin(), coords.end(), c_.begin());
    dim_ = coords.size();
    check_finite(this->coords());
}

bool operator==(const Point& a, const Point& b) noexcept {
    if (a.dim_ != b.dim_) return false;
    for (std::size_t i = 0; i < a.dim_; ++i)
        if (a.c_[i] != b.c_[i]) return false;
    return true;
}

bool operator<(const Point& a, const Point& b) noexcept {
    if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
    for (std::size_t i = 0; i < a.dim_; ++i) {
        if (a.c_[i] < b.c_[i]) return true;
        if (b.c_[i] < a.c_[i]) return false;
    }
    return false;
}

std::string Point::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < dim_; ++i) {
        if (i) s += ", ";
        s += format_real(c_[i]);
    }
    return s + ")";
}

double metric_distance(const Point& p, const Point& q) {
    if (p.dim() != q.dim())
        fail(ErrorKind::InvalidInput, "metric_distance: dimension mismatch (" +
                                          std::to_string(p.dim()) + " vs " +
                                          std::to_string(q.dim()) + ")");
    return unchecked_distance(p, q);
}

Box::Box(Point lo, Point hi) : lo_(lo), hi_(hi) {
    if (lo.dim() != hi.dim() || lo.dim() == 0)
        fail(ErrorKind::InvalidInput, "box corners must share a dimension");
    for (std::size_t i = 0; i < lo.dim(); ++i)
        if (!(lo[i] <= hi[i])) fail(ErrorKind::InvalidInput, "box has lo > hi");
}

bool Box::contains(const Point& p, double rel_tol) const noexcept {
    if (p.dim() != dim()) return false;
    for (std::size_t i = 0; i < p.dim(); ++i) {
        const double slack = rel_tol * std::max({1.0, std::abs(lo_[i]), std::abs(hi_[i])});
        if (p[i] < lo_[i] - slack || p[i] > hi_[i] + slack) return false;
    }
    return true;
}

} // namespace phifrac
