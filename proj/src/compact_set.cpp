#include "phifrac/compact_set.hpp"

#include <algorithm>
#include <cmath>

#include "phifrac/error.hpp"

namespace phifrac {

void canonicalize_points(std::vector<Point>& points, double tol) {
    if (!std::is_sorted(points.begin(), points.end())) std::sort(points.begin(), points.end());
    // Sorted by first coordinate, so any duplicate of p among the kept points
    // lies in the trailing window whose first coordinate is >= p[0] - tol.
    std::vector<Point> kept;
    kept.reserve(points.size());
    for (const Point& p : points) {
        bool dup = false;
        for (auto it = kept.rbegin(); it != kept.rend() && (*it)[0] >= p[0] - tol; ++it) {
            if (unchecked_distance(*it, p) <= tol) {
                dup = true;
                break;
            }
        }
        if (!dup) kept.push_back(p);
    }
    points = std::move(kept);
}

CompactSet::CompactSet(std::vector<Point> points, double resolution)
    : points_(std::move(points)), resolution_(resolution) {
    if (points_.empty()) fail(ErrorKind::InvalidInput, "compact set must be nonempty");
    if (!(resolution_ >= 0.0) || !std::isfinite(resolution_))
        fail(ErrorKind::InvalidInput, "compact set resolution must be finite and >= 0");
    const std::size_t d = points_.front().dim();
    for (const Point& p : points_)
        if (p.dim() != d) fail(ErrorKind::InvalidInput, "compact set mixes point dimensions");
    canonicalize_points(points_);
}

namespace {

std::vector<double> axis_samples(double lo, double hi, double pitch) {
    if (!(pitch > 0.0) || !std::isfinite(pitch))
        fail(ErrorKind::InvalidInput, "sampling pitch must be positive");
    if (!(lo <= hi)) fail(ErrorKind::InvalidInput, "sampling interval has lo > hi");
    const double span = hi - lo;
    const auto n = static_cast<std::size_t>(std::max(1.0, std::round(span / pitch)));
    std::vector<double> out(n + 1);
    for (std::size_t i = 0; i <= n; ++i) out[i] = lo + span * (static_cast<double>(i) / n);
    out.back() = hi;
    return out;
}

} // namespace

CompactSet CompactSet::sample_interval(double lo, double hi, double pitch) {
    std::vector<Point> pts;
    for (double x : axis_samples(lo, hi, pitch)) pts.emplace_back(x);
    return CompactSet(std::move(pts), pitch);
}

CompactSet CompactSet::sample_box(const Box& box, double pitch) {
    if (box.dim() == 1) return sample_interval(box.lo()[0], box.hi()[0], pitch);
    const auto xs = axis_samples(box.lo()[0], box.hi()[0], pitch);
    const auto ys = axis_samples(box.lo()[1], box.hi()[1], pitch);
    std::vector<Point> pts;
    pts.reserve(xs.size() * ys.size());
    for (double x : xs)
        for (double y : ys) pts.emplace_back(x, y);
    return CompactSet(std::move(pts), pitch);
}

Box CompactSet::bounding_box() const {
    const std::size_t d = dim();
    double lo[2] = {points_.front()[0], d > 1 ? points_.front()[1] : 0.0};
    double hi[2] = {lo[0], lo[1]};
    for (const Point& p : points_)
        for (std::size_t i = 0; i < d; ++i) {
            lo[i] = std::min(lo[i], p[i]);
            hi[i] = std::max(hi[i], p[i]);
        }
    return Box(Point(std::span<const double>(lo, d)), Point(std::span<const double>(hi, d)));
}

bool CompactSet::subset_of(const CompactSet& other, double tol) const {
    if (dim() != other.dim()) return false;
    for (const Point& p : points_) {
        auto it = std::lower_bound(other.points_.begin(), other.points_.end(), p[0] - tol,
                                   [](const Point& q, double x) { return q[0] < x; });
        bool found = false;
        for (; it != other.points_.end() && (*it)[0] <= p[0] + tol; ++it)
            if (unchecked_distance(*it, p) <= tol) {
                found = true;
                break;
            }
        if (!found) return false;
    }
    return true;
}

} // namespace phifrac
