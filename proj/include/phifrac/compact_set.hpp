#pragma once

#include <cstddef>
#include <vector>

#include "phifrac/point.hpp"

namespace phifrac {

/// Points closer than this are treated as the same point.
inline constexpr double kDedupTolerance = 1e-12;

/// Finite point-cloud surrogate for a nonempty compact subset of R^d.
///
/// The constructor canonicalizes its input: points are validated (nonempty,
/// one shared dimension), sorted lexicographically and deduplicated at
/// kDedupTolerance, keeping the first point of each cluster in sorted order.
/// `resolution` records the sampling pitch that produced the cloud; 0 marks an
/// exact finite set.
class CompactSet {
public:
    explicit CompactSet(std::vector<Point> points, double resolution = 0.0);

    /// lo, lo + pitch, ..., hi. The endpoints are always included; the step is
    /// adjusted to (hi - lo) / round((hi - lo) / pitch).
    static CompactSet sample_interval(double lo, double hi, double pitch);
    /// Tensor grid over a 1D or 2D box, same rule per axis.
    static CompactSet sample_box(const Box& box, double pitch);

    const std::vector<Point>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    std::size_t dim() const noexcept { return points_.front().dim(); }
    double resolution() const noexcept { return resolution_; }
    const Point& operator[](std::size_t i) const noexcept { return points_[i]; }

    Box bounding_box() const;

    /// A is contained in B up to `tol` (every point of A has a partner in B).
    bool subset_of(const CompactSet& other, double tol = kDedupTolerance) const;

    friend bool operator==(const CompactSet&, const CompactSet&) = default;

private:
    std::vector<Point> points_;
    double resolution_ = 0.0;
};

/// Sort + tolerance dedup, shared by CompactSet and the set operators.
void canonicalize_points(std::vector<Point>& points, double tol = kDedupTolerance);

} // namespace phifrac
