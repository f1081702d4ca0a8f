#pragma once

#include <cstddef>
#include <vector>

#include "phifrac/compact_set.hpp"

namespace phifrac {

/// max over a in A of min over b in B, with the witnessing pair.
/// Ties keep the first index in storage order, on both loops.
struct DirectedDistance {
    double value = 0.0;
    std::size_t from_index = 0;  ///< index into A of the farthest point
    std::size_t to_index = 0;    ///< index into B of its nearest neighbour
};

enum class HausdorffMethod {
    Auto,        ///< brute force for small inputs, grid index otherwise
    BruteForce,  ///< O(|A||B|) double loop; the reference path
    Grid,        ///< uniform-grid nearest-neighbour index over B
};

DirectedDistance directed_distance_detail(const CompactSet& a, const CompactSet& b,
                                          HausdorffMethod method = HausdorffMethod::Auto);

double directed_distance(const CompactSet& a, const CompactSet& b,
                         HausdorffMethod method = HausdorffMethod::Auto);

double hausdorff_distance(const CompactSet& a, const CompactSet& b,
                          HausdorffMethod method = HausdorffMethod::Auto);

/// Nearest-neighbour index over a fixed point list: a uniform grid in 2D, a
/// sorted coordinate array in 1D.
///
/// Queries return exactly the distance the brute-force scan would (the same
/// distance kernel is used) and resolve ties toward the lower index.
class NearestNeighborGrid {
public:
    explicit NearestNeighborGrid(const std::vector<Point>& points);

    struct Hit {
        double distance;
        std::size_t index;
    };
    Hit nearest(const Point& q) const;

private:
    const std::vector<Point>* points_;
    std::size_t dim_;
    double lo_[2]{0.0, 0.0};
    double cell_ = 1.0;
    long long cells_[2]{1, 1};
    std::vector<std::size_t> cell_start_;
    std::vector<std::size_t> order_;
    std::vector<double> sorted_x_;  ///< 1D only: coordinates in order_
    Hit nearest_sorted(const Point& q) const;

    void scan_cell(long long cx, long long cy, const Point& q, Hit& best) const;
};

} // namespace phifrac
