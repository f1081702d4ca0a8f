#include "phifrac/hausdorff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "phifrac/error.hpp"

namespace phifrac {

namespace {

constexpr std::size_t kBruteForceWork = 1u << 14;
constexpr long long kMaxCellsPerAxis2D = 2048;
constexpr long long kMaxCells1D = 1 << 22;

void check_dims(const CompactSet& a, const CompactSet& b) {
    if (a.dim() != b.dim())
        fail(ErrorKind::InvalidInput, "Hausdorff distance: dimension mismatch");
}

DirectedDistance brute_force(const CompactSet& a, const CompactSet& b) {
    DirectedDistance out{-1.0, 0, 0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_j = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            const double d = unchecked_distance(a[i], b[j]);
            if (d < best) {
                best = d;
                best_j = j;
            }
        }
        if (best > out.value) out = {best, i, best_j};
    }
    return out;
}

DirectedDistance via_grid(const CompactSet& a, const CompactSet& b) {
    const NearestNeighborGrid grid(b.points());
    DirectedDistance out{-1.0, 0, 0};
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto hit = grid.nearest(a[i]);
        if (hit.distance > out.value) out = {hit.distance, i, hit.index};
    }
    return out;
}

long long clamp_cell(double v) {
    constexpr double lim = 1e15;
    return static_cast<long long>(std::floor(std::clamp(v, -lim, lim)));
}

} // namespace

NearestNeighborGrid::NearestNeighborGrid(const std::vector<Point>& points)
    : points_(&points), dim_(points.empty() ? 1 : points.front().dim()) {
    if (points.empty()) fail(ErrorKind::InvalidInput, "nearest-neighbour grid needs points");
    double hi[2] = {points.front()[0], dim_ > 1 ? points.front()[1] : 0.0};
    lo_[0] = hi[0];
    lo_[1] = hi[1];
    for (const Point& p : points)
        for (std::size_t k = 0; k < dim_; ++k) {
            lo_[k] = std::min(lo_[k], p[k]);
            hi[k] = std::max(hi[k], p[k]);
        }
    if (dim_ == 1) {
        // Sorted index; stable so equal coordinates stay in index order.
        order_.resize(points.size());
        for (std::size_t i = 0; i < points.size(); ++i) order_[i] = i;
        std::stable_sort(order_.begin(), order_.end(),
                         [&](std::size_t a, std::size_t b) { return points[a][0] < points[b][0]; });
        sorted_x_.reserve(points.size());
        for (std::size_t i : order_) sorted_x_.push_back(points[i][0]);
        return;
    }
    const double n = static_cast<double>(points.size());
    const double ex = hi[0] - lo_[0];
    const double ey = dim_ > 1 ? hi[1] - lo_[1] : 0.0;
    if (dim_ == 1) {
        cell_ = ex > 0.0 ? ex / std::min(n, static_cast<double>(kMaxCells1D)) : 1.0;
    } else {
        const double area = std::max(ex, 1e-300) * std::max(ey, 1e-300);
        if (ex > 0.0 && ey > 0.0)
            cell_ = std::sqrt(area / n);
        else
            cell_ = std::max(ex, ey) > 0.0 ? std::max(ex, ey) / std::sqrt(n) : 1.0;
        cell_ = std::max(cell_, std::max(ex, ey) / kMaxCellsPerAxis2D);
    }
    cells_[0] = std::max(1LL, clamp_cell(ex / cell_) + 1);
    cells_[1] = dim_ > 1 ? std::max(1LL, clamp_cell(ey / cell_) + 1) : 1;

    // CSR layout; indices inside a cell stay ascending.
    const auto cell_of = [&](const Point& p) {
        long long cx = std::clamp(clamp_cell((p[0] - lo_[0]) / cell_), 0LL, cells_[0] - 1);
        long long cy = dim_ > 1
                           ? std::clamp(clamp_cell((p[1] - lo_[1]) / cell_), 0LL, cells_[1] - 1)
                           : 0LL;
        return static_cast<std::size_t>(cy * cells_[0] + cx);
    };
    const auto total = static_cast<std::size_t>(cells_[0] * cells_[1]);
    cell_start_.assign(total + 1, 0);
    std::vector<std::size_t> cell_id(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        cell_id[i] = cell_of(points[i]);
        ++cell_start_[cell_id[i] + 1];
    }
    for (std::size_t c = 0; c < total; ++c) cell_start_[c + 1] += cell_start_[c];
    order_.resize(points.size());
    std::vector<std::size_t> fill(cell_start_.begin(), cell_start_.end() - 1);
    for (std::size_t i = 0; i < points.size(); ++i) order_[fill[cell_id[i]]++] = i;
}

void NearestNeighborGrid::scan_cell(long long cx, long long cy, const Point& q, Hit& best) const {
    if (cx < 0 || cy < 0 || cx >= cells_[0] || cy >= cells_[1]) return;
    const auto c = static_cast<std::size_t>(cy * cells_[0] + cx);
    for (std::size_t k = cell_start_[c]; k < cell_start_[c + 1]; ++k) {
        const std::size_t i = order_[k];
        const double d = unchecked_distance((*points_)[i], q);
        if (d < best.distance || (d == best.distance && i < best.index)) best = {d, i};
    }
}

NearestNeighborGrid::Hit NearestNeighborGrid::nearest_sorted(const Point& q) const {
    const auto begin = sorted_x_.begin();
    const auto right = std::lower_bound(begin, sorted_x_.end(), q[0]);
    Hit best{std::numeric_limits<double>::infinity(), 0};
    const auto consider = [&](std::vector<double>::const_iterator it) {
        // First entry of the run of equal coordinates carries the lowest index.
        const auto first = std::lower_bound(begin, it, *it);
        const std::size_t idx = order_[static_cast<std::size_t>(first - begin)];
        const double d = unchecked_distance((*points_)[idx], q);
        if (d < best.distance || (d == best.distance && idx < best.index)) best = {d, idx};
    };
    if (right != sorted_x_.end()) consider(right);
    if (right != begin) consider(right - 1);
    return best;
}

NearestNeighborGrid::Hit NearestNeighborGrid::nearest(const Point& q) const {
    if (q.dim() != dim_) fail(ErrorKind::InvalidInput, "nearest-neighbour query: dimension mismatch");
    if (dim_ == 1) return nearest_sorted(q);
    const long long qx = clamp_cell((q[0] - lo_[0]) / cell_);
    const long long qy = dim_ > 1 ? clamp_cell((q[1] - lo_[1]) / cell_) : 0;

    const auto gap = [](long long v, long long n) {
        return v < 0 ? -v : (v >= n ? v - (n - 1) : 0LL);
    };
    const auto reach = [](long long v, long long n) { return std::max(std::llabs(v), std::llabs(v - (n - 1))); };
    const long long r0 = std::max(gap(qx, cells_[0]), gap(qy, cells_[1]));
    const long long rmax = std::max(reach(qx, cells_[0]), reach(qy, cells_[1]));

    Hit best{std::numeric_limits<double>::infinity(), 0};
    for (long long r = r0; r <= rmax; ++r) {
        if (r == 0) {
            scan_cell(qx, qy, q, best);
        } else if (dim_ == 1) {
            scan_cell(qx - r, 0, q, best);
            scan_cell(qx + r, 0, q, best);
        } else {
            const long long x0 = std::max(qx - r, 0LL), x1 = std::min(qx + r, cells_[0] - 1);
            for (long long x = x0; x <= x1; ++x) {
                scan_cell(x, qy - r, q, best);
                scan_cell(x, qy + r, q, best);
            }
            const long long y0 = std::max(qy - r + 1, 0LL), y1 = std::min(qy + r - 1, cells_[1] - 1);
            for (long long y = y0; y <= y1; ++y) {
                scan_cell(qx - r, y, q, best);
                scan_cell(qx + r, y, q, best);
            }
        }
        // Unvisited cells are at least r cells away; one cell of slack absorbs
        // rounding in the cell coordinates of q.
        if (best.distance < static_cast<double>(r - 1) * cell_) break;
    }
    return best;
}

DirectedDistance directed_distance_detail(const CompactSet& a, const CompactSet& b,
                                          HausdorffMethod method) {
    check_dims(a, b);
    if (method == HausdorffMethod::Auto)
        method = a.size() * b.size() <= kBruteForceWork ? HausdorffMethod::BruteForce
                                                        : HausdorffMethod::Grid;
    return method == HausdorffMethod::BruteForce ? brute_force(a, b) : via_grid(a, b);
}

double directed_distance(const CompactSet& a, const CompactSet& b, HausdorffMethod method) {
    return directed_distance_detail(a, b, method).value;
}

double hausdorff_distance(const CompactSet& a, const CompactSet& b, HausdorffMethod method) {
    check_dims(a, b);
    return std::max(directed_distance(a, b, method), directed_distance(b, a, method));
}

} // namespace phifrac
