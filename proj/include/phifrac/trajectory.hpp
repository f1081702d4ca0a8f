#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phifrac/contractive_map.hpp"
#include "phifrac/indexed_family.hpp"

namespace phifrac {

/// T_1, T_2, ... sharing one invariant domain.
class MapSequence {
public:
    explicit MapSequence(IndexedFamily<ContractiveMap> maps);

    static MapSequence constant(ContractiveMap map);
    static MapSequence periodic(std::vector<ContractiveMap> prefix,
                                std::vector<ContractiveMap> repeat);

    /// 1-based. Generated maps are checked against the shared domain here.
    ContractiveMap at(std::size_t i) const;
    const Box& domain() const noexcept { return domain_; }
    /// phi of each map, in order.
    ComparisonChain chain() const;
    const IndexedFamily<ContractiveMap>& maps() const noexcept { return maps_; }

private:
    IndexedFamily<ContractiveMap> maps_;
    Box domain_;
};

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr std::size_t kDefaultMaxIterations = 10000;
/// Consecutive sub-tolerance steps required to declare convergence.
inline constexpr std::size_t kCauchyRun = 5;

struct TrajectoryResult {
    std::vector<Point> iterates;  ///< iterates[0] = x0
    std::vector<double> gaps;     ///< gaps[k] = d(iterates[k], iterates[k-1]); gaps[0] = 0
    bool converged = false;
    std::optional<Point> limit;
    /// Cluster centres of the last quarter of iterates; filled only when the
    /// run did not converge.
    std::vector<Point> accumulation_points;
    std::size_t iterations_used = 0;
    std::vector<std::string> warnings;
};

/// Phi_k(x0) = T_k o ... o T_1 (x0).
TrajectoryResult forward_trajectory(const MapSequence& seq, const Point& x0,
                                    double tol = kDefaultTolerance,
                                    std::size_t kmax = kDefaultMaxIterations);

/// Psi_k(x0) = T_1 o ... o T_k (x0), recomputed from x0 for every k.
TrajectoryResult backward_trajectory(const MapSequence& seq, const Point& x0,
                                     double tol = kDefaultTolerance,
                                     std::size_t kmax = kDefaultMaxIterations);

/// Psi_depth(x0) alone, in one pass.
Point backward_point(const MapSequence& seq, const Point& x0, std::size_t depth);

enum class Direction { Forward, Backward };

struct SimilarityResult {
    bool similar = false;
    std::vector<double> gaps;    ///< d(traj_k(x0), traj_k(y0)), k = 0..kmax
    std::vector<double> bounds;  ///< comparison-chain bound on gaps[k]
};

/// Similar iff gaps[kmax] < 1e-9 and gaps[k] <= bounds[k] + 1e-12 for every k
/// in the second half of the run. Backward bounds are phi_1 o ... o phi_k (d0);
/// forward bounds compose in the opposite order, phi_k o ... o phi_1 (d0).
SimilarityResult asymptotically_similar(const MapSequence& seq, const Point& x0, const Point& y0,
                                        Direction direction, std::size_t kmax);

/// Greedy radius clustering: each point joins the first cluster whose seed is
/// within `radius`, otherwise it seeds a new one. Returns cluster means.
std::vector<Point> cluster_points(std::span<const Point> points, double radius);

} // namespace phifrac
