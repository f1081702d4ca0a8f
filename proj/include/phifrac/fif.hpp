#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phifrac/comparison.hpp"
#include "phifrac/indexed_family.hpp"

namespace phifrac {

/// Nodes (x_i, y_i), i = 0..N with N >= 2 and strictly increasing x, plus
/// the codomain [a, b] the interpolant is expected to stay in.
struct InterpolationData {
    std::vector<double> x;
    std::vector<double> y;
    double a = 0.0;
    double b = 0.0;

    /// Without `range`, [a, b] = [min y - m, max y + m] with
    /// m = max(1, max y - min y).
    static InterpolationData make(const std::vector<std::pair<double, double>>& nodes,
                                  std::optional<std::pair<double, double>> range = {});

    std::size_t segments() const noexcept { return x.size() - 1; }
    double length() const noexcept { return x.back() - x.front(); }
};

/// The y-part alpha of F(x, y) = q(x) + alpha(y).
class VerticalMap {
public:
    /// y -> s y, |s| < 1, phi = Linear(|s|).
    static VerticalMap scale(double s);
    /// y -> y / (1 + y) for y > -1, phi = RatioShift(1).
    static VerticalMap mobius();

    double operator()(double y) const;
    const ComparisonFunction& phi() const noexcept { return phi_; }
    bool is_scale() const noexcept { return is_scale_; }
    double factor() const noexcept { return s_; }
    std::string describe() const;

private:
    VerticalMap(bool is_scale, double s, ComparisonFunction phi)
        : is_scale_(is_scale), s_(s), phi_(std::move(phi)) {}
    bool is_scale_;
    double s_;
    ComparisonFunction phi_;
};

/// One operator T_k: affine l_i : I -> [x_{i-1}, x_i] and
/// F_i(x, y) = q_i(x) + alpha_i(y) with q_i affine,
/// q_i(x) = slope_i (x - x_0) + offset_i.
class FifOperatorStage {
public:
    /// q_i solved from the join conditions F_i(x_0, y_0) = y_{i-1},
    /// F_i(x_N, y_N) = y_i. `verticals` holds one map per segment, or a
    /// single map shared by all segments.
    static FifOperatorStage pinned(std::shared_ptr<const InterpolationData> data,
                                   std::vector<VerticalMap> verticals);

    /// Explicit (slope, offset) per segment; throws InvalidStage when the join
    /// conditions fail by more than 1e-12.
    static FifOperatorStage from_parts(std::shared_ptr<const InterpolationData> data,
                                       std::vector<VerticalMap> verticals,
                                       std::vector<std::pair<double, double>> q);

    /// Segment index i runs 1..N.
    double l(std::size_t i, double x) const;
    double l_inverse(std::size_t i, double x) const;
    double q(std::size_t i, double x) const;
    double F(std::size_t i, double x, double y) const;

    const InterpolationData& data() const noexcept { return *data_; }
    const std::shared_ptr<const InterpolationData>& data_ptr() const noexcept { return data_; }
    const VerticalMap& vertical(std::size_t i) const { return verticals_[i - 1]; }
    /// Pointwise max of the segments' vertical comparison functions.
    const ComparisonFunction& phi() const noexcept { return phi_; }
    /// max_i |dq_i/dx|: Lipschitz constant of F in x.
    double x_lipschitz() const;

private:
    FifOperatorStage(std::shared_ptr<const InterpolationData> data,
                     std::vector<VerticalMap> verticals,
                     std::vector<std::pair<double, double>> q);
    void check_joins() const;

    std::shared_ptr<const InterpolationData> data_;
    std::vector<VerticalMap> verticals_;
    std::vector<std::pair<double, double>> q_;  ///< (slope, offset)
    ComparisonFunction phi_;
};

/// Samples on a uniform grid of M + 1 points over [x_0, x_N] that contains
/// every node.
class GridFunction {
public:
    GridFunction(std::shared_ptr<const InterpolationData> data, std::size_t intervals,
                 std::vector<double> values);

    /// The polygon through the data.
    static GridFunction piecewise_linear(std::shared_ptr<const InterpolationData> data,
                                         std::size_t intervals);

    /// Smallest multiple of the nodes' common grid with at least
    /// `min_intervals` intervals. Throws InvalidInput if the node spacing has
    /// no common grid of at most 10^6 intervals.
    static std::size_t default_intervals(const InterpolationData& data,
                                         std::size_t min_intervals = 1024);

    std::size_t intervals() const noexcept { return values_.size() - 1; }
    double pitch() const noexcept { return data_->length() / static_cast<double>(intervals()); }
    double x_at(std::size_t j) const;
    /// Linear interpolation at a fractional grid position in [0, M].
    double at_position(double pos) const;
    /// Linear interpolation at x in [x_0, x_N].
    double at(double x) const;

    const std::vector<double>& values() const noexcept { return values_; }
    const std::vector<std::size_t>& node_indices() const noexcept { return nodes_; }
    const InterpolationData& data() const noexcept { return *data_; }
    const std::shared_ptr<const InterpolationData>& data_ptr() const noexcept { return data_; }

    /// values at the node indices equal y_i exactly.
    bool pinned() const;
    /// Every value lies in [a, b] (1e-12 slack).
    bool within_range() const;

private:
    std::shared_ptr<const InterpolationData> data_;
    std::vector<double> values_;
    std::vector<std::size_t> nodes_;
};

/// max_j |f_j - g_j| on the shared grid.
double sup_distance(const GridFunction& f, const GridFunction& g);

/// (T g)(x) = F_i(l_i^{-1}(x), g(l_i^{-1}(x))) for x in [x_{i-1}, x_i], with g
/// read by linear interpolation; node values are written as y_i exactly.
GridFunction apply_T(const FifOperatorStage& stage, const GridFunction& g);

using StageSchedule = IndexedFamily<FifOperatorStage>;

struct FifOptions {
    double tol = 1e-10;
    std::size_t kmax = 200;
};

struct FifResult {
    GridFunction limit;  ///< last iterate; the interpolant when converged
    bool converged = false;
    std::size_t iterations_used = 0;
    double last_gap = 0.0;
    std::vector<double> gaps;  ///< sup|Psi_k - Psi_{k-1}|, gaps[0] = 0
    bool within_range = false;
    std::vector<std::string> warnings;
};

/// Psi_k(g0) = T_1 o ... o T_k (g0), recomputed from g0 for every k, until
/// five consecutive sup-norm steps fall below tol.
FifResult fif_backward(const StageSchedule& stages, const GridFunction& g0,
                       const FifOptions& options = {});

struct MatkowskiReport {
    std::size_t trials = 0;
    double max_violation = 0.0;  ///< max of sup|Tg - Th| - phi(sup|g - h|)
    double slack = 0.0;          ///< x_lipschitz * grid pitch
    bool pass = false;           ///< max_violation <= 1e-10 + slack
};

/// Random pinned pairs with values in [a, b] on a grid of `intervals`
/// (0 picks default_intervals).
MatkowskiReport verify_matkowski(const FifOperatorStage& stage, std::size_t trials,
                                 std::uint64_t seed, std::size_t intervals = 0);

} // namespace phifrac
