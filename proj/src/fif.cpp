#include "phifrac/fif.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "phifrac/error.hpp"
#include "phifrac/point_csv.hpp"
#include "phifrac/random.hpp"

namespace phifrac {

namespace {

constexpr double kJoinTolerance = 1e-12;
constexpr double kMatkowskiSlack = 1e-10;
constexpr std::size_t kMaxCommonGrid = 1'000'000;
constexpr std::size_t kSummabilityTerms = 256;

bool same_nodes(const InterpolationData& a, const InterpolationData& b) {
    return a.x == b.x && a.y == b.y;
}

} // namespace

InterpolationData InterpolationData::make(const std::vector<std::pair<double, double>>& nodes,
                                          std::optional<std::pair<double, double>> range) {
    if (nodes.size() < 3)
        fail(ErrorKind::InvalidInput, "interpolation data needs at least 3 nodes (N >= 2)");
    InterpolationData d;
    for (const auto& [x, y] : nodes) {
        if (!std::isfinite(x) || !std::isfinite(y))
            fail(ErrorKind::InvalidInput, "interpolation nodes must be finite");
        if (!d.x.empty() && !(x > d.x.back()))
            fail(ErrorKind::InvalidInput, "interpolation abscissae must be strictly increasing");
        d.x.push_back(x);
        d.y.push_back(y);
    }
    const auto [lo, hi] = std::minmax_element(d.y.begin(), d.y.end());
    if (range) {
        d.a = range->first;
        d.b = range->second;
        if (!(d.a <= *lo && *hi <= d.b))
            fail(ErrorKind::InvalidInput, "range [a, b] must contain every y_i");
    } else {
        const double margin = std::max(1.0, *hi - *lo);
        d.a = *lo - margin;
        d.b = *hi + margin;
    }
    return d;
}

VerticalMap VerticalMap::scale(double s) {
    return VerticalMap(true, s, ComparisonFunction::linear(std::abs(s)));
}

VerticalMap VerticalMap::mobius() {
    return VerticalMap(false, 0.0, ComparisonFunction::ratio_shift(1.0));
}

double VerticalMap::operator()(double y) const {
    if (is_scale_) return s_ * y;
    if (!(y > -1.0)) fail(ErrorKind::Domain, "y / (1 + y) needs y > -1, got " + format_real(y));
    return y / (1.0 + y);
}

std::string VerticalMap::describe() const {
    return is_scale_ ? "scale(" + format_real(s_) + ")" : std::string("mobius");
}

FifOperatorStage::FifOperatorStage(std::shared_ptr<const InterpolationData> data,
                                   std::vector<VerticalMap> verticals,
                                   std::vector<std::pair<double, double>> q)
    : data_(std::move(data)), verticals_(std::move(verticals)), q_(std::move(q)),
      phi_([this] {
          std::vector<ComparisonFunction> phis;
          for (const auto& v : verticals_) phis.push_back(v.phi());
          return ComparisonFunction::pointwise_max(std::move(phis));
      }()) {}

namespace {

std::vector<VerticalMap> expand(const InterpolationData& d, std::vector<VerticalMap> v) {
    if (v.size() == 1) v.resize(d.segments(), v.front());
    if (v.size() != d.segments())
        fail(ErrorKind::InvalidStage, "need one vertical map per segment or a single shared one");
    return v;
}

} // namespace

FifOperatorStage FifOperatorStage::pinned(std::shared_ptr<const InterpolationData> data,
                                          std::vector<VerticalMap> verticals) {
    if (!data) fail(ErrorKind::InvalidInput, "stage needs interpolation data");
    verticals = expand(*data, std::move(verticals));
    const auto& d = *data;
    std::vector<std::pair<double, double>> q;
    for (std::size_t i = 1; i <= d.segments(); ++i) {
        const auto& alpha = verticals[i - 1];
        const double offset = d.y[i - 1] - alpha(d.y.front());
        const double end = d.y[i] - alpha(d.y.back());
        q.emplace_back((end - offset) / d.length(), offset);
    }
    FifOperatorStage s(std::move(data), std::move(verticals), std::move(q));
    s.check_joins();
    return s;
}

FifOperatorStage FifOperatorStage::from_parts(std::shared_ptr<const InterpolationData> data,
                                              std::vector<VerticalMap> verticals,
                                              std::vector<std::pair<double, double>> q) {
    if (!data) fail(ErrorKind::InvalidInput, "stage needs interpolation data");
    verticals = expand(*data, std::move(verticals));
    if (q.size() != data->segments())
        fail(ErrorKind::InvalidStage, "need one (slope, offset) pair per segment");
    FifOperatorStage s(std::move(data), std::move(verticals), std::move(q));
    s.check_joins();
    return s;
}

void FifOperatorStage::check_joins() const {
    const auto& d = *data_;
    for (std::size_t i = 1; i <= d.segments(); ++i) {
        const double left = F(i, d.x.front(), d.y.front());
        const double right = F(i, d.x.back(), d.y.back());
        const double tol_l = kJoinTolerance * std::max(1.0, std::abs(d.y[i - 1]));
        const double tol_r = kJoinTolerance * std::max(1.0, std::abs(d.y[i]));
        if (!(std::abs(left - d.y[i - 1]) <= tol_l) || !(std::abs(right - d.y[i]) <= tol_r))
            fail(ErrorKind::InvalidStage,
                 "segment " + std::to_string(i) + " violates the join conditions: F(x_0, y_0) = " +
                     format_real(left) + " (want " + format_real(d.y[i - 1]) +
                     "), F(x_N, y_N) = " + format_real(right) + " (want " +
                     format_real(d.y[i]) + ")");
    }
}

double FifOperatorStage::l(std::size_t i, double x) const {
    const auto& d = *data_;
    return d.x[i - 1] + (x - d.x.front()) * ((d.x[i] - d.x[i - 1]) / d.length());
}

double FifOperatorStage::l_inverse(std::size_t i, double x) const {
    const auto& d = *data_;
    return d.x.front() + (x - d.x[i - 1]) * (d.length() / (d.x[i] - d.x[i - 1]));
}

double FifOperatorStage::q(std::size_t i, double x) const {
    const auto& [slope, offset] = q_[i - 1];
    return slope * (x - data_->x.front()) + offset;
}

double FifOperatorStage::F(std::size_t i, double x, double y) const {
    return q(i, x) + verticals_[i - 1](y);
}

double FifOperatorStage::x_lipschitz() const {
    double m = 0.0;
    for (const auto& [slope, offset] : q_) m = std::max(m, std::abs(slope));
    return m;
}

std::size_t GridFunction::default_intervals(const InterpolationData& d,
                                            std::size_t min_intervals) {
    for (std::size_t m = 1; m <= kMaxCommonGrid; ++m) {
        bool ok = true;
        for (double x : d.x) {
            const double pos = (x - d.x.front()) / d.length() * static_cast<double>(m);
            if (std::abs(pos - std::round(pos)) > 1e-9) {
                ok = false;
                break;
            }
        }
        if (ok) {
            const std::size_t reps = std::max<std::size_t>(1, (min_intervals + m - 1) / m);
            return m * reps;
        }
    }
    fail(ErrorKind::InvalidInput, "interpolation nodes have no common grid of at most 10^6 intervals");
}

GridFunction::GridFunction(std::shared_ptr<const InterpolationData> data, std::size_t intervals,
                           std::vector<double> values)
    : data_(std::move(data)), values_(std::move(values)) {
    if (!data_) fail(ErrorKind::InvalidInput, "grid function needs interpolation data");
    if (intervals == 0 || values_.size() != intervals + 1)
        fail(ErrorKind::InvalidInput, "grid function needs intervals + 1 samples");
    for (double v : values_)
        if (!std::isfinite(v)) fail(ErrorKind::InvalidInput, "grid function values must be finite");
    const double m = static_cast<double>(intervals);
    for (double x : data_->x) {
        const double pos = (x - data_->x.front()) / data_->length() * m;
        const double j = std::round(pos);
        if (std::abs(pos - j) > 1e-6)
            fail(ErrorKind::InvalidInput,
                 "node x = " + format_real(x) + " is not on the " +
                     std::to_string(intervals) + "-interval grid");
        nodes_.push_back(static_cast<std::size_t>(j));
    }
}

GridFunction GridFunction::piecewise_linear(std::shared_ptr<const InterpolationData> data,
                                            std::size_t intervals) {
    GridFunction g(data, intervals, std::vector<double>(intervals + 1, 0.0));
    const auto& nodes = g.nodes_;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        const std::size_t j0 = nodes[i - 1], j1 = nodes[i];
        for (std::size_t j = j0; j <= j1; ++j) {
            const double t = static_cast<double>(j - j0) / static_cast<double>(j1 - j0);
            g.values_[j] = data->y[i - 1] + t * (data->y[i] - data->y[i - 1]);
        }
        g.values_[j1] = data->y[i];
    }
    return g;
}

double GridFunction::x_at(std::size_t j) const {
    if (j == intervals()) return data_->x.back();
    return data_->x.front() + data_->length() * (static_cast<double>(j) / intervals());
}

double GridFunction::at_position(double pos) const {
    const double m = static_cast<double>(intervals());
    pos = std::clamp(pos, 0.0, m);
    const auto k = static_cast<std::size_t>(std::floor(pos));
    if (k >= intervals()) return values_.back();
    const double frac = pos - static_cast<double>(k);
    if (frac == 0.0) return values_[k];
    return values_[k] + frac * (values_[k + 1] - values_[k]);
}

double GridFunction::at(double x) const {
    return at_position((x - data_->x.front()) / data_->length() * intervals());
}

bool GridFunction::pinned() const {
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (values_[nodes_[i]] != data_->y[i]) return false;
    return true;
}

bool GridFunction::within_range() const {
    const double slack = 1e-12 * std::max({1.0, std::abs(data_->a), std::abs(data_->b)});
    return std::all_of(values_.begin(), values_.end(), [&](double v) {
        return v >= data_->a - slack && v <= data_->b + slack;
    });
}

double sup_distance(const GridFunction& f, const GridFunction& g) {
    if (f.intervals() != g.intervals())
        fail(ErrorKind::InvalidInput, "sup_distance needs functions on the same grid");
    double m = 0.0;
    for (std::size_t j = 0; j < f.values().size(); ++j)
        m = std::max(m, std::abs(f.values()[j] - g.values()[j]));
    return m;
}

GridFunction apply_T(const FifOperatorStage& stage, const GridFunction& g) {
    if (!same_nodes(stage.data(), g.data()))
        fail(ErrorKind::InvalidInput, "stage and function use different interpolation data");
    if (!g.pinned()) fail(ErrorKind::InvalidInput, "apply_T needs a function pinned to the data");
    const auto& d = stage.data();
    const auto& nodes = g.node_indices();
    const std::size_t m = g.intervals();
    std::vector<double> out(m + 1, 0.0);
    for (std::size_t i = 1; i <= d.segments(); ++i) {
        const std::size_t j0 = nodes[i - 1], j1 = nodes[i];
        const double scale = static_cast<double>(m) / static_cast<double>(j1 - j0);
        for (std::size_t j = j0 + 1; j < j1; ++j) {
            // Grid position of l_i^{-1}(x_j).
            const double pos = static_cast<double>(j - j0) * scale;
            const double u = d.x.front() + d.length() * (pos / static_cast<double>(m));
            out[j] = stage.F(i, u, g.at_position(pos));
        }
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) out[nodes[i]] = d.y[i];
    return GridFunction(g.data_ptr(), m, std::move(out));
}

FifResult fif_backward(const StageSchedule& stages, const GridFunction& g0,
                       const FifOptions& options) {
    if (!(options.tol > 0.0) || !std::isfinite(options.tol) || options.kmax == 0)
        fail(ErrorKind::InvalidInput, "fif_backward needs a finite tol > 0 and kmax >= 1");
    FifResult res{g0, false, 0, 0.0, {0.0}, false, {}};
    std::vector<FifOperatorStage> materialized;
    std::size_t run_len = 0;
    for (std::size_t k = 1; k <= options.kmax; ++k) {
        materialized.push_back(stages.at(k));
        if (!same_nodes(materialized.back().data(), g0.data()))
            fail(ErrorKind::InvalidInput, "stage " + std::to_string(k) + " uses different data");
        GridFunction psi = g0;
        for (std::size_t i = k; i >= 1; --i) psi = apply_T(materialized[i - 1], psi);
        const double gap = sup_distance(psi, res.limit);
        res.gaps.push_back(gap);
        res.last_gap = gap;
        res.iterations_used = k;
        res.limit = std::move(psi);
        run_len = gap < options.tol ? run_len + 1 : 0;
        if (run_len >= 5) {
            res.converged = true;
            break;
        }
    }
    res.within_range = res.limit.within_range();
    if (!res.within_range)
        res.warnings.push_back("interpolant leaves the codomain [a, b]");
    const auto& d = g0.data();
    const auto chain = stages.transform([](const FifOperatorStage& s) { return s.phi(); });
    if (!chain_series_sum(chain, std::max(d.b - d.a, 1e-12), kSummabilityTerms).converged)
        res.warnings.push_back("comparison-chain series did not converge within " +
                               std::to_string(kSummabilityTerms) +
                               " terms; backward convergence is not guaranteed");
    return res;
}

MatkowskiReport verify_matkowski(const FifOperatorStage& stage, std::size_t trials,
                                 std::uint64_t seed, std::size_t intervals) {
    if (trials == 0) fail(ErrorKind::InvalidInput, "verify_matkowski needs trials >= 1");
    const auto& d = stage.data();
    if (intervals == 0) intervals = GridFunction::default_intervals(d);
    Rng rng(seed);
    const GridFunction base = GridFunction::piecewise_linear(stage.data_ptr(), intervals);
    const auto pin = [&](std::vector<double> v) {
        for (std::size_t i = 0; i < base.node_indices().size(); ++i) v[base.node_indices()[i]] = d.y[i];
        return GridFunction(stage.data_ptr(), intervals, std::move(v));
    };

    MatkowskiReport rep;
    rep.trials = trials;
    rep.slack = stage.x_lipschitz() * base.pitch();
    rep.max_violation = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < trials; ++t) {
        std::vector<double> gv(intervals + 1), hv(intervals + 1);
        const double lambda = rng.uniform(0.0, 1.0);
        for (std::size_t j = 0; j <= intervals; ++j) {
            gv[j] = rng.uniform(d.a, d.b);
            hv[j] = gv[j] + lambda * (rng.uniform(d.a, d.b) - gv[j]);
        }
        const GridFunction g = pin(std::move(gv));
        const GridFunction h = pin(std::move(hv));
        const double lhs = sup_distance(apply_T(stage, g), apply_T(stage, h));
        rep.max_violation = std::max(rep.max_violation, lhs - stage.phi()(sup_distance(g, h)));
    }
    rep.pass = rep.max_violation <= kMatkowskiSlack + rep.slack;
    return rep;
}

} // namespace phifrac
