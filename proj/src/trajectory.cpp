#include "phifrac/trajectory.hpp"

#include <algorithm>
#include <cmath>

#include "phifrac/error.hpp"
#include "phifrac/point_csv.hpp"

namespace phifrac {

namespace {

constexpr double kClusterRadiusFactor = 10.0;
constexpr std::size_t kSummabilityTerms = 256;
constexpr double kSimilarityGap = 1e-9;
constexpr double kBoundSlack = 1e-12;

void check_options(double tol, std::size_t kmax) {
    if (!(tol > 0.0) || !std::isfinite(tol))
        fail(ErrorKind::InvalidInput, "trajectory tolerance must be finite and > 0");
    if (kmax == 0) fail(ErrorKind::InvalidInput, "trajectory kmax must be >= 1");
}

void check_start(const MapSequence& seq, const Point& x0) {
    if (!seq.domain().contains(x0))
        fail(ErrorKind::Domain, "starting point " + x0.str() + " lies outside the domain");
}

/// Shared driver: `next(k, prev)` produces iterate k.
template <class Next>
TrajectoryResult run(const Point& x0, double tol, std::size_t kmax, Next next) {
    TrajectoryResult res;
    res.iterates.push_back(x0);
    res.gaps.push_back(0.0);
    std::size_t run_len = 0;
    for (std::size_t k = 1; k <= kmax; ++k) {
        Point p = next(k, res.iterates.back());
        const double gap = unchecked_distance(p, res.iterates.back());
        res.iterates.push_back(p);
        res.gaps.push_back(gap);
        res.iterations_used = k;
        run_len = gap < tol ? run_len + 1 : 0;
        if (run_len >= kCauchyRun) {
            res.converged = true;
            res.limit = p;
            return res;
        }
    }
    const std::size_t tail = std::max<std::size_t>(1, kmax / 4);
    res.accumulation_points = cluster_points(
        std::span(res.iterates).last(std::min(tail, res.iterates.size())),
        kClusterRadiusFactor * tol);
    return res;
}

void warn_if_not_summable(const MapSequence& seq, TrajectoryResult& res) {
    const double t = std::max(seq.domain().diameter(), 1e-12);
    if (!chain_series_sum(seq.chain(), t, kSummabilityTerms).converged)
        res.warnings.push_back(
            "comparison-chain series did not converge within " +
            std::to_string(kSummabilityTerms) +
            " terms; backward convergence is not guaranteed");
}

} // namespace

MapSequence::MapSequence(IndexedFamily<ContractiveMap> maps)
    : maps_(std::move(maps)), domain_(maps_.at(1).domain()) {
    auto check = [this](const std::vector<ContractiveMap>& ms) {
        for (const auto& m : ms)
            if (!(m.domain() == domain_))
                fail(ErrorKind::InvalidInput, "all maps of a sequence must share one domain");
    };
    check(maps_.prefix());
    if (maps_.is_periodic()) check(maps_.repeat());
}

MapSequence MapSequence::constant(ContractiveMap map) {
    return MapSequence(IndexedFamily<ContractiveMap>::constant(std::move(map)));
}

MapSequence MapSequence::periodic(std::vector<ContractiveMap> prefix,
                                  std::vector<ContractiveMap> repeat) {
    return MapSequence(
        IndexedFamily<ContractiveMap>::periodic(std::move(prefix), std::move(repeat)));
}

ContractiveMap MapSequence::at(std::size_t i) const {
    ContractiveMap m = maps_.at(i);
    if (!(m.domain() == domain_))
        fail(ErrorKind::InvalidInput, "map " + std::to_string(i) + " leaves the shared domain");
    return m;
}

ComparisonChain MapSequence::chain() const {
    return maps_.transform([](const ContractiveMap& m) { return m.phi(); });
}

TrajectoryResult forward_trajectory(const MapSequence& seq, const Point& x0, double tol,
                                    std::size_t kmax) {
    check_options(tol, kmax);
    check_start(seq, x0);
    return run(x0, tol, kmax,
               [&](std::size_t k, const Point& prev) { return seq.at(k).apply(prev); });
}

TrajectoryResult backward_trajectory(const MapSequence& seq, const Point& x0, double tol,
                                     std::size_t kmax) {
    check_options(tol, kmax);
    check_start(seq, x0);
    // The new map enters innermost, so every iterate starts again from x0.
    std::vector<ContractiveMap> maps;
    auto res = run(x0, tol, kmax, [&](std::size_t k, const Point&) {
        maps.push_back(seq.at(k));
        Point p = x0;
        for (std::size_t i = k; i >= 1; --i) p = maps[i - 1].apply(p);
        return p;
    });
    warn_if_not_summable(seq, res);
    return res;
}

Point backward_point(const MapSequence& seq, const Point& x0, std::size_t depth) {
    check_start(seq, x0);
    Point p = x0;
    for (std::size_t i = depth; i >= 1; --i) p = seq.at(i).apply(p);
    return p;
}

SimilarityResult asymptotically_similar(const MapSequence& seq, const Point& x0, const Point& y0,
                                        Direction direction, std::size_t kmax) {
    if (kmax == 0) fail(ErrorKind::InvalidInput, "similarity check needs kmax >= 1");
    check_start(seq, x0);
    check_start(seq, y0);
    const auto maps = seq.maps().first(kmax);
    const auto chain = seq.chain().first(kmax);
    const double d0 = metric_distance(x0, y0);

    SimilarityResult out;
    out.gaps.push_back(d0);
    out.bounds.push_back(d0);
    Point fx = x0, fy = y0;
    double fwd_bound = d0;
    for (std::size_t k = 1; k <= kmax; ++k) {
        if (direction == Direction::Forward) {
            fx = maps[k - 1].apply(fx);
            fy = maps[k - 1].apply(fy);
            fwd_bound = chain[k - 1](fwd_bound);
            out.gaps.push_back(unchecked_distance(fx, fy));
            out.bounds.push_back(fwd_bound);
        } else {
            Point bx = x0, by = y0;
            for (std::size_t i = k; i >= 1; --i) {
                bx = maps[i - 1].apply(bx);
                by = maps[i - 1].apply(by);
            }
            out.gaps.push_back(unchecked_distance(bx, by));
            out.bounds.push_back(compose(std::span(chain).first(k), d0));
        }
    }
    bool dominated = true;
    for (std::size_t k = kmax / 2; k <= kmax; ++k)
        dominated = dominated && out.gaps[k] <= out.bounds[k] + kBoundSlack;
    out.similar = out.gaps.back() < kSimilarityGap && dominated;
    return out;
}

std::vector<Point> cluster_points(std::span<const Point> points, double radius) {
    struct Cluster {
        Point seed;
        double sum[2];
        std::size_t n;
    };
    std::vector<Cluster> clusters;
    for (const Point& p : points) {
        auto it = std::find_if(clusters.begin(), clusters.end(), [&](const Cluster& c) {
            return unchecked_distance(c.seed, p) <= radius;
        });
        if (it == clusters.end()) {
            clusters.push_back({p, {0.0, 0.0}, 0});
            it = std::prev(clusters.end());
        }
        for (std::size_t i = 0; i < p.dim(); ++i) it->sum[i] += p[i];
        ++it->n;
    }
    std::vector<Point> centres;
    for (const auto& c : clusters) {
        double mean[2] = {c.sum[0] / c.n, c.sum[1] / c.n};
        centres.emplace_back(std::span<const double>(mean, c.seed.dim()));
    }
    return centres;
}

} // namespace phifrac
