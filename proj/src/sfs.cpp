#include "phifrac/sfs.hpp"

#include <algorithm>
#include <cmath>

#include "phifrac/error.hpp"
#include "phifrac/hausdorff.hpp"
#include "phifrac/trajectory.hpp"

namespace phifrac {

namespace {

constexpr double kClusterRadiusFactor = 10.0;
constexpr std::size_t kSummabilityTerms = 256;

void check(const SfsSequence& seq, const CompactSet& a0, const SetTrajectoryOptions& opt) {
    if (!(opt.tol > 0.0) || !std::isfinite(opt.tol))
        fail(ErrorKind::InvalidInput, "set trajectory tolerance must be finite and > 0");
    if (opt.kmax == 0) fail(ErrorKind::InvalidInput, "set trajectory kmax must be >= 1");
    if (a0.dim() != seq.domain().dim())
        fail(ErrorKind::InvalidInput, "initial set dimension does not match the sequence");
    for (const Point& p : a0.points())
        if (!seq.domain().contains(p))
            fail(ErrorKind::Domain, "initial set point " + p.str() + " lies outside the domain");
}

template <class Next>
SetTrajectoryResult run(const CompactSet& a0, const SetTrajectoryOptions& opt, Next next) {
    SetTrajectoryResult res;
    if (opt.keep_iterates) res.iterates.push_back(a0);
    res.gaps.push_back(0.0);
    const std::size_t tail_start = opt.kmax - std::max<std::size_t>(1, opt.kmax / 4) + 1;
    const double radius = kClusterRadiusFactor * opt.tol;

    CompactSet prev = a0;
    std::size_t run_len = 0;
    for (std::size_t k = 1; k <= opt.kmax; ++k) {
        CompactSet cur = next(k, prev);
        const double gap = hausdorff_distance(cur, prev);
        res.gaps.push_back(gap);
        res.iterations_used = k;
        if (opt.keep_iterates) res.iterates.push_back(cur);
        if (k >= tail_start) {
            const bool known = std::any_of(
                res.accumulation_sets.begin(), res.accumulation_sets.end(),
                [&](const CompactSet& rep) { return hausdorff_distance(rep, cur) <= radius; });
            if (!known) res.accumulation_sets.push_back(cur);
        }
        run_len = gap < opt.tol ? run_len + 1 : 0;
        prev = std::move(cur);
        if (run_len >= kCauchyRun) {
            res.converged = true;
            res.limit = prev;
            res.accumulation_sets.clear();
            break;
        }
    }
    res.last = std::move(prev);
    return res;
}

} // namespace

SfsSequence::SfsSequence(IndexedFamily<FunctionSystem> systems)
    : systems_(std::move(systems)), domain_(systems_.at(1).domain()) {
    auto verify = [this](const std::vector<FunctionSystem>& ss) {
        for (const auto& s : ss)
            if (!(s.domain() == domain_))
                fail(ErrorKind::InvalidInput, "all systems of an SFS must share one domain");
    };
    verify(systems_.prefix());
    if (systems_.is_periodic()) verify(systems_.repeat());
}

SfsSequence SfsSequence::stationary(FunctionSystem system) {
    return SfsSequence(IndexedFamily<FunctionSystem>::constant(std::move(system)));
}

SfsSequence SfsSequence::periodic(std::vector<FunctionSystem> prefix,
                                  std::vector<FunctionSystem> repeat) {
    return SfsSequence(
        IndexedFamily<FunctionSystem>::periodic(std::move(prefix), std::move(repeat)));
}

FunctionSystem SfsSequence::at(std::size_t i) const {
    FunctionSystem s = systems_.at(i);
    if (!(s.domain() == domain_))
        fail(ErrorKind::InvalidInput, "system " + std::to_string(i) + " leaves the shared domain");
    return s;
}

ComparisonChain SfsSequence::chain() const {
    return systems_.transform([](const FunctionSystem& s) { return s.phi(); });
}

SetTrajectoryResult sfs_forward(const SfsSequence& seq, const CompactSet& a0,
                                const SetTrajectoryOptions& options) {
    check(seq, a0, options);
    return run(a0, options, [&](std::size_t k, const CompactSet& prev) {
        return hutchinson(seq.at(k), prev, options.decimation_pitch, options.cap);
    });
}

SetTrajectoryResult sfs_backward(const SfsSequence& seq, const CompactSet& a0,
                                 const SetTrajectoryOptions& options) {
    check(seq, a0, options);
    std::vector<FunctionSystem> systems;
    auto res = run(a0, options, [&](std::size_t k, const CompactSet&) {
        systems.push_back(seq.at(k));
        CompactSet a = a0;
        for (std::size_t i = k; i >= 1; --i)
            a = hutchinson(systems[i - 1], a, options.decimation_pitch, options.cap);
        return a;
    });
    const double t = std::max(seq.domain().diameter(), 1e-12);
    if (!chain_series_sum(seq.chain(), t, kSummabilityTerms).converged)
        res.warnings.push_back("comparison-chain series did not converge within " +
                               std::to_string(kSummabilityTerms) +
                               " terms; backward convergence is not guaranteed");
    return res;
}

} // namespace phifrac
