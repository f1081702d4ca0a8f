#include "phifrac/function_system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "phifrac/error.hpp"
#include "phifrac/hausdorff.hpp"
#include "phifrac/random.hpp"

namespace phifrac {

namespace {

constexpr double kSetLiftSlack = 1e-10;
constexpr std::size_t kMaxRandomSetSize = 100;

std::vector<ComparisonFunction> member_phis(const std::vector<ContractiveMap>& maps) {
    if (maps.empty()) fail(ErrorKind::InvalidInput, "a function system needs at least one map");
    std::vector<ComparisonFunction> phis;
    for (const auto& m : maps) {
        if (!(m.domain() == maps.front().domain()))
            fail(ErrorKind::InvalidInput, "all maps of a function system must share one domain");
        phis.push_back(m.phi());
    }
    return phis;
}

CompactSet random_set(const Box& box, Rng& rng) {
    const std::size_t n = 1 + rng.index(kMaxRandomSetSize);
    std::vector<Point> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (box.dim() == 1) {
            pts.emplace_back(rng.uniform(box.lo()[0], box.hi()[0]));
        } else {
            const double x = rng.uniform(box.lo()[0], box.hi()[0]);
            const double y = rng.uniform(box.lo()[1], box.hi()[1]);
            pts.emplace_back(x, y);
        }
    }
    return CompactSet(std::move(pts));
}

} // namespace

FunctionSystem::FunctionSystem(std::vector<ContractiveMap> maps)
    : maps_(std::move(maps)), phi_(ComparisonFunction::pointwise_max(member_phis(maps_))) {}

CompactSet image(const ContractiveMap& f, const CompactSet& a) {
    std::vector<Point> pts;
    pts.reserve(a.size());
    for (const Point& p : a.points()) pts.push_back(f.apply(p));
    return CompactSet(std::move(pts), a.resolution());
}

CompactSet decimate(const CompactSet& a, double pitch, const Box* clamp) {
    if (!(pitch > 0.0) || !std::isfinite(pitch))
        fail(ErrorKind::InvalidInput, "decimation pitch must be positive");
    std::vector<Point> pts;
    pts.reserve(a.size());
    for (const Point& p : a.points()) {
        double c[2] = {0.0, 0.0};
        for (std::size_t i = 0; i < p.dim(); ++i) {
            c[i] = static_cast<double>(std::llround(p[i] / pitch)) * pitch;
            if (clamp) c[i] = std::clamp(c[i], clamp->lo()[i], clamp->hi()[i]);
        }
        pts.emplace_back(std::span<const double>(c, p.dim()));
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return CompactSet(std::move(pts), pitch);
}

CompactSet hutchinson(const FunctionSystem& system, const CompactSet& a, double decimation_pitch,
                      std::size_t cap) {
    if (a.dim() != system.domain().dim())
        fail(ErrorKind::InvalidInput, "set dimension does not match the system");
    const std::size_t raw = system.size() * a.size();
    if (decimation_pitch <= 0.0 && raw > cap)
        fail(ErrorKind::Resource, "Hutchinson image would hold " + std::to_string(raw) +
                                      " points, above the cap of " + std::to_string(cap));
    std::vector<Point> pts;
    pts.reserve(raw);
    for (const auto& f : system.maps())
        for (const Point& p : a.points()) pts.push_back(f.apply(p));
    CompactSet out(std::move(pts), a.resolution());
    if (decimation_pitch > 0.0) out = decimate(out, decimation_pitch, &system.domain());
    if (out.size() > cap)
        fail(ErrorKind::Resource, "Hutchinson image holds " + std::to_string(out.size()) +
                                      " points, above the cap of " + std::to_string(cap));
    return out;
}

SetLiftReport check_set_lift(const FunctionSystem& system, std::size_t trials,
                             std::uint64_t seed) {
    if (trials == 0) fail(ErrorKind::InvalidInput, "check_set_lift needs trials >= 1");
    Rng rng(seed);
    SetLiftReport rep;
    rep.subject = "function system of " + std::to_string(system.size()) + " maps, phi " +
                  system.phi().describe();
    rep.trials = trials;
    rep.max_violation = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < trials; ++t) {
        const CompactSet a = random_set(system.domain(), rng);
        const CompactSet b = random_set(system.domain(), rng);
        const double lifted = hausdorff_distance(hutchinson(system, a), hutchinson(system, b));
        rep.max_violation = std::max(rep.max_violation, lifted - system.phi()(hausdorff_distance(a, b)));
    }
    rep.pass = rep.max_violation <= kSetLiftSlack;
    return rep;
}

} // namespace phifrac
