#include "phifrac/cifs.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>

#include "phifrac/error.hpp"
#include "phifrac/hausdorff.hpp"

namespace phifrac {

namespace {

CompactSet merged(const CompactSet& a, const CompactSet& b) {
    std::vector<Point> pts;
    pts.reserve(a.size() + b.size());
    std::merge(a.points().begin(), a.points().end(), b.points().begin(), b.points().end(),
               std::back_inserter(pts));
    return CompactSet(std::move(pts), a.resolution());
}

void check_cap(std::size_t n, std::size_t cap) {
    if (n > cap)
        fail(ErrorKind::Resource, "CIFS truncation needs " + std::to_string(n) +
                                      " maps, above the cap of " + std::to_string(cap));
}

} // namespace

CifsSystem::CifsSystem(MapGenerator generator, ComparisonFunction phi, Box domain,
                       TruncationRule rule)
    : generator_(std::move(generator)), phi_(std::move(phi)), domain_(std::move(domain)),
      rule_(std::move(rule)) {
    if (!generator_) fail(ErrorKind::InvalidInput, "CIFS needs a map generator");
}

ContractiveMap CifsSystem::map(std::size_t i) const {
    if (i == 0) fail(ErrorKind::InvalidInput, "CIFS maps are indexed from 1");
    ContractiveMap m = generator_(i);
    if (!(m.domain() == domain_))
        fail(ErrorKind::InvalidInput, "CIFS map " + std::to_string(i) + " leaves the shared domain");
    return m;
}

FunctionSystem CifsSystem::truncate(std::size_t n) const {
    if (n == 0) fail(ErrorKind::InvalidInput, "CIFS truncation needs at least one map");
    std::vector<ContractiveMap> maps;
    maps.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) maps.push_back(map(i));
    return FunctionSystem(std::move(maps));
}

CifsResult cifs_operator(const CifsSystem& system, const CompactSet& a, double eps,
                         std::size_t cap) {
    if (!(eps > 0.0) || !std::isfinite(eps))
        fail(ErrorKind::InvalidInput, "CIFS eps must be positive");
    if (a.dim() != system.domain().dim())
        fail(ErrorKind::InvalidInput, "set dimension does not match the CIFS");

    // images[i - 1] = f_i(A), grown on demand.
    std::vector<CompactSet> images;
    const auto img = [&](std::size_t i) -> const CompactSet& {
        check_cap(i, cap);
        while (images.size() < i) images.push_back(image(system.map(images.size() + 1), a));
        return images[i - 1];
    };

    std::size_t n = 1;
    CompactSet uni = img(1);
    if (system.rule()) {
        n = std::max<std::size_t>(1, system.rule()(eps));
        check_cap(n, cap);
        for (std::size_t i = 2; i <= n; ++i) uni = merged(uni, img(i));
    } else {
        while (directed_distance(img(n + 1), uni) >= eps) {
            uni = merged(uni, img(n + 1));
            ++n;
        }
    }

    while (true) {
        CompactSet extended = uni;
        for (std::size_t i = n + 1; i <= n + kCifsCertificateTerms; ++i)
            extended = merged(extended, img(i));
        const double gap = hausdorff_distance(uni, extended);
        if (gap < eps) return CifsResult{std::move(uni), n, gap};
        ++n;
        uni = merged(uni, img(n));
    }
}

SetLiftReport check_set_lift(const CifsSystem& system, std::size_t truncation,
                             std::size_t trials, std::uint64_t seed) {
    // The lift is checked against the common phi, not the max over the
    // truncated members.
    std::vector<ContractiveMap> maps;
    for (std::size_t i = 1; i <= truncation; ++i) maps.push_back(system.map(i).with_phi(system.phi()));
    auto rep = check_set_lift(FunctionSystem(std::move(maps)), trials, seed);
    rep.subject = "CIFS truncated to " + std::to_string(truncation) + " maps, phi " +
                  system.phi().describe();
    return rep;
}

} // namespace phifrac
