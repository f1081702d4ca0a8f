#include "phifrac/contractive_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "phifrac/error.hpp"
#include "phifrac/point_csv.hpp"
#include "phifrac/random.hpp"

namespace phifrac {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::size_t kDomainSamplesPerAxis = 65;
constexpr double kContractionSlack = 1e-12;

std::vector<Point> domain_grid(const Box& box, std::size_t per_axis) {
    std::vector<Point> pts;
    const auto at = [&](std::size_t k, std::size_t i) {
        const double t = per_axis == 1 ? 0.0 : static_cast<double>(i) / (per_axis - 1);
        return box.lo()[k] + t * (box.hi()[k] - box.lo()[k]);
    };
    if (box.dim() == 1) {
        for (std::size_t i = 0; i < per_axis; ++i) pts.emplace_back(at(0, i));
    } else {
        for (std::size_t i = 0; i < per_axis; ++i)
            for (std::size_t j = 0; j < per_axis; ++j) pts.emplace_back(at(0, i), at(1, j));
    }
    return pts;
}

void require_dim(const Box& domain, std::size_t d, const char* what) {
    if (domain.dim() != d)
        fail(ErrorKind::InvalidParameter,
             std::string(what) + " needs a " + std::to_string(d) + "D domain");
}

void require_nonnegative(const Box& domain, const char* what) {
    require_dim(domain, 1, what);
    if (domain.lo()[0] < 0.0)
        fail(ErrorKind::InvalidParameter, std::string(what) + " is defined on [0, inf) only");
}

Point random_point(const Box& box, Rng& rng) {
    if (box.dim() == 1) return Point(rng.uniform(box.lo()[0], box.hi()[0]));
    const double x = rng.uniform(box.lo()[0], box.hi()[0]);
    const double y = rng.uniform(box.lo()[1], box.hi()[1]);
    return Point(x, y);
}

} // namespace

double operator_norm(const std::array<double, 4>& m) {
    // Largest singular value: sqrt of the top eigenvalue of M^T M.
    const double a = m[0] * m[0] + m[2] * m[2];
    const double b = m[0] * m[1] + m[2] * m[3];
    const double c = m[1] * m[1] + m[3] * m[3];
    const double half_tr = 0.5 * (a + c);
    const double disc = std::sqrt(std::max(0.0, 0.25 * (a - c) * (a - c) + b * b));
    return std::sqrt(half_tr + disc);
}

ContractiveMap::ContractiveMap(Kind kind, ComparisonFunction phi, Box domain)
    : kind_(std::move(kind)), phi_(std::move(phi)), domain_(std::move(domain)) {
    check_invariant_domain();
}

ContractiveMap ContractiveMap::affine1d(double a, double b, Box domain,
                                        std::optional<ComparisonFunction> phi) {
    require_dim(domain, 1, "affine1d");
    if (!(std::abs(a) < 1.0) || !std::isfinite(b))
        fail(ErrorKind::InvalidParameter, "affine1d needs |a| < 1 and finite b");
    return ContractiveMap(Affine1D{a, b}, phi.value_or(ComparisonFunction::linear(std::abs(a))),
                          std::move(domain));
}

ContractiveMap ContractiveMap::affine2d(std::array<double, 4> m, std::array<double, 2> v,
                                        Box domain, std::optional<ComparisonFunction> phi) {
    require_dim(domain, 2, "affine2d");
    for (double e : m)
        if (!std::isfinite(e)) fail(ErrorKind::InvalidParameter, "affine2d matrix is not finite");
    if (!std::isfinite(v[0]) || !std::isfinite(v[1]))
        fail(ErrorKind::InvalidParameter, "affine2d shift is not finite");
    const double norm = operator_norm(m);
    if (!(norm < 1.0))
        fail(ErrorKind::InvalidParameter,
             "affine2d matrix must have operator norm < 1, got " + format_real(norm));
    return ContractiveMap(Affine2D{m, v}, phi.value_or(ComparisonFunction::linear(norm)),
                          std::move(domain));
}

ContractiveMap ContractiveMap::reciprocal(Box domain, std::optional<ComparisonFunction> phi) {
    require_nonnegative(domain, "reciprocal");
    return ContractiveMap(Reciprocal{}, phi.value_or(ComparisonFunction::ratio_shift(1.0)),
                          std::move(domain));
}

ContractiveMap ContractiveMap::mobius(Box domain, std::optional<ComparisonFunction> phi) {
    require_nonnegative(domain, "mobius");
    return ContractiveMap(Mobius{}, phi.value_or(ComparisonFunction::ratio_shift(1.0)),
                          std::move(domain));
}

Point ContractiveMap::apply_unchecked(const Point& p) const {
    double out[2] = {0.0, 0.0};
    std::visit(overloaded{
                   [&](const Affine1D& f) { out[0] = f.a * p[0] + f.b; },
                   [&](const Affine2D& f) {
                       out[0] = f.m[0] * p[0] + f.m[1] * p[1] + f.v[0];
                       out[1] = f.m[2] * p[0] + f.m[3] * p[1] + f.v[1];
                   },
                   [&](const Reciprocal&) { out[0] = 1.0 / (1.0 + p[0]); },
                   [&](const Mobius&) { out[0] = p[0] / (1.0 + p[0]); },
               },
               kind_);
    const std::size_t d = dim();
    for (std::size_t i = 0; i < d; ++i)
        if (!std::isfinite(out[i]))
            fail(ErrorKind::Divergence, describe() + " produced a non-finite image of " + p.str());
    return Point(std::span<const double>(out, d));
}

Point ContractiveMap::apply(const Point& p) const {
    if (!domain_.contains(p))
        fail(ErrorKind::Domain, p.str() + " lies outside the domain of " + describe());
    return apply_unchecked(p);
}

void ContractiveMap::check_invariant_domain() const {
    for (const Point& p : domain_grid(domain_, kDomainSamplesPerAxis)) {
        const Point img = apply_unchecked(p);
        if (!domain_.contains(img))
            fail(ErrorKind::InvalidParameter,
                 describe() + " does not map its domain into itself: " + p.str() + " -> " +
                     img.str());
    }
}

ContractiveMap ContractiveMap::with_phi(ComparisonFunction phi) const {
    ContractiveMap out = *this;
    out.phi_ = std::move(phi);
    return out;
}

std::string ContractiveMap::kind_name() const {
    return std::visit(overloaded{
                          [](const Affine1D&) { return std::string("affine1d"); },
                          [](const Affine2D&) { return std::string("affine2d"); },
                          [](const Reciprocal&) { return std::string("reciprocal"); },
                          [](const Mobius&) { return std::string("mobius"); },
                      },
                      kind_);
}

std::string ContractiveMap::describe() const {
    std::string s = std::visit(
        overloaded{
            [](const Affine1D& f) {
                return "affine1d(a=" + format_real(f.a) + ", b=" + format_real(f.b) + ")";
            },
            [](const Affine2D& f) {
                return "affine2d(m=[" + format_real(f.m[0]) + ", " + format_real(f.m[1]) + "; " +
                       format_real(f.m[2]) + ", " + format_real(f.m[3]) + "], v=[" +
                       format_real(f.v[0]) + ", " + format_real(f.v[1]) + "])";
            },
            [](const Reciprocal&) { return std::string("reciprocal"); },
            [](const Mobius&) { return std::string("mobius"); },
        },
        kind_);
    return s + " with phi " + phi_.describe();
}

ContractionReport verify_contraction(const ContractiveMap& f, std::size_t samples,
                                     std::uint64_t seed) {
    if (samples == 0) fail(ErrorKind::InvalidInput, "verify_contraction needs samples >= 1");
    Rng rng(seed);
    ContractionReport rep;
    rep.samples = samples;
    rep.max_violation = -std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < samples; ++s) {
        const Point x = random_point(f.domain(), rng);
        const Point y = random_point(f.domain(), rng);
        const double lhs = unchecked_distance(f.apply(x), f.apply(y));
        const double v = lhs - f.phi()(unchecked_distance(x, y));
        if (v > rep.max_violation) {
            rep.max_violation = v;
            rep.worst_x = x;
            rep.worst_y = y;
        }
    }
    rep.pass = rep.max_violation <= kContractionSlack;
    return rep;
}

double uniform_deviation(const ContractiveMap& f, const ContractiveMap& g,
                         std::size_t samples_per_axis) {
    if (!(f.domain() == g.domain()))
        fail(ErrorKind::InvalidInput, "uniform_deviation needs maps on the same domain");
    double sup = 0.0;
    for (const Point& p : domain_grid(f.domain(), std::max<std::size_t>(samples_per_axis, 2)))
        sup = std::max(sup, unchecked_distance(f.apply(p), g.apply(p)));
    return sup;
}

} // namespace phifrac
