#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "phifrac/comparison.hpp"
#include "phifrac/point.hpp"

namespace phifrac {

/// Spectral norm of a row-major 2x2 matrix.
double operator_norm(const std::array<double, 4>& m);

/// A point map on an invariant box, tagged with the comparison function it
/// is claimed to satisfy. Construction checks the parameters and that the
/// box is mapped into itself (on a sample grid); the claimed phi is only
/// checked by verify_contraction.
class ContractiveMap {
public:
    struct Affine1D {
        double a;
        double b;
    };
    /// x -> M x + v, M row-major.
    struct Affine2D {
        std::array<double, 4> m;
        std::array<double, 2> v;
    };
    /// x -> 1 / (1 + x) on a subset of [0, inf).
    struct Reciprocal {};
    /// x -> x / (1 + x) on a subset of [0, inf).
    struct Mobius {};

    using Kind = std::variant<Affine1D, Affine2D, Reciprocal, Mobius>;

    /// phi defaults to Linear(|a|).
    static ContractiveMap affine1d(double a, double b, Box domain,
                                   std::optional<ComparisonFunction> phi = {});
    /// phi defaults to Linear(operator_norm(m)).
    static ContractiveMap affine2d(std::array<double, 4> m, std::array<double, 2> v, Box domain,
                                   std::optional<ComparisonFunction> phi = {});
    /// phi defaults to RatioShift(1).
    static ContractiveMap reciprocal(Box domain, std::optional<ComparisonFunction> phi = {});
    /// phi defaults to RatioShift(1).
    static ContractiveMap mobius(Box domain, std::optional<ComparisonFunction> phi = {});

    /// Throws Domain if p is outside the box, Divergence on a non-finite image.
    Point apply(const Point& p) const;
    /// No domain check.
    Point apply_unchecked(const Point& p) const;

    /// Same map, re-tagged with another comparison function.
    ContractiveMap with_phi(ComparisonFunction phi) const;

    const Kind& kind() const noexcept { return kind_; }
    const ComparisonFunction& phi() const noexcept { return phi_; }
    const Box& domain() const noexcept { return domain_; }
    std::size_t dim() const noexcept { return domain_.dim(); }

    std::string kind_name() const;
    std::string describe() const;

private:
    ContractiveMap(Kind kind, ComparisonFunction phi, Box domain);
    void check_invariant_domain() const;

    Kind kind_;
    ComparisonFunction phi_;
    Box domain_;
};

struct ContractionReport {
    std::size_t samples = 0;
    double max_violation = 0.0;  ///< max of d(f x, f y) - phi(d(x, y))
    Point worst_x;
    Point worst_y;
    bool pass = false;  ///< max_violation <= 1e-12
};

/// Draws `samples` seeded random pairs from the map's domain.
ContractionReport verify_contraction(const ContractiveMap& f, std::size_t samples,
                                     std::uint64_t seed);

/// sup over a sample grid of the domain of d(f(x), g(x)); the uniform
/// deviation used to judge T_i -> T.
double uniform_deviation(const ContractiveMap& f, const ContractiveMap& g,
                         std::size_t samples_per_axis = 257);

} // namespace phifrac
