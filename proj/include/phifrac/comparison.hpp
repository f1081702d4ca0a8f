#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "phifrac/indexed_family.hpp"

namespace phifrac {

/// A comparison function phi on [0, inf): non-decreasing, phi(0) = 0,
/// phi(t) < t for t > 0, iterates vanish pointwise.
///
/// Only parametric families are constructible; each factory validates its
/// parameters and throws ErrorKind::InvalidParameter otherwise.
class ComparisonFunction {
public:
    /// t -> r t, r in [0, 1).
    struct Linear {
        double rate;
    };
    /// t -> t / (t + a). Requires a >= 1; for a < 1 the function exceeds the
    /// identity on (0, 1 - a).
    struct RatioShift {
        double shift;
    };
    /// t -> alpha(t) t with alpha non-increasing, values in [0, 1).
    struct Rakotch {
        std::function<double(double)> alpha;
        std::string label;
        std::vector<double> params;
    };
    /// Pointwise maximum of members (comparison function of a function system).
    struct Max {
        std::vector<ComparisonFunction> parts;
    };

    static ComparisonFunction linear(double rate);
    static ComparisonFunction ratio_shift(double shift);
    /// alpha is sample-checked on the default test grid.
    static ComparisonFunction rakotch(std::function<double(double)> alpha, std::string label,
                                      std::vector<double> params = {});
    /// alpha(t) = c s / (s + t), c in (0, 1], s > 0.
    static ComparisonFunction rakotch_rational(double c, double s);
    /// Collapses to Linear(max rate) when every member is Linear.
    static ComparisonFunction pointwise_max(std::vector<ComparisonFunction> parts);

    /// Unchecked evaluation for t >= 0.
    double operator()(double t) const;

    /// "linear", "ratio_shift", "rakotch" or "max".
    std::string family() const;
    std::vector<double> params() const;
    std::string describe() const;

    const auto& kind() const noexcept { return kind_; }

private:
    using Kind = std::variant<Linear, RatioShift, Rakotch, Max>;
    explicit ComparisonFunction(Kind k) : kind_(std::move(k)) {}
    Kind kind_;
};

using ComparisonChain = IndexedFamily<ComparisonFunction>;

/// phi(t); throws InvalidInput for negative or non-finite t.
double eval(const ComparisonFunction& phi, double t);

/// phi_1(phi_2(...phi_k(t)...)) over an explicit list (front = phi_1).
double compose(std::span<const ComparisonFunction> phis, double t);

/// phi_1 o ... o phi_k (t); k = 0 returns t.
double compose_chain(const ComparisonChain& chain, std::size_t k, double t);

/// phi_k o ... o phi_1 (t): the order in which a forward trajectory
/// accumulates contraction.
double compose_chain_reversed(const ComparisonChain& chain, std::size_t k, double t);

struct ChainDecay {
    bool decays = false;
    std::size_t witness = 0;  ///< smallest k with compose_chain(k, t) < tol
    double value = 0.0;       ///< compose_chain at the witness (or at kmax)
};

ChainDecay chain_decays(const ComparisonChain& chain, double t, double tol, std::size_t kmax);

struct SeriesSum {
    double sum = 0.0;
    bool converged = false;  ///< last 10 increments all below 1e-12
    double last_increment = 0.0;
};

SeriesSum chain_series_sum(const ComparisonChain& chain, double t, std::size_t kmax);

struct ComparisonGrid {
    std::size_t points = 10000;  ///< t = 0 plus points - 1 log-spaced values
    double t_min = 1e-6;
    double t_max = 1e3;
    std::size_t decay_iterations = 64;
    double decay_ratio = 1e-6;  ///< require phi^iterations(t) < ratio * t

    std::vector<double> samples() const;
};

struct InvariantCheck {
    std::string name;
    bool pass = true;
    std::optional<double> first_violation;  ///< first grid t that fails
};

struct ComparisonReport {
    std::string subject;
    std::vector<InvariantCheck> checks;
    bool pass() const;
};

ComparisonReport verify_comparison(const ComparisonFunction& phi, const ComparisonGrid& grid = {});
/// Same checks for an arbitrary candidate map, e.g. one that is not a
/// comparison function at all.
ComparisonReport verify_comparison(const std::function<double(double)>& candidate,
                                   const std::string& subject, const ComparisonGrid& grid = {});

} // namespace phifrac
