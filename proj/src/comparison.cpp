#include "phifrac/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "phifrac/error.hpp"
#include "phifrac/point_csv.hpp"

namespace phifrac {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string join_params(const std::vector<double>& ps) {
    std::string s;
    for (std::size_t i = 0; i < ps.size(); ++i) {
        if (i) s += ", ";
        s += format_real(ps[i]);
    }
    return s;
}

} // namespace

ComparisonFunction ComparisonFunction::linear(double rate) {
    if (!(rate >= 0.0 && rate < 1.0))
        fail(ErrorKind::InvalidParameter,
             "linear comparison rate must lie in [0, 1), got " + format_real(rate));
    return ComparisonFunction(Linear{rate});
}

ComparisonFunction ComparisonFunction::ratio_shift(double shift) {
    if (!(shift >= 1.0) || !std::isfinite(shift))
        fail(ErrorKind::InvalidParameter,
             "ratio_shift parameter must be finite and >= 1, got " + format_real(shift));
    return ComparisonFunction(RatioShift{shift});
}

ComparisonFunction ComparisonFunction::rakotch(std::function<double(double)> alpha,
                                               std::string label, std::vector<double> params) {
    if (!alpha) fail(ErrorKind::InvalidParameter, "rakotch factor must be callable");
    double prev = 1.0;
    for (double t : ComparisonGrid{.points = 400}.samples()) {
        if (t == 0.0) continue;
        const double a = alpha(t);
        if (!(a >= 0.0 && a < 1.0))
            fail(ErrorKind::InvalidParameter,
                 "rakotch factor must take values in [0, 1); alpha(" + format_real(t) +
                     ") = " + format_real(a));
        if (a > prev)
            fail(ErrorKind::InvalidParameter,
                 "rakotch factor must be non-increasing; it rises at t = " + format_real(t));
        prev = a;
    }
    return ComparisonFunction(Rakotch{std::move(alpha), std::move(label), std::move(params)});
}

ComparisonFunction ComparisonFunction::rakotch_rational(double c, double s) {
    if (!(c > 0.0 && c <= 1.0) || !(s > 0.0) || !std::isfinite(s))
        fail(ErrorKind::InvalidParameter, "rakotch rational factor needs c in (0, 1] and s > 0");
    return rakotch([c, s](double t) { return c * s / (s + t); }, "c*s/(s+t)", {c, s});
}

ComparisonFunction ComparisonFunction::pointwise_max(std::vector<ComparisonFunction> parts) {
    if (parts.empty()) fail(ErrorKind::InvalidParameter, "pointwise max of no functions");
    if (parts.size() == 1) return parts.front();
    bool all_linear = true;
    double rate = 0.0;
    for (const auto& p : parts) {
        if (const auto* lin = std::get_if<Linear>(&p.kind_))
            rate = std::max(rate, lin->rate);
        else
            all_linear = false;
    }
    if (all_linear) return linear(rate);
    // identical ratio shifts
    const auto* first = std::get_if<RatioShift>(&parts.front().kind_);
    const bool same = first && std::all_of(parts.begin(), parts.end(), [&](const ComparisonFunction& p) {
                          const auto* r = std::get_if<RatioShift>(&p.kind_);
                          return r && r->shift == first->shift;
                      });
    if (same) return parts.front();
    return ComparisonFunction(Max{std::move(parts)});
}

double ComparisonFunction::operator()(double t) const {
    if (t == 0.0) return 0.0;
    return std::visit(overloaded{
                          [t](const Linear& f) { return f.rate * t; },
                          [t](const RatioShift& f) { return t / (t + f.shift); },
                          [t](const Rakotch& f) { return f.alpha(t) * t; },
                          [t](const Max& f) {
                              double m = 0.0;
                              for (const auto& p : f.parts) m = std::max(m, p(t));
                              return m;
                          },
                      },
                      kind_);
}

std::string ComparisonFunction::family() const {
    return std::visit(overloaded{
                          [](const Linear&) { return std::string("linear"); },
                          [](const RatioShift&) { return std::string("ratio_shift"); },
                          [](const Rakotch&) { return std::string("rakotch"); },
                          [](const Max&) { return std::string("max"); },
                      },
                      kind_);
}

std::vector<double> ComparisonFunction::params() const {
    return std::visit(overloaded{
                          [](const Linear& f) { return std::vector<double>{f.rate}; },
                          [](const RatioShift& f) { return std::vector<double>{f.shift}; },
                          [](const Rakotch& f) { return f.params; },
                          [](const Max&) { return std::vector<double>{}; },
                      },
                      kind_);
}

std::string ComparisonFunction::describe() const {
    if (const auto* m = std::get_if<Max>(&kind_)) {
        std::string s = "max(";
        for (std::size_t i = 0; i < m->parts.size(); ++i) {
            if (i) s += ", ";
            s += m->parts[i].describe();
        }
        return s + ")";
    }
    if (const auto* r = std::get_if<Rakotch>(&kind_))
        return "rakotch[" + r->label + "](" + join_params(r->params) + ")";
    return family() + "(" + join_params(params()) + ")";
}

namespace {

void check_argument(double t) {
    if (!(t >= 0.0) || !std::isfinite(t))
        fail(ErrorKind::InvalidInput, "comparison function argument must be finite and >= 0");
}

} // namespace

double eval(const ComparisonFunction& phi, double t) {
    check_argument(t);
    return phi(t);
}

double compose(std::span<const ComparisonFunction> phis, double t) {
    for (auto it = phis.rbegin(); it != phis.rend(); ++it) t = (*it)(t);
    return t;
}

double compose_chain(const ComparisonChain& chain, std::size_t k, double t) {
    check_argument(t);
    const auto phis = chain.first(k);
    return compose(phis, t);
}

double compose_chain_reversed(const ComparisonChain& chain, std::size_t k, double t) {
    check_argument(t);
    for (std::size_t i = 1; i <= k; ++i) t = chain.at(i)(t);
    return t;
}

ChainDecay chain_decays(const ComparisonChain& chain, double t, double tol, std::size_t kmax) {
    if (!(t > 0.0) || !std::isfinite(t))
        fail(ErrorKind::InvalidInput, "chain_decays needs a positive finite t");
    const auto phis = chain.first(kmax);
    ChainDecay out;
    for (std::size_t k = 1; k <= kmax; ++k) {
        out.value = compose(std::span(phis).first(k), t);
        if (out.value < tol) {
            out.decays = true;
            out.witness = k;
            return out;
        }
    }
    return out;
}

SeriesSum chain_series_sum(const ComparisonChain& chain, double t, std::size_t kmax) {
    if (!(t > 0.0) || !std::isfinite(t))
        fail(ErrorKind::InvalidInput, "chain_series_sum needs a positive finite t");
    constexpr std::size_t kTail = 10;
    constexpr double kTailBound = 1e-12;
    const auto phis = chain.first(kmax);
    SeriesSum out;
    std::size_t small_run = 0;
    for (std::size_t k = 1; k <= kmax; ++k) {
        // Non-increasing in k, so an exact zero persists.
        const double inc = out.last_increment == 0.0 && k > 1
                               ? 0.0
                               : compose(std::span(phis).first(k), t);
        out.sum += inc;
        out.last_increment = inc;
        small_run = inc < kTailBound ? small_run + 1 : 0;
    }
    out.converged = kmax >= kTail && small_run >= kTail;
    return out;
}

std::vector<double> ComparisonGrid::samples() const {
    std::vector<double> ts{0.0};
    if (points < 2) return ts;
    const std::size_t n = points - 1;
    const double l0 = std::log(t_min), l1 = std::log(t_max);
    for (std::size_t i = 0; i < n; ++i) {
        const double frac = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
        ts.push_back(std::exp(l0 + frac * (l1 - l0)));
    }
    ts[1] = t_min;
    ts.back() = t_max;
    return ts;
}

bool ComparisonReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

namespace {

void note(InvariantCheck& c, double t) {
    if (c.pass) {
        c.pass = false;
        c.first_violation = t;
    }
}

} // namespace

ComparisonReport verify_comparison(const std::function<double(double)>& candidate,
                                   const std::string& subject, const ComparisonGrid& grid) {
    ComparisonReport rep;
    rep.subject = subject;
    InvariantCheck zero{"zero_at_origin", true, {}}, mono{"non_decreasing", true, {}},
        below{"below_identity", true, {}},
        decay{"iterate_decay", true, {}};

    const double at0 = candidate(0.0);
    if (at0 != 0.0) note(zero, 0.0);

    double prev = at0;
    for (double t : grid.samples()) {
        const double v = candidate(t);
        if (!std::isfinite(v)) {
            note(mono, t);
            note(below, t);
            continue;
        }
        if (v < prev) note(mono, t);
        prev = v;
        if (t > 0.0 && !(v < t)) note(below, t);
        if (t > 0.0) {
            double it = t;
            for (std::size_t p = 0; p < grid.decay_iterations && std::isfinite(it); ++p)
                it = candidate(it);
            if (!(it < grid.decay_ratio * t)) note(decay, t);
        }
    }
    rep.checks = {zero, mono, below, decay};
    return rep;
}

ComparisonReport verify_comparison(const ComparisonFunction& phi, const ComparisonGrid& grid) {
    auto rep = verify_comparison([&phi](double t) { return phi(t); }, phi.describe(), grid);
    if (const auto* r = std::get_if<ComparisonFunction::Rakotch>(&phi.kind())) {
        InvariantCheck ratio{"rakotch_ratio_non_increasing", true, {}};
        double prev = 1.0;
        for (double t : grid.samples()) {
            if (t == 0.0) continue;
            const double a = r->alpha(t);
            if (a > prev) note(ratio, t);
            prev = a;
        }
        rep.checks.push_back(ratio);
    }
    return rep;
}

} // namespace phifrac
