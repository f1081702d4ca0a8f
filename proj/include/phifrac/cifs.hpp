#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "phifrac/function_system.hpp"

namespace phifrac {

inline constexpr std::size_t kMaxCifsMaps = 100'000;
/// Extra maps the truncation certificate adds past N(eps).
inline constexpr std::size_t kCifsCertificateTerms = 10;

/// Countable IFS: a rule i -> f_i (i >= 1) whose maps share a domain and a
/// common comparison function.
class CifsSystem {
public:
    using MapGenerator = std::function<ContractiveMap(std::size_t)>;
    /// eps -> N(eps), the number of leading maps kept.
    using TruncationRule = std::function<std::size_t(double)>;

    CifsSystem(MapGenerator generator, ComparisonFunction phi, Box domain,
               TruncationRule rule = {});

    /// 1-based; checks the shared domain.
    ContractiveMap map(std::size_t i) const;
    const ComparisonFunction& phi() const noexcept { return phi_; }
    const Box& domain() const noexcept { return domain_; }
    const TruncationRule& rule() const noexcept { return rule_; }

    /// The first n maps as a finite system.
    FunctionSystem truncate(std::size_t n) const;

private:
    MapGenerator generator_;
    ComparisonFunction phi_;
    Box domain_;
    TruncationRule rule_;
};

struct CifsResult {
    CompactSet set;
    std::size_t maps_used = 0;
    /// h(union of f_1..f_N, union of f_1..f_{N+10}) at the returned N.
    double certificate_gap = 0.0;
};

/// Finite surrogate of closure(union_i f_i(A)).
///
/// N starts at rule(eps) when the system has a rule; otherwise at the first n
/// for which f_{n+1}(A) lies within eps of the union of f_1..f_n (directed
/// distance). N is then increased one map at a time until adding the next
/// kCifsCertificateTerms maps moves the union by less than eps. Throws
/// Resource when N would exceed `cap`.
CifsResult cifs_operator(const CifsSystem& system, const CompactSet& a, double eps,
                         std::size_t cap = kMaxCifsMaps);

/// Set-lift check over the first `truncation` maps, against the common phi.
SetLiftReport check_set_lift(const CifsSystem& system, std::size_t truncation,
                             std::size_t trials, std::uint64_t seed);

} // namespace phifrac
