#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "phifrac/compact_set.hpp"
#include "phifrac/contractive_map.hpp"

namespace phifrac {

/// Point-cloud size above which set operators throw ErrorKind::Resource.
inline constexpr std::size_t kMaxCloudPoints = 1'000'000;

/// {X; f_1, ..., f_n} with its set lift F(A) = f_1(A) u ... u f_n(A).
/// The comparison function of the lift is the pointwise max of the members'.
class FunctionSystem {
public:
    explicit FunctionSystem(std::vector<ContractiveMap> maps);

    const std::vector<ContractiveMap>& maps() const noexcept { return maps_; }
    const ComparisonFunction& phi() const noexcept { return phi_; }
    const Box& domain() const noexcept { return maps_.front().domain(); }
    std::size_t size() const noexcept { return maps_.size(); }

private:
    std::vector<ContractiveMap> maps_;
    ComparisonFunction phi_;
};

/// f(A), no decimation.
CompactSet image(const ContractiveMap& f, const CompactSet& a);

/// Snap every coordinate to the nearest multiple of `pitch`, optionally
/// clamped into `clamp`, and merge points that land on the same grid node.
/// Moves the set by at most pitch * sqrt(d) / 2 in Hausdorff distance.
CompactSet decimate(const CompactSet& a, double pitch, const Box* clamp = nullptr);

/// F(A) = union of f_r(A), deduplicated; `decimation_pitch` > 0 snaps the
/// result to that grid (clamped to the domain). Throws Domain if A leaves
/// the domain and Resource if the result exceeds `cap` points.
CompactSet hutchinson(const FunctionSystem& system, const CompactSet& a,
                      double decimation_pitch = 0.0, std::size_t cap = kMaxCloudPoints);

struct SetLiftReport {
    std::string subject;
    std::size_t trials = 0;
    double max_violation = 0.0;  ///< max of h(F A, F B) - phi(h(A, B))
    bool pass = false;           ///< max_violation <= 1e-10
};

/// Random set pairs (1..100 points each, uniform in the domain).
SetLiftReport check_set_lift(const FunctionSystem& system, std::size_t trials, std::uint64_t seed);

} // namespace phifrac
