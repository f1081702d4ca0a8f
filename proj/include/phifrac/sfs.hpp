#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "phifrac/function_system.hpp"
#include "phifrac/indexed_family.hpp"

namespace phifrac {

/// F_1, F_2, ... sharing one domain; chain() is the sequence of the systems'
/// comparison functions.
class SfsSequence {
public:
    explicit SfsSequence(IndexedFamily<FunctionSystem> systems);

    static SfsSequence stationary(FunctionSystem system);
    static SfsSequence periodic(std::vector<FunctionSystem> prefix,
                                std::vector<FunctionSystem> repeat);

    FunctionSystem at(std::size_t i) const;
    const Box& domain() const noexcept { return domain_; }
    ComparisonChain chain() const;

private:
    IndexedFamily<FunctionSystem> systems_;
    Box domain_;
};

struct SetTrajectoryOptions {
    double tol = 1e-9;
    std::size_t kmax = 200;
    double decimation_pitch = 0.0;  ///< 0 disables decimation
    std::size_t cap = kMaxCloudPoints;
    bool keep_iterates = true;  ///< false keeps only the gaps and the limit
};

struct SetTrajectoryResult {
    std::vector<CompactSet> iterates;  ///< iterates[0] = A0 when kept
    std::vector<double> gaps;          ///< h(A_k, A_{k-1}); gaps[0] = 0
    bool converged = false;
    std::optional<CompactSet> limit;
    /// Representatives of the Hausdorff clusters (radius 10 tol) over the
    /// last quarter of the run; filled only when it did not converge.
    std::vector<CompactSet> accumulation_sets;
    std::size_t iterations_used = 0;
    std::vector<std::string> warnings;
    /// Last computed iterate (the limit when converged).
    std::optional<CompactSet> last;
};

/// Phi_k(A0) = F_k o ... o F_1 (A0).
SetTrajectoryResult sfs_forward(const SfsSequence& seq, const CompactSet& a0,
                                const SetTrajectoryOptions& options = {});

/// Psi_k(A0) = F_1 o ... o F_k (A0), recomputed from A0 for every k.
SetTrajectoryResult sfs_backward(const SfsSequence& seq, const CompactSet& a0,
                                 const SetTrajectoryOptions& options = {});

} // namespace phifrac
