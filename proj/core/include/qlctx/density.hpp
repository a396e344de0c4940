#pragma once

// Natural density of sets of positive integers, evaluated on prefixes
// {1, ..., N}, and the construction of two compatible observables on the
// naturals whose joint frequency has no limit.

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "qlctx/frequency.hpp"

namespace qlctx {

/// A subset of the positive integers given by a pure membership predicate.
class DensitySet {
public:
    using Predicate = std::function<bool(std::uint64_t)>;

    DensitySet(std::string name, Predicate member) : name_(std::move(name)), member_(std::move(member)) {}

    const std::string& name() const noexcept { return name_; }
    bool contains(std::uint64_t n) const { return member_(n); }

private:
    std::string name_;
    Predicate member_;
};

DensitySet evens();
DensitySet odds();
DensitySet multiples_of(std::uint64_t k);
DensitySet finite_set(std::vector<std::uint64_t> members);

DensitySet set_union(const DensitySet& l, const DensitySet& r);
DensitySet set_intersection(const DensitySet& l, const DensitySet& r);
DensitySet set_difference(const DensitySet& l, const DensitySet& r);

/// C: the even number 2n belongs to C iff n lies in a block [4^k, 2 * 4^k).
/// Its prefix density drops to about 1/6 at N = 2 * 4^k and climbs back to
/// about 1/3 at N = 4^{k+1}, so it has no density.
DensitySet oscillating_subset_of_evens();

/// B = C united with {2n - 1 : 2n not in C}. Exactly one of 2n-1, 2n lies in B.
DensitySet paired_complement_set();

/// |A intersect {1..n}| / n. Throws qlctx::Error for n == 0.
double density(const DensitySet& set, std::uint64_t n);

/// Prefix densities at n = 1, 2, 4, ... <= max_n, plus max_n itself when it is not a power of two.
std::vector<Checkpoint> density_checkpoints(const DensitySet& set, std::uint64_t max_n);

struct CounterexampleRow {
    std::uint64_t n = 0;
    double nu_a = 0.0;      ///< frequency of a = 1 (membership in the evens)
    double nu_b = 0.0;      ///< frequency of b = 1 (membership in B)
    double nu_joint = 0.0;  ///< frequency of (a, b) = (1, 1), i.e. the prefix density of C

    bool operator==(const CounterexampleRow&) const = default;
};

struct CounterexampleReport {
    std::uint64_t max_n = 0;
    std::vector<CounterexampleRow> rows;
    StabilizationDiagnostic a;
    StabilizationDiagnostic b;
    StabilizationDiagnostic joint;
    double joint_liminf = 0.0;  ///< min joint frequency over checkpoints n >= n_min
    double joint_limsup = 0.0;  ///< max joint frequency over checkpoints n >= n_min
    double marginal_max_deviation = 0.0;  ///< max |nu - 1/2| over the last four checkpoints, both marginals

    bool operator==(const CounterexampleReport&) const = default;
};

inline constexpr std::uint64_t kCounterexampleMinN = std::uint64_t{1} << 16;

/// a(n) = [n even], b(n) = [n in B]. Both marginals stabilize at 1/2 while
/// the joint frequency oscillates. Throws qlctx::Error when max_n < 2^16.
CounterexampleReport incompatibility_counterexample(std::uint64_t max_n, std::uint64_t n_min = kDefaultNMin,
                                                    double stat_z = 4.0);

struct DensityAlgebraReport {
    std::uint64_t max_n = 0;
    double d1 = 0.0;
    double d2 = 0.0;
    double d_union = 0.0;
    double d_intersection = 0.0;
    double d_1_minus_2 = 0.0;
    double d_2_minus_1 = 0.0;
    bool disjoint = false;  ///< no common member up to max_n
    double additivity_residual = 0.0;            ///< |d_union - d1 - d2|, meaningful when disjoint
    double inclusion_exclusion_residual = 0.0;   ///< |d_union - (d1 + d2 - d_intersection)|
    double difference_residual = 0.0;            ///< max of both |d_i_minus_j - (d_i - d_intersection)|
    double tolerance = 0.0;                      ///< sum of the late gaps involved plus 4 / max_n
    bool formulas_hold = false;
    bool all_stabilized = false;  ///< union, intersection and both differences stabilize together

    bool operator==(const DensityAlgebraReport&) const = default;
};

/// Additivity, inclusion-exclusion and difference formulas on prefix
/// densities at max_n. Throws NotStabilized when either set or their
/// intersection does not stabilize over [n_min, max_n].
DensityAlgebraReport density_algebra_check(const DensitySet& s1, const DensitySet& s2, std::uint64_t max_n,
                                           std::uint64_t n_min = kDefaultNMin, double stat_z = 4.0);

}  // namespace qlctx
