#include "qlctx/density.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <unordered_set>

#include "qlctx/errors.hpp"

namespace qlctx {

namespace {

// Accumulates prefix counts of several predicates in one pass over 1..max_n.
template <std::size_t K>
std::array<std::vector<Checkpoint>, K> scan(const std::array<const DensitySet*, K>& sets, std::uint64_t max_n) {
    if (max_n == 0) throw Error("prefix length must be at least 1");
    std::array<std::vector<Checkpoint>, K> out;
    std::array<std::uint64_t, K> counts{};
    std::uint64_t next = 1;
    for (std::uint64_t n = 1; n <= max_n; ++n) {
        for (std::size_t k = 0; k < K; ++k) counts[k] += sets[k]->contains(n) ? 1 : 0;
        if (n == next || n == max_n) {
            for (std::size_t k = 0; k < K; ++k) {
                out[k].push_back({n, static_cast<double>(counts[k]) / static_cast<double>(n)});
            }
            if (n == next) next *= 2;
        }
    }
    return out;
}

bool in_even_dyadic_block(std::uint64_t n) {
    // n in [4^k, 2 * 4^k)  <=>  floor(log2 n) is even
    return n != 0 && (std::bit_width(n) - 1) % 2 == 0;
}

bool oscillating_member(std::uint64_t m) { return m % 2 == 0 && in_even_dyadic_block(m / 2); }

}  // namespace

DensitySet evens() {
    return {"evens", [](std::uint64_t n) { return n % 2 == 0; }};
}

DensitySet odds() {
    return {"odds", [](std::uint64_t n) { return n % 2 == 1; }};
}

DensitySet multiples_of(std::uint64_t k) {
    if (k == 0) throw Error("multiples_of requires k >= 1");
    return {"multiples_of_" + std::to_string(k), [k](std::uint64_t n) { return n % k == 0; }};
}

DensitySet finite_set(std::vector<std::uint64_t> members) {
    auto set = std::make_shared<const std::unordered_set<std::uint64_t>>(members.begin(), members.end());
    return {"finite[" + std::to_string(set->size()) + "]", [set](std::uint64_t n) { return set->count(n) != 0; }};
}

DensitySet set_union(const DensitySet& l, const DensitySet& r) {
    return {"(" + l.name() + " | " + r.name() + ")", [l, r](std::uint64_t n) { return l.contains(n) || r.contains(n); }};
}

DensitySet set_intersection(const DensitySet& l, const DensitySet& r) {
    return {"(" + l.name() + " & " + r.name() + ")", [l, r](std::uint64_t n) { return l.contains(n) && r.contains(n); }};
}

DensitySet set_difference(const DensitySet& l, const DensitySet& r) {
    return {"(" + l.name() + " \\ " + r.name() + ")", [l, r](std::uint64_t n) { return l.contains(n) && !r.contains(n); }};
}

DensitySet oscillating_subset_of_evens() { return {"C", oscillating_member}; }

DensitySet paired_complement_set() {
    return {"B", [](std::uint64_t m) {
                if (m == 0) return false;
                if (m % 2 == 0) return oscillating_member(m);
                return !oscillating_member(m + 1);
            }};
}

double density(const DensitySet& set, std::uint64_t n) {
    if (n == 0) throw Error("prefix length must be at least 1");
    std::uint64_t count = 0;
    for (std::uint64_t k = 1; k <= n; ++k) count += set.contains(k) ? 1 : 0;
    return static_cast<double>(count) / static_cast<double>(n);
}

std::vector<Checkpoint> density_checkpoints(const DensitySet& set, std::uint64_t max_n) {
    return std::move(scan<1>({&set}, max_n)[0]);
}

CounterexampleReport incompatibility_counterexample(std::uint64_t max_n, std::uint64_t n_min, double stat_z) {
    if (max_n < kCounterexampleMinN) {
        throw Error("counterexample needs max_n >= " + std::to_string(kCounterexampleMinN));
    }
    const DensitySet a = evens();
    const DensitySet b = paired_complement_set();
    const DensitySet joint = set_intersection(a, b);
    auto cps = scan<3>({&a, &b, &joint}, max_n);

    CounterexampleReport r;
    r.max_n = max_n;
    for (std::size_t i = 0; i < cps[0].size(); ++i) {
        r.rows.push_back({cps[0][i].n, cps[0][i].frequency, cps[1][i].frequency, cps[2][i].frequency});
    }
    r.a = stabilization_from_checkpoints(cps[0], n_min, stat_z);
    r.b = stabilization_from_checkpoints(cps[1], n_min, stat_z);
    r.joint = stabilization_from_checkpoints(cps[2], n_min, stat_z);

    r.joint_liminf = 1.0;
    r.joint_limsup = 0.0;
    for (const auto& row : r.rows) {
        if (row.n < n_min) continue;
        r.joint_liminf = std::min(r.joint_liminf, row.nu_joint);
        r.joint_limsup = std::max(r.joint_limsup, row.nu_joint);
    }
    const std::size_t tail = std::min<std::size_t>(4, r.rows.size());
    for (std::size_t i = r.rows.size() - tail; i < r.rows.size(); ++i) {
        r.marginal_max_deviation = std::max(
            {r.marginal_max_deviation, std::abs(r.rows[i].nu_a - 0.5), std::abs(r.rows[i].nu_b - 0.5)});
    }
    return r;
}

DensityAlgebraReport density_algebra_check(const DensitySet& s1, const DensitySet& s2, std::uint64_t max_n,
                                           std::uint64_t n_min, double stat_z) {
    const DensitySet uni = set_union(s1, s2);
    const DensitySet inter = set_intersection(s1, s2);
    const DensitySet d12 = set_difference(s1, s2);
    const DensitySet d21 = set_difference(s2, s1);
    auto cps = scan<6>({&s1, &s2, &uni, &inter, &d12, &d21}, max_n);

    std::array<StabilizationDiagnostic, 6> stab;
    for (std::size_t k = 0; k < 6; ++k) stab[k] = stabilization_from_checkpoints(cps[k], n_min, stat_z);
    const std::array<const DensitySet*, 3> required{&s1, &s2, &inter};
    const std::array<std::size_t, 3> required_idx{0, 1, 3};
    for (std::size_t i = 0; i < required.size(); ++i) {
        if (!stab[required_idx[i]].stabilized) {
            throw NotStabilized("prefix density of " + required[i]->name() + " does not stabilize up to " +
                                std::to_string(max_n) + " (late gap " +
                                std::to_string(stab[required_idx[i]].max_late_gap) + ")");
        }
    }

    DensityAlgebraReport r;
    r.max_n = max_n;
    r.d1 = cps[0].back().frequency;
    r.d2 = cps[1].back().frequency;
    r.d_union = cps[2].back().frequency;
    r.d_intersection = cps[3].back().frequency;
    r.d_1_minus_2 = cps[4].back().frequency;
    r.d_2_minus_1 = cps[5].back().frequency;
    r.disjoint = r.d_intersection == 0.0;
    r.additivity_residual = std::abs(r.d_union - r.d1 - r.d2);
    r.inclusion_exclusion_residual = std::abs(r.d_union - (r.d1 + r.d2 - r.d_intersection));
    r.difference_residual = std::max(std::abs(r.d_1_minus_2 - (r.d1 - r.d_intersection)),
                                     std::abs(r.d_2_minus_1 - (r.d2 - r.d_intersection)));
    r.tolerance = stab[0].max_late_gap + stab[1].max_late_gap + stab[3].max_late_gap +
                  4.0 / static_cast<double>(max_n);
    r.formulas_hold = r.inclusion_exclusion_residual <= r.tolerance && r.difference_residual <= r.tolerance &&
                      (!r.disjoint || r.additivity_residual <= r.tolerance);
    r.all_stabilized = stab[2].stabilized && stab[3].stabilized && stab[4].stabilized && stab[5].stabilized;
    return r;
}

}  // namespace qlctx
