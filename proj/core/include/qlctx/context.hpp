#pragma once

// Contextual probabilistic data for a pair of dichotomous observables.
//
// Outcomes are addressed by position: index 0 is the first label of an
// observable's spectrum, index 1 the second. All formulas in the library
// work on indices; labels are carried only for reporting.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace qlctx {

using Vec2 = std::array<double, 2>;
using Mat2 = std::array<std::array<double, 2>, 2>;

/// Conditioning direction of a transition matrix or supplementarity measure.
/// BGivenA: rows indexed by a-outcome, columns by b-outcome (p^{b/a}).
/// AGivenB: rows indexed by b-outcome, columns by a-outcome (p^{a/b}).
enum class Direction { BGivenA, AGivenB };

const char* to_string(Direction d) noexcept;

struct Observable {
    std::string name;
    std::array<std::string, 2> spectrum;

    bool operator==(const Observable&) const = default;
};

struct ProbVector {
    Vec2 p{};

    double operator[](std::size_t i) const { return p[i]; }
    double& operator[](std::size_t i) { return p[i]; }
    double sum() const { return p[0] + p[1]; }

    bool operator==(const ProbVector&) const = default;
};

struct TransitionMatrix {
    Mat2 rows{};
    Direction orientation = Direction::BGivenA;

    /// Probability of result `result` given conditioning outcome `cond`.
    double operator()(std::size_t cond, std::size_t result) const { return rows[cond][result]; }
    double row_sum(std::size_t cond) const { return rows[cond][0] + rows[cond][1]; }
    double column_sum(std::size_t result) const { return rows[0][result] + rows[1][result]; }

    bool operator==(const TransitionMatrix&) const = default;
};

struct ContextData {
    Observable a;
    Observable b;
    ProbVector p_a;
    ProbVector p_b;
    TransitionMatrix p_b_given_a;
    std::optional<TransitionMatrix> p_a_given_b;
    std::string label;

    bool has_reverse() const noexcept { return p_a_given_b.has_value(); }

    /// Throws MissingReverseMatrix when p_a_given_b is absent.
    const TransitionMatrix& reverse() const;

    bool operator==(const ContextData&) const = default;
};

/// Convenience builder with default observables a/b and spectra ("1","2").
ContextData make_context(Vec2 p_a, Vec2 p_b, Mat2 p_b_given_a,
                         std::optional<Mat2> p_a_given_b = std::nullopt,
                         std::string label = {});

struct Tolerances {
    double exact_eps = 1e-9;  ///< absolute tolerance for structural checks on exact tables
    double stat_z = 4.0;      ///< z-multiplier for empirical tolerances

    /// Throws qlctx::Error unless both fields are positive and finite.
    void check() const;

    bool operator==(const Tolerances&) const = default;
};

struct Violation {
    std::string constraint;  ///< stable identifier, e.g. "p_b_given_a.row[0].sum"
    double residual = 0.0;   ///< signed deviation from the constraint
    std::string message;

    bool operator==(const Violation&) const = default;
};

struct ValidationReport {
    std::vector<Violation> violations;  ///< sorted by constraint id

    bool ok() const noexcept { return violations.empty(); }
    bool mentions(const std::string& constraint) const;

    bool operator==(const ValidationReport&) const = default;
};

/// Checks every structural invariant of `data` within tol.exact_eps. Violations are data, never thrown.
ValidationReport validate_context(const ContextData& data, const Tolerances& tol = {});

/// Three-valued flag: `unknown` when the quantity it describes is not present.
enum class Tristate { False, True, Unknown };

const char* to_string(Tristate t) noexcept;

struct NondegeneracyFlags {
    bool a_marginal = false;
    bool b_marginal = false;
    bool b_given_a = false;  ///< every p^{b/a}(beta/alpha) > eps
    Tristate a_given_b = Tristate::Unknown;

    bool operator==(const NondegeneracyFlags&) const = default;
};

NondegeneracyFlags is_nondegenerate(const ContextData& data, const Tolerances& tol = {});

}  // namespace qlctx
