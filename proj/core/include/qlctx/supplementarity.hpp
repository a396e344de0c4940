#pragma once

// Measures of supplementarity and the interference form of the formula of
// total probability.
//
// For direction b/a and a b-outcome beta:
//
//   delta(beta)  = p_b(beta) - sum_alpha p_a(alpha) p(beta|alpha)
//   lambda(beta) = delta(beta) / (2 sqrt(prod_alpha p_a(alpha) p(beta|alpha)))
//
// and symmetrically for a/b with the roles of a and b exchanged. lambda is
// undefined (std::nullopt) whenever one of the four factors under the root
// is zero.

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "qlctx/context.hpp"

namespace qlctx {

/// Throws MissingReverseMatrix for Direction::AGivenB without p_a_given_b.
double delta(const ContextData& data, Direction dir, std::size_t outcome);

/// The normalizer 2*sqrt(prod ...) used for lambda. Zero means lambda is undefined.
double lambda_denominator(const ContextData& data, Direction dir, std::size_t outcome);

std::optional<double> lambda_coeff(const ContextData& data, Direction dir, std::size_t outcome);

struct FtpDecomposition {
    double classical_part = 0.0;      ///< Bayes mixture sum_alpha p_a(alpha) p(beta|alpha)
    double interference_term = 0.0;   ///< 2 lambda sqrt(prod ...)
    double reconstructed = 0.0;       ///< classical_part + interference_term
    double stored = 0.0;              ///< the marginal recorded in the context

    bool operator==(const FtpDecomposition&) const = default;
};

/// Throws DegenerateContext when lambda is undefined for the outcome.
FtpDecomposition interference_ftp(const ContextData& data, Direction dir, std::size_t outcome);

struct SupplementarityMeasures {
    Direction direction = Direction::BGivenA;
    Vec2 delta{};
    std::array<std::optional<double>, 2> lambda{};
    Vec2 denom{};

    bool operator==(const SupplementarityMeasures&) const = default;
};

SupplementarityMeasures measure(const ContextData& data, Direction dir);

enum class PhaseKind { Trigonometric, Hyperbolic };

const char* to_string(PhaseKind k) noexcept;

/// Probabilistic phase of one outcome.
///
/// Trigonometric: lambda = cos(theta), theta = arccos(lambda) in [0, pi]; `sign`
/// is +1 unless a representation flips it.
/// Hyperbolic: lambda = sign * cosh(theta), theta = arccosh(|lambda|) >= 0.
struct PhaseRecord {
    Direction direction = Direction::BGivenA;
    std::size_t outcome = 0;
    PhaseKind kind = PhaseKind::Trigonometric;
    double theta = 0.0;
    int sign = 1;

    bool operator==(const PhaseRecord&) const = default;
};

/// Phase of a single defined lambda. |lambda| <= 1 + slack is trigonometric,
/// with lambda clamped into [-1, 1] before arccos.
PhaseRecord phase_of(double lambda, Direction dir, std::size_t outcome, double slack = 0.0);

/// Phases for every defined lambda in `m`; undefined ones are skipped.
std::vector<PhaseRecord> extract_phases(const SupplementarityMeasures& m, double slack = 0.0);

enum class ContextClass { Nonsupplementary, Trigonometric, Hyperbolic, Mixed, Degenerate };

const char* to_string(ContextClass c) noexcept;

struct ClassificationReport {
    SupplementarityMeasures measures_ba;
    std::optional<SupplementarityMeasures> measures_ab;
    std::vector<PhaseRecord> phases;
    bool supplementary_ba = false;
    std::optional<bool> supplementary_ab;
    bool lambda_degenerate = false;  ///< some lambda in an available direction is undefined
    double delta_threshold = 0.0;
    ContextClass context_class = ContextClass::Nonsupplementary;

    bool supplementary() const noexcept { return supplementary_ba || supplementary_ab.value_or(false); }

    bool operator==(const ClassificationReport&) const = default;
};

/// Classifies with |delta| > tol.exact_eps as the supplementarity test.
ClassificationReport classify_context(const ContextData& data, const Tolerances& tol = {});

/// Same, with an explicit supplementarity threshold (e.g. a statistical
/// tolerance z*sqrt(p(1-p)/N) for empirical tables).
ClassificationReport classify_context(const ContextData& data, const Tolerances& tol, double delta_threshold);

/// True when every b/a lambda is defined and |lambda| <= 1 + slack.
bool in_trigonometric_region(const SupplementarityMeasures& m, double slack);

}  // namespace qlctx
