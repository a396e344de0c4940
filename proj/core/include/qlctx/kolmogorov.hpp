#pragma once

// Structural properties of contextual data: double stochasticity,
// symmetric conditioning, and existence of a single joint probability table
// reproducing both marginals and both transition matrices.

#include <optional>

#include "qlctx/context.hpp"

namespace qlctx {

/// joint[alpha][beta] = P(a = alpha, b = beta).
using JointTable = Mat2;

/// Column sums equal to 1 within tol (rows are stochastic by validation).
bool is_double_stochastic(const TransitionMatrix& m, double tol);

/// p_a_given_b[beta][alpha] == p_b_given_a[alpha][beta] for all cells. Throws MissingReverseMatrix.
bool is_symmetrically_conditioned(const ContextData& data, double tol);

struct KolmogorovResult {
    bool kolmogorovian = false;
    std::optional<JointTable> joint;
    double max_residual = 0.0;  ///< max over cells of |p_a p(b|a) - p_b p(a|b)|
    bool degenerate_marginal = false;  ///< some marginal entry is zero; its conditional row is unconstrained

    bool operator==(const KolmogorovResult&) const = default;
};

/// Closed-form test: Kolmogorovian iff p_a(alpha) p(beta|alpha) == p_b(beta) p(alpha|beta)
/// on all four cells. Throws MissingReverseMatrix.
KolmogorovResult kolmogorov_test(const ContextData& data, double tol);

struct JointSearchOptions {
    double grid_step = 1e-4;
    double constraint_tol = 1e-3;
};

/// Exhaustive search over the one-parameter family of 2x2 tables with the
/// given marginals, accepting a table that reproduces every conditional.
/// Independent of kolmogorov_test; intended as its oracle. Throws MissingReverseMatrix.
bool brute_force_joint_oracle(const ContextData& data, JointSearchOptions opts = {});

/// For symmetrically conditioned data: Kolmogorovness versus nonsupplementarity.
struct SymmetricEquivalence {
    bool applies = false;  ///< false when the data is not symmetrically conditioned
    bool kolmogorovian = false;
    bool nonsupplementary = false;
    bool equivalence_holds = false;
    std::optional<bool> forced_uniform;  ///< set when nonsupplementary: are both marginals (1/2, 1/2)?

    bool operator==(const SymmetricEquivalence&) const = default;
};

SymmetricEquivalence check_symmetric_equivalence(const ContextData& data, double tol);

/// The three mutually equivalent conditions for a genuine joint distribution.
struct JointBalance {
    bool double_stochastic_both = false;
    bool uniform_marginals = false;
    bool symmetric_conditioning = false;
    bool all_equivalent = false;

    bool operator==(const JointBalance&) const = default;
};

/// Throws ZeroMarginal when a marginal of `joint` is not strictly positive.
JointBalance joint_balance_equivalences(const JointTable& joint, double tol);

/// Independent coupling of two marginals.
JointTable product_measure(const ProbVector& p_a, const ProbVector& p_b);

/// Marginals and both conditional matrices read off a joint table.
/// Throws ZeroMarginal when a conditional is undefined.
ContextData context_from_joint(const JointTable& joint, std::string label = {});

struct StructureReport {
    bool stochastic_ba = false;
    std::optional<bool> stochastic_ab;
    bool double_stochastic_ba = false;
    std::optional<bool> double_stochastic_ab;
    std::optional<bool> statistically_balanced;
    std::optional<bool> symmetrically_conditioned;
    std::optional<bool> kolmogorovian;
    std::optional<double> max_ax_residual;
    std::optional<JointTable> joint;
    bool degenerate_marginal = false;

    bool operator==(const StructureReport&) const = default;
};

/// Every structural test at once. Fields needing p_a_given_b are empty without it.
StructureReport analyze_structure(const ContextData& data, const Tolerances& tol = {});

}  // namespace qlctx
