#pragma once

// Complex Hilbert-space representation of trigonometric contexts.
//
// For |lambda(beta)| <= 1 the interference formula becomes
//
//   p_b(beta) = |sqrt(p_a(1) p(beta|1)) + e^{i theta(beta)} sqrt(p_a(2) p(beta|2))|^2
//
// with theta(beta) = +-arccos lambda(beta). The amplitude psi lives in C^2
// indexed by the b-outcomes; b is diagonal in the canonical basis and a is
// diagonal in the basis
//
//   e1 = (u11, u12),  e2 = (e^{i theta1} u21, e^{i theta2} u22),  u_ij = sqrt(p(b_j|a_i)),
//
// which is orthonormal exactly when p(b|a) is double stochastic and
// theta2 - theta1 = pi (mod 2 pi).
//
// Sign policy: theta1 = +arccos lambda(b1). When p(b|a) is double stochastic,
// lambda(b2) = -lambda(b1) and theta2 = theta1 - pi (= -arccos lambda(b2));
// otherwise theta2 = +arccos lambda(b2).

#include <array>
#include <complex>
#include <optional>

#include "qlctx/context.hpp"

namespace qlctx {

using Complex = std::complex<double>;
using CVec2 = std::array<Complex, 2>;
using CMat2 = std::array<std::array<Complex, 2>, 2>;

/// The phases actually used for psi, with the sign applied to arccos(lambda).
struct PhaseChoice {
    Vec2 theta{};                ///< signed phases used in e^{i theta}
    std::array<int, 2> sign{1, 1};
    bool shifted = false;        ///< theta2 = theta1 - pi was applied

    bool operator==(const PhaseChoice&) const = default;
};

/// Applies the sign policy. Throws DegenerateContext when a b/a lambda is
/// undefined and NotTrigonometric when some |lambda| > 1 + tol.exact_eps.
PhaseChoice choose_phases(const ContextData& data, const Tolerances& tol = {});

/// Phase choice that negates both phases of `p` (complex conjugate representation).
PhaseChoice conjugate(const PhaseChoice& p);

struct ComplexAmplitude {
    CVec2 values{};
    PhaseChoice phases;

    bool operator==(const ComplexAmplitude&) const = default;
};

/// psi built with `choose_phases`.
ComplexAmplitude build_amplitude(const ContextData& data, const Tolerances& tol = {});

/// psi built with an explicit phase choice; no trigonometric check.
ComplexAmplitude build_amplitude(const ContextData& data, const PhaseChoice& phases);

/// (u, v) = sum_k u_k conj(v_k).
Complex inner_product(const CVec2& u, const CVec2& v);

double norm(const CVec2& v);

struct ABasis {
    CVec2 e1{};
    CVec2 e2{};
    bool orthonormal = false;
    double gram_deviation = 0.0;  ///< max |G - I| over the Gram matrix entries

    bool operator==(const ABasis&) const = default;
};

/// Tolerance on theta2 - theta1 = pi (mod 2 pi).
inline constexpr double kPhaseConstraintTol = 1e-9;

ABasis build_a_basis(const ContextData& data, const PhaseChoice& phases, const Tolerances& tol = {});

/// || psi - (sqrt(p_a1) e1 + sqrt(p_a2) e2) ||.
double decompose_in_a_basis(const CVec2& psi, const ABasis& basis, const ProbVector& p_a);

/// | |(psi, e_alpha)|^2 - p_a(alpha) | per alpha. Throws BasisNotOrthonormal.
Vec2 born_check_a(const CVec2& psi, const ABasis& basis, const ProbVector& p_a);

/// | |psi(beta)|^2 - p_b(beta) | per beta.
Vec2 born_check_b(const CVec2& psi, const ProbVector& p_b);

struct ExpectationReport {
    double b_classical = 0.0;  ///< sum beta p_b(beta)
    double b_quantum = 0.0;    ///< Re (b psi, psi)
    std::optional<double> a_classical;
    std::optional<double> a_quantum;

    bool operator==(const ExpectationReport&) const = default;
};

struct HilbertRep {
    ComplexAmplitude psi;
    std::array<CVec2, 2> b_basis{};
    ABasis a_basis;
    Vec2 b_values{1.0, -1.0};
    Vec2 a_values{1.0, -1.0};
    CMat2 op_b{};
    std::optional<CMat2> op_a;
    Vec2 born_residuals_b{};
    std::optional<Vec2> born_residuals_a;
    double normalization_residual = 0.0;  ///< | ||psi||^2 - 1 |
    double decomposition_residual = 0.0;
    std::optional<double> op_a_self_adjoint_residual;
    ExpectationReport expectations;

    bool operator==(const HilbertRep&) const = default;
};

/// Diagonal operator for b; spectral sum for a when the a-basis is
/// orthonormal; classical versus quadratic-form expectations. Updates `rep`
/// in place. Throws BasisNotOrthonormal if `require_a` and the basis is not orthonormal.
void build_operators(HilbertRep& rep, const ProbVector& p_a, const ProbVector& p_b, Vec2 a_values, Vec2 b_values,
                     bool require_a = false);

/// Whole pipeline: phases, psi, bases, Born checks, operators.
HilbertRep reconstruct(const ContextData& data, const Tolerances& tol = {}, Vec2 a_values = {1.0, -1.0},
                       Vec2 b_values = {1.0, -1.0});

CVec2 multiply(const CMat2& m, const CVec2& v);

double self_adjoint_residual(const CMat2& m);

}  // namespace qlctx
